#pragma once

// Exact scalar fields. A field is a small value type that knows how to do
// arithmetic on its element type; matrices carry their field by value so a
// prime field can be chosen at run time.

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "factoperad/error.hpp"

namespace factoperad {

/// Parses "p/q", "-p/q" or a decimal integer into a canonical rational.
inline mpq_class parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw ParseError("empty rational literal");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size())
            return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!valid_int(s))
            throw ParseError("malformed rational literal '" + s + "'");
        return mpq_class(mpz_class(s[0] == '+' ? s.substr(1) : s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational literal '" + s + "'");
    mpz_class d(den);
    if (d == 0)
        throw ParseError("zero denominator in '" + s + "'");
    mpq_class q(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
    q.canonicalize();
    return q;
}

/// Lowest terms; integers without a denominator.
inline std::string format_rational(const mpq_class& q)
{
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

inline mpq_class rational(long num, long den = 1)
{
    if (den == 0)
        throw DivisionByZero("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

struct RationalField {
    using value_type = mpq_class;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long v) const { return v; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const
    {
        if (sgn(a) == 0)
            throw DivisionByZero("inverse of zero");
        return 1 / a;
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    value_type parse(std::string_view s) const { return parse_rational(s); }
    std::string format(const value_type& a) const { return format_rational(a); }
    value_type from_rational(const mpq_class& q) const { return q; }

    std::string name() const { return "Q"; }
    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

inline bool is_prime(std::uint64_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

/// Integers modulo a prime below 2^31.
class PrimeField {
public:
    using value_type = std::uint64_t;

    PrimeField() = default;
    explicit PrimeField(std::uint64_t p) : p_(p)
    {
        if (p >= (1ULL << 31) || !is_prime(p))
            throw InvalidArgument("modulus " + std::to_string(p) + " is not a prime below 2^31");
    }

    std::uint64_t modulus() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1 % p_; }
    value_type from_int(long v) const
    {
        long r = v % static_cast<long>(p_);
        return static_cast<value_type>(r < 0 ? r + static_cast<long>(p_) : r);
    }
    value_type add(value_type a, value_type b) const { return (a + b) % p_; }
    value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type neg(value_type a) const { return (p_ - a) % p_; }
    value_type inv(value_type a) const
    {
        if (a == 0)
            throw DivisionByZero("inverse of zero mod " + std::to_string(p_));
        // Fermat
        value_type result = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1)
                result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    bool is_zero(value_type a) const { return a == 0; }
    bool equal(value_type a, value_type b) const { return a == b; }

    /// Accepts integers and "p/q" (interpreted as p * q^-1).
    value_type from_rational(const mpq_class& q) const
    {
        mpz_class pm(static_cast<unsigned long>(p_));
        mpz_class n = q.get_num() % pm, d = q.get_den() % pm;
        if (n < 0)
            n += pm;
        if (d == 0)
            throw DivisionByZero("denominator vanishes mod " + std::to_string(p_));
        return mul(n.get_ui(), inv(d.get_ui()));
    }
    value_type parse(std::string_view s) const { return from_rational(parse_rational(s)); }
    std::string format(value_type a) const { return std::to_string(a); }

    std::string name() const { return "Fp:" + std::to_string(p_); }
    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint64_t p_ = 2;
};

}  // namespace factoperad
