#pragma once

// Shared test objects.

#include <random>
#include <vector>

#include "factoperad/factsys.hpp"
#include "factoperad/limits.hpp"

namespace fixtures {

using namespace factoperad;
using MQ = Matrix<RationalField>;
using MP = Matrix<PrimeField>;

inline RationalField Q;

template <class Field>
Matrix<Field> flip(const Field& f, std::size_t r = 2)
{
    return flip_matrix(f, r);
}

/// (R - 2)(R + 1) = 0, not an involution.
template <class Field>
Matrix<Field> hecke(const Field& f)
{
    return Matrix<Field>::from_ints(f, 4, 4, {2, 0, 0, 0, 0, 0, 1, 0, 0, 2, 1, 0, 0, 0, 0, 2});
}

/// A matrix of the given size with entries in -3..3, invertible.
template <class Field>
Matrix<Field> random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng)
{
    while (true) {
        Matrix<Field> m(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = f.from_int(static_cast<long>(rng() % 7) - 3);
        if (is_invertible(m))
            return m;
    }
}

/// Word for the transposition of positions i < j (1-based).
inline BraidWord transposition_word(int i, int j)
{
    BraidWord w;
    for (int l = i; l < j; ++l)
        w.push_back(l);
    for (int l = j - 2; l >= i; --l)
        w.push_back(l);
    return w;
}

/// Full twist (s_1 ... s_{n-1})^n, central in B_n.
inline BraidWord full_twist(int n)
{
    BraidWord w;
    for (int k = 0; k < n; ++k)
        for (int l = 1; l < n; ++l)
            w.push_back(l);
    return w;
}

/// Automorphism of the canonical local system of a symmetric object:
/// u_n = u^(x)n ((n^2 + 1) + sum of transpositions).
template <class Field>
std::vector<Matrix<Field>> symmetric_automorphism(const BraidedObject<Field>& obj, int depth, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const Field& f = obj.field();
    Matrix<Field> u = random_invertible(f, obj.rank(), rng);
    std::vector<Matrix<Field>> out;
    for (int n = 1; n <= depth; ++n) {
        auto rep = rho(obj, n);
        Matrix<Field> z = Matrix<Field>::scalar(f, rep.dimension(), f.from_int(n * n + 1));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                z = z + rep.eval(transposition_word(i, j));
        out.push_back(kron_power(u, n) * z);
    }
    return out;
}

/// u_n = d^(x)n times the full twist, for a diagonal d commuting with R.
template <class Field>
std::vector<Matrix<Field>> twist_automorphism(const BraidedObject<Field>& obj, int depth, long d1, long d2)
{
    const Field& f = obj.field();
    Matrix<Field> d = Matrix<Field>::from_ints(f, 2, 2, {d1, 0, 0, d2});
    std::vector<Matrix<Field>> out;
    for (int n = 1; n <= depth; ++n)
        out.push_back(kron_power(d, n) * rho(obj, n).eval(full_twist(n)));
    return out;
}

/// A datum equal to `base` except at vertical ternary charts whose reading
/// order is not the slot order and whose composition groups strands: there
/// mu is doubled.
template <class Field>
class RelabelSensitiveDatum : public FactorizationDatum<Field> {
public:
    explicit RelabelSensitiveDatum(FactorizedSystem<Field> base) : base_(std::move(base)) {}
    const BraidedObject<Field>& object() const override { return base_.object(); }
    int depth() const override { return base_.depth(); }
    Matrix<Field> mu(const LinearEmbedding& phi, const Composition& alpha) const override
    {
        Matrix<Field> m = base_.mu(phi, alpha);
        bool grouped = false;
        for (int a : alpha)
            grouped = grouped || a >= 2;
        if (phi.arity() == 3 && is_vertical(phi) && !vertical_order(phi).is_identity() && grouped)
            return m.scaled(m.field().from_int(2));
        return m;
    }

private:
    FactorizedSystem<Field> base_;
};

/// Tower whose level d is `base` truncated to d and twisted by families[d]
/// (families[0] is ignored). phi_{de} is the lift of
/// families[d][0] families[e][0]^-1.
template <class Field>
ProjectiveSystem<Field> twisted_tower(const FactorizedSystem<Field>& base,
                                      const std::vector<std::vector<Matrix<Field>>>& families)
{
    const int h = static_cast<int>(families.size()) - 1;
    std::vector<FactorizedSystem<Field>> levels{truncate(base, 0)};
    for (int d = 1; d <= h; ++d)
        levels.push_back(act_automorphism(truncate(base, d), families[d]));
    std::map<std::pair<int, int>, std::vector<Matrix<Field>>> transitions;
    for (int d = 0; d <= h; ++d)
        for (int e = d + 1; e <= h; ++e) {
            if (d == 0) {
                transitions[{d, e}] = {Matrix<Field>::identity(base.field(), 1)};
                continue;
            }
            auto f1 = families[d][0] * inverse(families[e][0]);
            transitions[{d, e}] = lift_morphism(f1, truncate(levels[e], d), levels[d]).components();
        }
    return ProjectiveSystem<Field>(std::move(levels), std::move(transitions));
}

}  // namespace fixtures
