#pragma once

// Braided objects (V, R) in finite-rank free modules and the braid group
// representations they generate on tensor powers.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "factoperad/braids.hpp"
#include "factoperad/cubes.hpp"
#include "factoperad/error.hpp"
#include "factoperad/matrix.hpp"

namespace factoperad {

inline std::size_t ipow(std::size_t base, int exp)
{
    std::size_t out = 1;
    for (int i = 0; i < exp; ++i)
        out *= base;
    return out;
}

struct YangBaxterCheck {
    bool ok = true;
    bool invertible = true;
    std::string message;
    std::size_t row = 0, col = 0;
    std::string lhs, rhs;

    explicit operator bool() const { return ok; }
};

/// Left multiplication of `m` by id^(p) (x) op (x) id^(n-p-2), where op acts
/// on two factors of dimension r. Rows of `m` index (V^{(x)n}).
template <class Field>
Matrix<Field> apply_on_factors(const Matrix<Field>& op, std::size_t r, int n, int p, const Matrix<Field>& m)
{
    const Field& f = m.field();
    const std::size_t lo_dim = ipow(r, n - p - 2);
    const std::size_t hi_dim = ipow(r, p);
    const std::size_t block = r * r * lo_dim;
    Matrix<Field> out(f, m.rows(), m.cols());
    for (std::size_t hi = 0; hi < hi_dim; ++hi)
        for (std::size_t ab = 0; ab < r * r; ++ab)
            for (std::size_t cd = 0; cd < r * r; ++cd) {
                const auto& coeff = op(ab, cd);
                if (f.is_zero(coeff))
                    continue;
                for (std::size_t lo = 0; lo < lo_dim; ++lo) {
                    std::size_t dst = hi * block + ab * lo_dim + lo;
                    std::size_t src = hi * block + cd * lo_dim + lo;
                    for (std::size_t c = 0; c < m.cols(); ++c)
                        if (!f.is_zero(m(src, c)))
                            out(dst, c) = f.add(out(dst, c), f.mul(coeff, m(src, c)));
                }
            }
    return out;
}

/// Verifies (id (x) R)(R (x) id)(id (x) R) = (R (x) id)(id (x) R)(R (x) id) on
/// V^(x)3 and invertibility of R.
template <class Field>
YangBaxterCheck check_yang_baxter(const Matrix<Field>& braiding, std::size_t rank)
{
    if (braiding.rows() != rank * rank || braiding.cols() != rank * rank)
        throw InvalidArgument("Yang-Baxter check: expected a " + std::to_string(rank * rank) + "x" +
                              std::to_string(rank * rank) + " matrix, got " + braiding.shape());
    YangBaxterCheck out;
    if (!is_invertible(braiding)) {
        out.ok = false;
        out.invertible = false;
        out.message = "braiding is not invertible";
        return out;
    }
    const Field& f = braiding.field();
    auto left = [&](int p, const Matrix<Field>& m) { return apply_on_factors(braiding, rank, 3, p, m); };
    const auto id = Matrix<Field>::identity(f, rank * rank * rank);
    // Operators compose right to left: the rightmost factor acts first.
    auto lhs = left(1, left(0, left(1, id)));
    auto rhs = left(0, left(1, left(0, id)));
    if (auto diff = lhs.first_difference(rhs)) {
        out.ok = false;
        out.message = "Yang-Baxter equation fails";
        out.row = diff->first;
        out.col = diff->second;
        out.lhs = f.format(lhs(out.row, out.col));
        out.rhs = f.format(rhs(out.row, out.col));
    }
    return out;
}

/// A finite-rank free module V with an invertible Yang-Baxter operator R on
/// V (x) V. With `koszul` set, V sits in odd degree and every crossing acts by
/// -R.
template <class Field>
class BraidedObject {
public:
    BraidedObject() = default;

    /// Does not check the Yang-Baxter equation; see make_braided_object.
    BraidedObject(std::size_t rank, Matrix<Field> braiding, bool koszul)
        : rank_(rank), braiding_(std::move(braiding)), koszul_(koszul)
    {
        if (braiding_.rows() != rank_ * rank_ || braiding_.cols() != rank_ * rank_)
            throw InvalidArgument("braiding must be " + std::to_string(rank_ * rank_) + "x" +
                                  std::to_string(rank_ * rank_) + ", got " + braiding_.shape());
        signed_ = koszul_ ? -braiding_ : braiding_;
        signed_inverse_ = inverse(signed_);
    }

    std::size_t rank() const { return rank_; }
    const Field& field() const { return braiding_.field(); }
    const Matrix<Field>& braiding() const { return braiding_; }
    bool koszul() const { return koszul_; }

    /// The operator a positive crossing acts by: R, or -R under the Koszul rule.
    const Matrix<Field>& crossing() const { return signed_; }
    const Matrix<Field>& inverse_crossing() const { return signed_inverse_; }

    std::size_t power_dimension(int n) const { return ipow(rank_, n); }

    friend bool operator==(const BraidedObject& a, const BraidedObject& b)
    {
        return a.rank_ == b.rank_ && a.koszul_ == b.koszul_ && a.braiding_ == b.braiding_;
    }

private:
    std::size_t rank_ = 0;
    Matrix<Field> braiding_;
    bool koszul_ = false;
    Matrix<Field> signed_;
    Matrix<Field> signed_inverse_;
};

/// Checked constructor: throws InvalidArgument with the counterexample when R
/// is singular or violates the Yang-Baxter equation.
template <class Field>
BraidedObject<Field> make_braided_object(std::size_t rank, Matrix<Field> braiding, bool koszul)
{
    if (auto check = check_yang_baxter(braiding, rank); !check)
        throw InvalidArgument(check.message + (check.invertible ? " at entry (" + std::to_string(check.row + 1) +
                                                                      "," + std::to_string(check.col + 1) + ")"
                                                                : std::string()));
    return BraidedObject<Field>(rank, std::move(braiding), koszul);
}

/// Flip of tensor factors on V (x) V.
template <class Field>
Matrix<Field> flip_matrix(const Field& field, std::size_t rank)
{
    const std::size_t dims[2] = {rank, rank};
    const int order[2] = {1, 0};
    return factor_permutation<Field>(field, dims, order);
}

/// The representation of B_n on V^(x)n: generator l acts on factors l, l+1.
///
/// A word is evaluated as a path, first letter first, so the matrix of
/// w1 w2 ... wk is g(wk) ... g(w2) g(w1) and
/// eval(compose_paths(a, b)) = eval(b) * eval(a).
template <class Field>
class Representation {
public:
    Representation(BraidedObject<Field> object, int strands) : object_(std::move(object)), strands_(strands)
    {
        if (strands < 0)
            throw InvalidArgument("negative strand count");
    }

    int strands() const { return strands_; }
    std::size_t dimension() const { return object_.power_dimension(strands_); }

    /// Applies the word to `m` from the left.
    Matrix<Field> act(const BraidWord& word, Matrix<Field> m) const
    {
        for (int g : word) {
            int l = std::abs(g);
            if (g == 0 || l >= strands_)
                throw InvalidArgument("generator " + std::to_string(g) + " out of range for " +
                                      std::to_string(strands_) + " strands");
            const auto& op = g > 0 ? object_.crossing() : object_.inverse_crossing();
            m = apply_on_factors(op, object_.rank(), strands_, l - 1, m);
        }
        return m;
    }

    Matrix<Field> eval(const BraidWord& word) const
    {
        return act(word, Matrix<Field>::identity(object_.field(), dimension()));
    }

    Matrix<Field> eval(const ColoredBraid& braid) const
    {
        if (braid.strands() != strands_)
            throw InvalidArgument("braid on " + std::to_string(braid.strands()) + " strands evaluated in B_" +
                                  std::to_string(strands_));
        return eval(braid.word());
    }

private:
    BraidedObject<Field> object_;
    int strands_;
};

template <class Field>
Representation<Field> rho(const BraidedObject<Field>& object, int strands)
{
    return Representation<Field>(object, strands);
}

template <class Field>
Matrix<Field> eval_braid(const BraidedObject<Field>& object, const ColoredBraid& braid)
{
    return rho(object, braid.strands()).eval(braid);
}

/// The tensor functor of a vertical embedding: factors are read bottom to top.
struct TensorDescription {
    std::size_t dimension = 1;
    Permutation order;  // order[p] = slot providing factor p
};

template <class Field>
TensorDescription tensor_phi(const BraidedObject<Field>& object, const LinearEmbedding& phi)
{
    if (!is_vertical(phi))
        throw VerticalRequired("tensor_phi needs a vertically disjoint embedding; straighten it first");
    return {object.power_dimension(phi.arity()), vertical_order(phi)};
}

}  // namespace factoperad
