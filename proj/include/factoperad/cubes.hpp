#pragma once

// Little 2-cubes: n-ary linear embeddings of the unit square into itself,
// with exact rational coordinates.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "factoperad/error.hpp"
#include "factoperad/field.hpp"
#include "factoperad/permutation.hpp"

namespace factoperad {

/// The unary embedding z -> a z + (x + i y). Its closed image is
/// [x, x + a] x [y, y + a].
struct Square {
    mpq_class a = 1;
    mpq_class x = 0;
    mpq_class y = 0;

    mpq_class center_x() const { return x + a / 2; }
    mpq_class center_y() const { return y + a / 2; }

    friend bool operator==(const Square& l, const Square& r)
    {
        return l.a == r.a && l.x == r.x && l.y == r.y;
    }
};

inline Square make_square(const mpq_class& a, const mpq_class& x, const mpq_class& y)
{
    return Square{a, x, y};
}

/// An element of E2(n). Arity 0 is the trivial embedding.
class LinearEmbedding {
public:
    LinearEmbedding() = default;
    explicit LinearEmbedding(std::vector<Square> squares) : squares_(std::move(squares)) {}

    static LinearEmbedding identity() { return LinearEmbedding({Square{}}); }
    static LinearEmbedding trivial() { return LinearEmbedding(); }

    int arity() const { return static_cast<int>(squares_.size()); }
    const std::vector<Square>& squares() const { return squares_; }
    const Square& operator[](int i) const { return squares_.at(i); }

    friend bool operator==(const LinearEmbedding&, const LinearEmbedding&) = default;

private:
    std::vector<Square> squares_;
};

struct EmbeddingCheck {
    bool ok = true;
    std::string message;
    int first = -1;   // offending slot (0-based), -1 if none
    int second = -1;  // second slot of an offending pair

    explicit operator bool() const { return ok; }
};

inline bool closed_intervals_meet(const mpq_class& lo1, const mpq_class& hi1, const mpq_class& lo2,
                                  const mpq_class& hi2)
{
    return lo1 <= hi2 && lo2 <= hi1;
}

inline bool open_intervals_meet(const mpq_class& lo1, const mpq_class& hi1, const mpq_class& lo2,
                                const mpq_class& hi2)
{
    return lo1 < hi2 && lo2 < hi1;
}

/// Checks positivity, containment in the closed unit square and pairwise
/// disjointness of closed images.
inline EmbeddingCheck validate(const LinearEmbedding& phi)
{
    const auto& sq = phi.squares();
    for (int i = 0; i < phi.arity(); ++i) {
        const Square& s = sq[i];
        if (sgn(s.a) <= 0)
            return {false, "square " + std::to_string(i + 1) + " has non-positive scale", i, -1};
        if (s.x < 0 || s.y < 0 || s.x + s.a > 1 || s.y + s.a > 1)
            return {false, "square " + std::to_string(i + 1) + " leaves the unit square", i, -1};
    }
    for (int i = 0; i < phi.arity(); ++i)
        for (int j = i + 1; j < phi.arity(); ++j) {
            const Square &s = sq[i], &t = sq[j];
            if (closed_intervals_meet(s.x, s.x + s.a, t.x, t.x + t.a) &&
                closed_intervals_meet(s.y, s.y + s.a, t.y, t.y + t.a))
                return {false,
                        "closed images of squares " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " intersect",
                        i, j};
        }
    return {};
}

inline void require_valid(const LinearEmbedding& phi, const std::string& what)
{
    if (auto check = validate(phi); !check)
        throw InvalidArgument(what + ": " + check.message);
}

/// Operadic composition: inner l is nested into slot l of `outer`. Slots of
/// the result are numbered block by block.
inline LinearEmbedding compose(const LinearEmbedding& outer, const std::vector<LinearEmbedding>& inners)
{
    if (static_cast<int>(inners.size()) != outer.arity())
        throw InvalidArgument("compose: outer arity " + std::to_string(outer.arity()) + " but " +
                              std::to_string(inners.size()) + " inner embeddings");
    std::vector<Square> out;
    for (int l = 0; l < outer.arity(); ++l) {
        const Square& o = outer[l];
        for (const Square& s : inners[l].squares())
            out.push_back(Square{o.a * s.a, o.a * s.x + o.x, o.a * s.y + o.y});
    }
    return LinearEmbedding(std::move(out));
}

/// phi^sigma: slot i holds square sigma(i). A right action.
inline LinearEmbedding act_permutation(const LinearEmbedding& phi, const Permutation& sigma)
{
    if (sigma.size() != phi.arity())
        throw InvalidArgument("act_permutation: size mismatch");
    std::vector<Square> out;
    out.reserve(phi.arity());
    for (int i = 0; i < phi.arity(); ++i)
        out.push_back(phi[sigma[i]]);
    return LinearEmbedding(std::move(out));
}

/// True iff the open projections to the imaginary axis are pairwise disjoint.
inline bool is_vertical(const LinearEmbedding& phi)
{
    const auto& sq = phi.squares();
    for (int i = 0; i < phi.arity(); ++i)
        for (int j = i + 1; j < phi.arity(); ++j)
            if (open_intervals_meet(sq[i].y, sq[i].y + sq[i].a, sq[j].y, sq[j].y + sq[j].a))
                return false;
    return true;
}

/// Slots sorted bottom to top by centre height, ties by centre x then slot.
/// `order[p]` is the slot read at position p; position 0 is the leftmost
/// tensor factor.
inline Permutation vertical_order(const LinearEmbedding& phi)
{
    std::vector<int> slots(phi.arity());
    std::iota(slots.begin(), slots.end(), 0);
    std::sort(slots.begin(), slots.end(), [&](int i, int j) {
        const Square &s = phi[i], &t = phi[j];
        if (s.center_y() != t.center_y())
            return s.center_y() < t.center_y();
        if (s.center_x() != t.center_x())
            return s.center_x() < t.center_x();
        return i < j;
    });
    return Permutation(std::move(slots));
}

/// The standard vertical element of E2(n): squares of side 1/(2n) stacked
/// along the left edge, slot i at height i/n. Its vertical order is the
/// identity.
inline LinearEmbedding canonical_vertical(int n)
{
    std::vector<Square> sq;
    for (int i = 0; i < n; ++i)
        sq.push_back(Square{mpq_class(1, 2 * n), 0, mpq_class(i, n)});
    for (auto& s : sq) {
        s.a.canonicalize();
        s.y.canonicalize();
    }
    return LinearEmbedding(std::move(sq));
}

}  // namespace factoperad

namespace factoperad {

/// Compact JSON text: [{"a":"1/2","x":"0","y":"1/4"},...].
inline std::string describe(const LinearEmbedding& phi)
{
    std::string s = "[";
    for (int i = 0; i < phi.arity(); ++i) {
        const Square& q = phi[i];
        s += (i ? "," : "");
        s += "{\"a\":\"" + format_rational(q.a) + "\",\"x\":\"" + format_rational(q.x) + "\",\"y\":\"" +
             format_rational(q.y) + "\"}";
    }
    return s + "]";
}

}  // namespace factoperad
