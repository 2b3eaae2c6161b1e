#pragma once

// Colored braids: homotopy classes of paths in E2(n), represented by signed
// braid words together with the labelling of the endpoints.
//
// Positions are counted bottom to top (the reading order of vertical_order).
// Generator +l (1-based) exchanges the strands at positions l and l+1 by a
// counter-clockwise half turn; -l is its inverse. Homotopy classes are never
// compared as words, only through their action in representations.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "factoperad/cubes.hpp"
#include "factoperad/error.hpp"
#include "factoperad/permutation.hpp"

namespace factoperad {

using BraidWord = std::vector<int>;

enum class Orientation { ccw, cw };

/// Position permutation of a word: `perm[p]` is the starting position of the
/// strand that ends at position p.
inline Permutation underlying_permutation(const BraidWord& word, int n)
{
    std::vector<int> arrangement(n);
    std::iota(arrangement.begin(), arrangement.end(), 0);
    for (int g : word) {
        int l = std::abs(g);
        if (g == 0 || l >= n)
            throw InvalidArgument("generator " + std::to_string(g) + " out of range for " +
                                  std::to_string(n) + " strands");
        std::swap(arrangement[l - 1], arrangement[l]);
    }
    return Permutation(std::move(arrangement));
}

/// Word of the inverse path: reversed with every sign flipped.
inline BraidWord inverse_word(const BraidWord& word)
{
    BraidWord out(word.rbegin(), word.rend());
    for (int& g : out)
        g = -g;
    return out;
}

class ColoredBraid {
public:
    ColoredBraid() = default;

    /// `source_order[p]` / `target_order[p]` name the slot at position p at
    /// the start / end of the path.
    ColoredBraid(int strands, BraidWord word, Permutation source_order, Permutation target_order)
        : strands_(strands),
          word_(std::move(word)),
          source_(std::move(source_order)),
          target_(std::move(target_order))
    {
        if (strands_ < 0 || source_.size() != strands_ || target_.size() != strands_)
            throw InvalidArgument("colored braid: endpoint orders must have " + std::to_string(strands_) +
                                  " entries");
        Permutation moved = underlying_permutation(word_, strands_);
        for (int p = 0; p < strands_; ++p)
            if (target_[p] != source_[moved[p]])
                throw InvalidArgument("colored braid: word does not carry source order " +
                                      source_.to_string() + " to target order " + target_.to_string());
    }

    static ColoredBraid empty(const Permutation& at) { return ColoredBraid(at.size(), {}, at, at); }

    /// Builds the braid from a word and its source order, deriving the target.
    static ColoredBraid from_word(int strands, BraidWord word, Permutation source_order)
    {
        Permutation moved = underlying_permutation(word, strands);
        std::vector<int> target(strands);
        for (int p = 0; p < strands; ++p)
            target[p] = source_order[moved[p]];
        return ColoredBraid(strands, std::move(word), std::move(source_order), Permutation(std::move(target)));
    }

    int strands() const { return strands_; }
    const BraidWord& word() const { return word_; }
    const Permutation& source_order() const { return source_; }
    const Permutation& target_order() const { return target_; }
    bool is_empty() const { return word_.empty(); }

    ColoredBraid inverse() const { return ColoredBraid(strands_, inverse_word(word_), target_, source_); }

    friend bool operator==(const ColoredBraid&, const ColoredBraid&) = default;

private:
    int strands_ = 0;
    BraidWord word_;
    Permutation source_;
    Permutation target_;
};

inline Permutation underlying_permutation(const ColoredBraid& braid)
{
    return underlying_permutation(braid.word(), braid.strands());
}

/// The l-th elementary braiding (1 <= l <= n-1) starting from order `at`.
inline ColoredBraid elementary(int n, int l, const Permutation& at)
{
    if (l < 1 || l > n - 1)
        throw InvalidArgument("elementary braiding index " + std::to_string(l) + " out of range 1.." +
                              std::to_string(n - 1));
    if (at.size() != n)
        throw InvalidArgument("elementary braiding: order has wrong size");
    return ColoredBraid::from_word(n, {l}, at);
}

/// Path composition: `first`, then `second`.
inline ColoredBraid compose_paths(const ColoredBraid& first, const ColoredBraid& second)
{
    if (first.strands() != second.strands())
        throw InvalidArgument("compose_paths: strand counts differ");
    if (!(first.target_order() == second.source_order()))
        throw InvalidArgument("compose_paths: endpoint mismatch " + first.target_order().to_string() + " vs " +
                              second.source_order().to_string());
    BraidWord w = first.word();
    w.insert(w.end(), second.word().begin(), second.word().end());
    return ColoredBraid(first.strands(), std::move(w), first.source_order(), second.target_order());
}

/// Relabels the endpoints for the path gamma^sigma from phi^sigma to psi^sigma:
/// slot s of phi is slot sigma^-1(s) of phi^sigma.
inline ColoredBraid act_permutation(const ColoredBraid& braid, const Permutation& sigma)
{
    if (sigma.size() != braid.strands())
        throw InvalidArgument("act_permutation: size mismatch");
    Permutation inv = sigma.inverse();
    return ColoredBraid(braid.strands(), braid.word(), inv.after(braid.source_order()),
                        inv.after(braid.target_order()));
}

namespace detail {

/// Positive crossing of a bundle of `a` strands (left) over the `b` strands to
/// its right, starting at 0-based position `start`.
inline BraidWord block_crossing(int start, int a, int b)
{
    BraidWord w;
    for (int i = a - 1; i >= 0; --i)
        for (int j = 0; j < b; ++j)
            w.push_back(start + i + j + 1);
    return w;
}

}  // namespace detail

/// Replaces strand s of `outer` by a parallel bundle of widths[s] strands.
/// Slots of the result are numbered bundle by bundle in outer slot order.
inline ColoredBraid cable(const ColoredBraid& outer, const std::vector<int>& widths)
{
    const int n = outer.strands();
    if (static_cast<int>(widths.size()) != n)
        throw InvalidArgument("cable: " + std::to_string(widths.size()) + " widths for " + std::to_string(n) +
                              " strands");
    std::vector<int> offset(n + 1, 0);
    for (int s = 0; s < n; ++s) {
        if (widths[s] < 0)
            throw InvalidArgument("cable: negative width");
        offset[s + 1] = offset[s] + widths[s];
    }
    auto expand = [&](const std::vector<int>& arrangement) {
        std::vector<int> out;
        for (int slot : arrangement)
            for (int k = 0; k < widths[slot]; ++k)
                out.push_back(offset[slot] + k);
        return Permutation(std::move(out));
    };

    std::vector<int> arrangement = outer.source_order().images();
    BraidWord word;
    for (int g : outer.word()) {
        int p = std::abs(g) - 1;
        int start = 0;
        for (int q = 0; q < p; ++q)
            start += widths[arrangement[q]];
        int left = widths[arrangement[p]], right = widths[arrangement[p + 1]];
        BraidWord block;
        if (g > 0)
            block = detail::block_crossing(start, left, right);
        else
            block = inverse_word(detail::block_crossing(start, right, left));
        word.insert(word.end(), block.begin(), block.end());
        std::swap(arrangement[p], arrangement[p + 1]);
    }
    return ColoredBraid(offset[n], std::move(word), expand(outer.source_order().images()),
                        expand(outer.target_order().images()));
}

struct StraightenOptions {
    /// When set, centre i (1-based) is shifted by (i * epsilon, 0) first.
    std::optional<mpq_class> perturbation;
    Orientation orientation = Orientation::ccw;
};

/// Braid of the straight-line motion of square centres from `phi` to the
/// standard vertical configuration: x fixed, slot i at height (i+1)/(n+1).
///
/// Source order is vertical_order(phi); the target order is the identity.
/// Each pair whose heights swap gives one crossing at its swap time; a
/// crossing is positive when the strand moving down passes on the left of the
/// strand moving up. Simultaneous swaps are ordered by the perturbation
/// y_i += d * x_i + d^2 * i for infinitesimal d > 0, which also resolves equal
/// starting heights the same way vertical_order does.
inline ColoredBraid straighten(const LinearEmbedding& phi, const StraightenOptions& options = {})
{
    require_valid(phi, "straighten");
    const int n = phi.arity();
    std::vector<mpq_class> x(n), y0(n), y1(n);
    for (int i = 0; i < n; ++i) {
        x[i] = phi[i].center_x();
        if (options.perturbation)
            x[i] += (i + 1) * *options.perturbation;
        y0[i] = phi[i].center_y();
        y1[i] = mpq_class(i + 1, n + 1);
        y1[i].canonicalize();
    }

    auto lex_sign = [](const mpq_class& a, const mpq_class& c, long e) {
        if (sgn(a) != 0)
            return sgn(a);
        if (sgn(c) != 0)
            return sgn(c);
        return e > 0 ? 1 : (e < 0 ? -1 : 0);
    };

    struct Event {
        mpq_class t, t1, t2;
        int i, j;
    };
    std::vector<Event> events;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            mpq_class a = y0[i] - y0[j];
            mpq_class c = x[i] - x[j];
            long e = i - j;
            int start_sign = lex_sign(a, c, e);
            // i < j, so slot i ends strictly below slot j.
            if (start_sign < 0)
                continue;
            if (sgn(c) == 0)
                throw DegenerateMotion("centres of slots " + std::to_string(i + 1) + " and " +
                                           std::to_string(j + 1) + " collide: equal x at their swap time",
                                       i, j);
            mpq_class b = (y1[i] - y1[j]) - a;
            events.push_back({-a / b, -c / b, mpq_class(-e) / b, i, j});
        }
    std::sort(events.begin(), events.end(), [](const Event& l, const Event& r) {
        return std::tie(l.t, l.t1, l.t2, l.i, l.j) < std::tie(r.t, r.t1, r.t2, r.i, r.j);
    });

    Permutation source = vertical_order(phi);
    std::vector<int> arrangement = source.images();
    std::vector<int> position(n);
    for (int p = 0; p < n; ++p)
        position[arrangement[p]] = p;

    BraidWord word;
    for (const Event& ev : events) {
        int pi = position[ev.i], pj = position[ev.j];
        if (std::abs(pi - pj) != 1)
            throw DegenerateMotion("slots " + std::to_string(ev.i + 1) + " and " + std::to_string(ev.j + 1) +
                                       " swap while not adjacent (non-generic simultaneous crossing)",
                                   ev.i, ev.j);
        int lower = std::min(pi, pj);
        int lower_slot = arrangement[lower], upper_slot = arrangement[lower + 1];
        bool ccw = x[upper_slot] < x[lower_slot];
        if (options.orientation == Orientation::cw)
            ccw = !ccw;
        word.push_back(ccw ? lower + 1 : -(lower + 1));
        std::swap(arrangement[lower], arrangement[lower + 1]);
        position[arrangement[lower]] = lower;
        position[arrangement[lower + 1]] = lower + 1;
    }
    return ColoredBraid(n, std::move(word), std::move(source), Permutation::identity(n));
}

/// Words that are trivial in the braid group, used to produce homotopic
/// representatives of a path.
inline BraidWord cancelling_pair(int l) { return {l, -l}; }

/// s_l s_{l+1} s_l (s_{l+1} s_l s_{l+1})^-1.
inline BraidWord braid_relator(int l) { return {l, l + 1, l, -(l + 1), -l, -(l + 1)}; }

/// s_l s_k s_l^-1 s_k^-1 for |l - k| >= 2.
inline BraidWord commutation_relator(int l, int k) { return {l, k, -l, -k}; }

/// Same endpoints, word prefixed by a relator (which must be trivial in B_n).
inline ColoredBraid with_relator(const ColoredBraid& braid, const BraidWord& relator, std::size_t at = 0)
{
    BraidWord w = braid.word();
    at = std::min(at, w.size());
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(at), relator.begin(), relator.end());
    return ColoredBraid(braid.strands(), std::move(w), braid.source_order(), braid.target_order());
}

/// Homotopic rewrites of `braid` by inserting relators valid on its strand
/// count; empty for n < 2.
inline std::vector<ColoredBraid> relator_variants(const ColoredBraid& braid)
{
    std::vector<ColoredBraid> out;
    const int n = braid.strands();
    const std::size_t mid = braid.word().size() / 2;
    for (int l = 1; l <= n - 1; ++l)
        out.push_back(with_relator(braid, cancelling_pair(l), mid));
    for (int l = 1; l + 1 <= n - 1; ++l) {
        out.push_back(with_relator(braid, braid_relator(l), 0));
        out.push_back(with_relator(braid, inverse_word(braid_relator(l)), mid));
    }
    for (int l = 1; l <= n - 1; ++l)
        for (int k = l + 2; k <= n - 1; ++k)
            out.push_back(with_relator(braid, commutation_relator(l, k), mid));
    return out;
}

}  // namespace factoperad

namespace factoperad {

/// Compact JSON text with 1-based endpoint orders.
inline std::string describe(const ColoredBraid& braid)
{
    auto list = [](const std::vector<int>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s + "]";
    };
    return "{\"strands\":" + std::to_string(braid.strands()) + ",\"word\":" + list(braid.word()) +
           ",\"source_order\":" + list(braid.source_order().one_based()) +
           ",\"target_order\":" + list(braid.target_order().one_based()) + "}";
}

}  // namespace factoperad
