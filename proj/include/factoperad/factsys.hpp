#pragma once

// Factorized local systems on configuration spaces.
//
// A system stores a braided object (V, R), a depth N and one gauge matrix m_n
// per degree n <= N, the value of mu at the canonical vertical chart on the
// open stratum. Every other mu_{phi, alpha} is derived:
//
//   vertical phi:  tensor factors are read bottom to top; for a reading
//                  (b_1, ..., b_k) not all equal to 1,
//                  mu = m_{|b|} (m_{b_1} (x) ... (x) m_{b_k})^-1,
//                  and mu = m_k when every b_p = 1.
//   other phi:     mu = C^-1 mu_target C, where C is the representation
//                  matrix of the straightening braid cabled by alpha.
//
// Fibers of degree n are V^(x)n with B_n acting through rho(obj, n).

#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <numeric>
#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "factoperad/braided.hpp"
#include "factoperad/braids.hpp"
#include "factoperad/cubes.hpp"
#include "factoperad/error.hpp"
#include "factoperad/matrix.hpp"
#include "factoperad/parallel.hpp"
#include "factoperad/report.hpp"

namespace factoperad {

/// alpha_i is the degree carried by slot i.
using Composition = std::vector<int>;

inline int total_degree(const Composition& alpha)
{
    int s = 0;
    for (int a : alpha)
        s += a;
    return s;
}

/// The composition listed in the order given: out[p] = alpha[order[p]].
inline Composition read_in_order(const Composition& alpha, const Permutation& order)
{
    Composition out(alpha.size());
    for (int p = 0; p < order.size(); ++p)
        out[p] = alpha[order[p]];
    return out;
}

/// The composition seen by phi^sigma: slot i carries alpha[sigma(i)].
inline Composition relabel(const Composition& alpha, const Permutation& sigma)
{
    return read_in_order(alpha, sigma);
}

inline Composition ones(int n) { return Composition(n, 1); }

/// All compositions of length n with non-negative entries and total <= max_total,
/// in lexicographic order.
inline std::vector<Composition> compositions(int n, int max_total)
{
    std::vector<Composition> out;
    Composition cur(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, max_total);
    return out;
}

inline const mpq_class& default_perturbation()
{
    static const mpq_class eps(1, 1000);
    return eps;
}

/// straighten, retrying once with the perturbation 1/1000 on a degenerate
/// motion. The first retry in a process is logged to std::clog.
inline ColoredBraid straighten_or_perturb(const LinearEmbedding& phi, Orientation orientation = Orientation::ccw)
{
    try {
        return straighten(phi, {std::nullopt, orientation});
    } catch (const DegenerateMotion& e) {
        static std::once_flag logged;
        std::call_once(logged, [&] {
            std::clog << "factoperad: " << e.what() << "; retrying with perturbation 1/1000"
                      << " (further retries not logged)\n";
        });
        return straighten(phi, {default_perturbation(), orientation});
    }
}

/// A vertical embedding at the end of the straightening motion of phi: slot i
/// at height (i+1)/(n+1), centre x kept where it fits. Its vertical order is
/// the identity.
inline LinearEmbedding straighten_target(const LinearEmbedding& phi)
{
    const int n = phi.arity();
    std::vector<Square> out;
    mpq_class a(1, 2 * (n + 1));
    a.canonicalize();
    for (int i = 0; i < n; ++i) {
        mpq_class x = phi[i].center_x() - a / 2;
        if (x < 0)
            x = 0;
        if (x + a > 1)
            x = 1 - a;
        mpq_class cy(i + 1, n + 1);
        cy.canonicalize();
        out.push_back(Square{a, x, cy - a / 2});
    }
    return LinearEmbedding(std::move(out));
}

/// Anything that assigns a matrix mu_{phi, alpha} to an embedding and a
/// composition. The verifier only sees this interface.
template <class Field>
class FactorizationDatum {
public:
    virtual ~FactorizationDatum() = default;
    virtual const BraidedObject<Field>& object() const = 0;
    virtual int depth() const = 0;
    virtual Matrix<Field> mu(const LinearEmbedding& phi, const Composition& alpha) const = 0;
};

template <class Field>
class FactorizedSystem : public FactorizationDatum<Field> {
public:
    FactorizedSystem() = default;

    /// `gauge` lists m_1, m_2, ...; missing degrees default to the identity.
    /// `unit` is the 1x1 matrix of mu at the trivial embedding.
    FactorizedSystem(BraidedObject<Field> obj, int depth, std::vector<Matrix<Field>> gauge = {},
                     std::optional<Matrix<Field>> unit = std::nullopt)
        : obj_(std::move(obj)), depth_(depth)
    {
        if (depth < 0)
            throw InvalidArgument("negative depth");
        if (static_cast<int>(gauge.size()) > depth)
            throw InvalidArgument(std::to_string(gauge.size()) + " gauge matrices for depth " +
                                  std::to_string(depth));
        const Field& f = obj_.field();
        Matrix<Field> u = unit ? *unit : Matrix<Field>::identity(f, 1);
        if (u.rows() != 1 || u.cols() != 1 || f.is_zero(u(0, 0)))
            throw InvalidArgument("unit isomorphism must be an invertible 1x1 matrix");
        gauge_.push_back(u);
        for (int k = 1; k <= depth; ++k) {
            const std::size_t dim = obj_.power_dimension(k);
            if (k <= static_cast<int>(gauge.size())) {
                Matrix<Field>& m = gauge[k - 1];
                if (m.rows() != dim || m.cols() != dim)
                    throw InvalidArgument("gauge matrix of degree " + std::to_string(k) + " must be " +
                                          std::to_string(dim) + "x" + std::to_string(dim) + ", got " + m.shape());
                gauge_.push_back(std::move(m));
            } else {
                gauge_.push_back(Matrix<Field>::identity(f, dim));
            }
        }
        for (int k = 0; k <= depth; ++k) {
            auto inv = try_inverse(gauge_[k]);
            if (!inv)
                throw InvalidArgument("gauge matrix of degree " + std::to_string(k) + " is singular");
            gauge_inv_.push_back(*std::move(inv));
        }
    }

    const BraidedObject<Field>& object() const override { return obj_; }
    int depth() const override { return depth_; }
    const Field& field() const { return obj_.field(); }

    /// m_k; degree 0 is the unit isomorphism.
    const Matrix<Field>& gauge(int k) const { return gauge_.at(k); }
    const Matrix<Field>& gauge_inverse(int k) const { return gauge_inv_.at(k); }
    const Matrix<Field>& unit() const { return gauge_.front(); }

    /// m_1, ..., m_N.
    std::vector<Matrix<Field>> gauges() const { return {gauge_.begin() + 1, gauge_.end()}; }

    Representation<Field> fiber(int k) const { return rho(obj_, k); }

    /// mu at a vertical chart whose tensor factors, read bottom to top, carry
    /// the degrees in `reading`.
    Matrix<Field> vertical_mu(const Composition& reading) const
    {
        const int n = total_degree(reading);
        check_degrees(reading, static_cast<int>(reading.size()));
        bool all_ones = true;
        for (int b : reading)
            all_ones = all_ones && b == 1;
        if (all_ones)
            return gauge_[n];
        std::vector<Matrix<Field>> parts;
        for (int b : reading)
            parts.push_back(gauge_inv_[b]);
        return gauge_[n] * kron_all<Field>(field(), parts);
    }

    Matrix<Field> mu(const LinearEmbedding& phi, const Composition& alpha) const override
    {
        require_valid(phi, "mu");
        check_degrees(alpha, phi.arity());
        if (is_vertical(phi))
            return vertical_mu(read_in_order(alpha, vertical_order(phi)));
        return mu_along(phi, alpha, straighten_or_perturb(phi));
    }

    /// mu at phi transported along `path`, a braid from phi to a vertical
    /// configuration whose reading order is path.target_order().
    Matrix<Field> mu_along(const LinearEmbedding& phi, const Composition& alpha, const ColoredBraid& path) const
    {
        check_degrees(alpha, phi.arity());
        if (path.strands() != phi.arity())
            throw InvalidArgument("mu_along: path has " + std::to_string(path.strands()) + " strands for arity " +
                                  std::to_string(phi.arity()));
        if (!(path.source_order() == vertical_order(phi)))
            throw InvalidArgument("mu_along: path does not start at the reading order of the embedding");
        const int n = total_degree(alpha);
        auto rep = fiber(n);
        Matrix<Field> forward = rep.eval(cable(path, alpha));
        Matrix<Field> backward = rep.eval(cable(path.inverse(), alpha));
        return backward * vertical_mu(read_in_order(alpha, path.target_order())) * forward;
    }

    friend bool operator==(const FactorizedSystem& a, const FactorizedSystem& b)
    {
        return a.obj_ == b.obj_ && a.depth_ == b.depth_ && a.gauge_ == b.gauge_;
    }

private:
    void check_degrees(const Composition& alpha, int arity) const
    {
        if (static_cast<int>(alpha.size()) != arity)
            throw InvalidArgument("composition of length " + std::to_string(alpha.size()) + " for arity " +
                                  std::to_string(arity));
        for (int a : alpha)
            if (a < 0)
                throw InvalidArgument("negative entry in composition");
        if (total_degree(alpha) > depth_)
            throw DepthExceeded("total degree " + std::to_string(total_degree(alpha)) + " exceeds depth " +
                                std::to_string(depth_));
    }

    BraidedObject<Field> obj_;
    int depth_ = 0;
    std::vector<Matrix<Field>> gauge_;      // index k = degree, 0 = unit
    std::vector<Matrix<Field>> gauge_inv_;
};

/// The canonical system of a Yang-Baxter object: every gauge matrix is the
/// identity.
template <class Field>
FactorizedSystem<Field> from_object(const BraidedObject<Field>& obj, int depth)
{
    if (auto check = check_yang_baxter(obj.braiding(), obj.rank()); !check)
        throw InvalidArgument("from_object: " + check.message);
    return FactorizedSystem<Field>(obj, depth);
}

template <class Field>
const BraidedObject<Field>& rho1(const FactorizedSystem<Field>& system)
{
    return system.object();
}

template <class Field>
FactorizedSystem<Field> truncate(const FactorizedSystem<Field>& system, int d)
{
    if (d < 0 || d > system.depth())
        throw DepthExceeded("cannot truncate a depth " + std::to_string(system.depth()) + " system to depth " +
                            std::to_string(d));
    auto g = system.gauges();
    g.resize(d, Matrix<Field>());
    return FactorizedSystem<Field>(system.object(), d, std::move(g), system.unit());
}

namespace detail {

/// C_{a,b} (x) checks: u_a (x) u_b moved across the crossing of an a-block
/// over a b-block.
template <class Field>
std::optional<std::string> check_natural_family(const BraidedObject<Field>& obj,
                                                const std::vector<Matrix<Field>>& family)
{
    const int depth = static_cast<int>(family.size()) - 1;
    for (int k = 2; k <= depth; ++k) {
        auto rep = rho(obj, k);
        for (int l = 1; l < k; ++l) {
            auto g = rep.eval(BraidWord{l});
            if (!(g * family[k] == family[k] * g))
                return "automorphism of degree " + std::to_string(k) + " does not commute with generator " +
                       std::to_string(l);
        }
    }
    for (int a = 1; a <= depth; ++a)
        for (int b = 1; a + b <= depth; ++b) {
            auto c = rho(obj, a + b).eval(block_crossing(0, a, b));
            if (!(c * kron(family[a], family[b]) == kron(family[b], family[a]) * c))
                return "automorphisms of degrees " + std::to_string(a) + " and " + std::to_string(b) +
                       " are not natural for the block crossing";
        }
    return std::nullopt;
}

}  // namespace detail

/// Twists the factorization data by an automorphism (u_1, ..., u_N) of the
/// underlying local system: mu becomes u_{|alpha|} mu (u_{a_1} (x) ... )^-1.
/// Each u_k must commute with B_k and the family must be natural for block
/// crossings.
template <class Field>
FactorizedSystem<Field> act_automorphism(const FactorizedSystem<Field>& system,
                                         const std::vector<Matrix<Field>>& upsilon)
{
    if (static_cast<int>(upsilon.size()) != system.depth())
        throw InvalidArgument("automorphism needs one matrix per degree 1.." + std::to_string(system.depth()));
    const Field& f = system.field();
    std::vector<Matrix<Field>> family{Matrix<Field>::identity(f, 1)};
    for (int k = 1; k <= system.depth(); ++k) {
        const auto& u = upsilon[k - 1];
        const std::size_t dim = system.object().power_dimension(k);
        if (u.rows() != dim || u.cols() != dim || !is_invertible(u))
            throw InvalidArgument("automorphism component of degree " + std::to_string(k) +
                                  " must be an invertible " + std::to_string(dim) + "x" + std::to_string(dim) +
                                  " matrix");
        family.push_back(u);
    }
    if (auto problem = detail::check_natural_family(system.object(), family))
        throw InvalidArgument("act_automorphism: " + *problem);
    std::vector<Matrix<Field>> g;
    for (int k = 1; k <= system.depth(); ++k)
        g.push_back(family[k] * system.gauge(k) * inverse(kron_power(family[1], k)));
    return FactorizedSystem<Field>(system.object(), system.depth(), std::move(g), system.unit());
}

/// Deterministic random element of E2(n). For n >= 2 it is not vertical and
/// straightens without perturbation.
inline LinearEmbedding generic_embedding(int n, std::uint64_t seed)
{
    if (n <= 0)
        return LinearEmbedding::trivial();
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(n));
    const int k = n + 1;
    mpq_class a(1, 2 * k);
    a.canonicalize();
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<int> cells(k * k);
        std::iota(cells.begin(), cells.end(), 0);
        std::shuffle(cells.begin(), cells.end(), rng);
        std::vector<Square> sq;
        for (int i = 0; i < n; ++i) {
            int cx = cells[i] % k, cy = cells[i] / k;
            mpq_class x(4 * cx + static_cast<long>(rng() % 3), 4 * k);
            mpq_class y(4 * cy + static_cast<long>(rng() % 3), 4 * k);
            x.canonicalize();
            y.canonicalize();
            sq.push_back(Square{a, x, y});
        }
        LinearEmbedding phi(std::move(sq));
        if (!validate(phi))
            continue;
        if (n >= 2 && is_vertical(phi))
            continue;
        try {
            straighten(phi);
        } catch (const DegenerateMotion&) {
            continue;
        }
        return phi;
    }
    throw Error("generic_embedding: no admissible embedding found");
}

/// Vertical test embeddings of arity n: the canonical one and its
/// permutations (all of them for n <= 3, otherwise reversal and a cycle).
inline std::vector<LinearEmbedding> vertical_family(int n)
{
    LinearEmbedding psi = canonical_vertical(n);
    std::vector<LinearEmbedding> out;
    if (n <= 3) {
        for (const auto& s : all_permutations(n))
            out.push_back(act_permutation(psi, s));
        return out;
    }
    std::vector<int> rev(n), cyc(n);
    for (int i = 0; i < n; ++i) {
        rev[i] = n - 1 - i;
        cyc[i] = (i + 1) % n;
    }
    out.push_back(psi);
    out.push_back(act_permutation(psi, Permutation(rev)));
    out.push_back(act_permutation(psi, Permutation(cyc)));
    return out;
}

struct VerifyOptions {
    int depth_cap = 3;
    std::uint64_t seed = 0;
    /// Restrict to vertical embeddings and the elementary braiding of E2(2).
    bool vertical_only = false;
    unsigned threads = 0;
};

namespace detail {

template <class Field>
std::optional<Violation> compare(const Matrix<Field>& lhs, const Matrix<Field>& rhs, Violation v)
{
    auto diff = lhs.first_difference(rhs);
    if (!diff)
        return std::nullopt;
    v.row = diff->first;
    v.col = diff->second;
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        v.message += " (shapes " + lhs.shape() + " and " + rhs.shape() + ")";
        return v;
    }
    v.lhs = lhs.field().format(lhs(v.row, v.col));
    v.rhs = rhs.field().format(rhs(v.row, v.col));
    return v;
}

inline std::string describe_composition(const Composition& alpha)
{
    std::string s = "[";
    for (std::size_t i = 0; i < alpha.size(); ++i)
        s += (i ? "," : "") + std::to_string(alpha[i]);
    return s + "]";
}

using Check = std::function<std::optional<Violation>()>;

inline Verdict run_checks(const std::vector<Check>& checks, unsigned threads)
{
    auto results = parallel_map<std::optional<Violation>>(
        checks.size(), [&](std::size_t i) { return checks[i](); }, threads);
    Verdict out;
    for (auto& r : results)
        if (r)
            out.violations.push_back(std::move(*r));
    return out;
}

/// Operadic composition: mu at outer o (inners) equals mu at the outer
/// embedding after the tensor product of the inner values.
template <class Field>
void add_composition_checks(const FactorizationDatum<Field>& d, const VerifyOptions& opt, std::vector<Check>& out)
{
    const int cap = opt.depth_cap;
    std::vector<LinearEmbedding> options{LinearEmbedding::trivial(), canonical_vertical(1), canonical_vertical(2)};
    if (!opt.vertical_only)
        options.push_back(generic_embedding(2, opt.seed));
    for (int n = 1; n <= cap; ++n) {
        const LinearEmbedding outer = canonical_vertical(n);
        std::vector<int> pick(n, 0);
        const int m = static_cast<int>(options.size());
        while (true) {
            std::vector<LinearEmbedding> inners;
            int arity = 0;
            for (int p : pick) {
                inners.push_back(options[p]);
                arity += options[p].arity();
            }
            if (arity <= cap) {
                LinearEmbedding eta = compose(outer, inners);
                for (const Composition& alpha : compositions(arity, cap)) {
                    out.push_back([&d, outer, inners, eta, alpha]() -> std::optional<Violation> {
                        Composition beta;
                        std::vector<Matrix<Field>> parts;
                        std::size_t at = 0;
                        for (const auto& inner : inners) {
                            Composition block(alpha.begin() + at, alpha.begin() + at + inner.arity());
                            at += inner.arity();
                            beta.push_back(total_degree(block));
                            parts.push_back(d.mu(inner, block));
                        }
                        // the outer embedding is canonical, so slot order is reading order
                        Matrix<Field> rhs = d.mu(outer, beta) * kron_all<Field>(d.object().field(), parts);
                        Matrix<Field> lhs = d.mu(eta, alpha);
                        std::string emb = "{\"outer\":" + describe(outer) + ",\"inners\":[";
                        for (std::size_t i = 0; i < inners.size(); ++i)
                            emb += (i ? "," : "") + describe(inners[i]);
                        emb += "],\"alpha\":" + describe_composition(alpha) + "}";
                        return compare(lhs, rhs,
                                       Violation{"a", total_degree(alpha), emb, "",
                                                 "mu at a composite differs from the composite of mu"});
                    });
                }
            }
            int i = 0;
            while (i < n && ++pick[i] == m)
                pick[i++] = 0;
            if (i == n)
                break;
        }
    }
}

/// Monodromy against braiding along `path` from phi to psi:
///   mu_psi R = M mu_phi,
/// where R and M are the representation matrices of `braid_tensor` and
/// `braid_fiber`, two words for the same path.
template <class Field>
Check braiding_check(const FactorizationDatum<Field>& d, LinearEmbedding phi, LinearEmbedding psi,
                     Composition alpha, ColoredBraid braid_tensor, ColoredBraid braid_fiber)
{
    return [&d, phi, psi, alpha, braid_tensor, braid_fiber]() -> std::optional<Violation> {
        const int n = total_degree(alpha);
        auto rep = rho(d.object(), n);
        Matrix<Field> lhs = d.mu(psi, alpha) * rep.eval(cable(braid_tensor, alpha));
        Matrix<Field> rhs = rep.eval(cable(braid_fiber, alpha)) * d.mu(phi, alpha);
        std::string emb = "{\"source\":" + describe(phi) + ",\"target\":" + describe(psi) +
                          ",\"alpha\":" + describe_composition(alpha) + "}";
        std::string br = braid_tensor.word() == braid_fiber.word()
                             ? describe(braid_tensor)
                             : "{\"tensor\":" + describe(braid_tensor) + ",\"fiber\":" + describe(braid_fiber) + "}";
        return compare(lhs, rhs, Violation{"b", n, emb, br, "monodromy and braiding disagree along a path"});
    };
}

/// Slots keep their labels along a path, so psi carries the same composition.
template <class Field>
void add_path_family(const FactorizationDatum<Field>& d, const LinearEmbedding& phi, const LinearEmbedding& psi,
                     const Composition& alpha, const ColoredBraid& path, std::vector<Check>& out)
{
    out.push_back(braiding_check(d, phi, psi, alpha, path, path));
    for (const auto& v : relator_variants(path)) {
        out.push_back(braiding_check(d, phi, psi, alpha, v, path));
        out.push_back(braiding_check(d, phi, psi, alpha, path, v));
    }
}

template <class Field>
void add_braiding_checks(const FactorizationDatum<Field>& d, const VerifyOptions& opt, std::vector<Check>& out)
{
    const int cap = opt.depth_cap;
    // elementary braiding in E2(2), every grouping of degrees
    if (cap >= 2) {
        LinearEmbedding psi = canonical_vertical(2);
        Permutation swap = Permutation::transposition(2, 0, 1);
        LinearEmbedding end = act_permutation(psi, swap);
        ColoredBraid path = elementary(2, 1, Permutation::identity(2));
        for (const Composition& alpha : compositions(2, cap))
            add_path_family(d, psi, end, alpha, path, out);
    }
    if (opt.vertical_only)
        return;
    // elementary braidings on the open stratum
    for (int n = 3; n <= cap; ++n) {
        LinearEmbedding psi = canonical_vertical(n);
        for (int l = 1; l < n; ++l) {
            Permutation swap = Permutation::transposition(n, l - 1, l);
            ColoredBraid path = elementary(n, l, Permutation::identity(n));
            add_path_family(d, psi, act_permutation(psi, swap), ones(n), path, out);
        }
    }
    // straightening paths
    for (int n = 2; n <= cap; ++n) {
        std::vector<LinearEmbedding> sources = vertical_family(n);
        sources.push_back(generic_embedding(n, opt.seed));
        for (const auto& phi : sources)
            add_path_family(d, phi, straighten_target(phi), ones(n), straighten_or_perturb(phi), out);
    }
}

/// Equivariance: mu at phi^sigma with the relabelled composition equals mu at phi.
template <class Field>
void add_equivariance_checks(const FactorizationDatum<Field>& d, const VerifyOptions& opt, std::vector<Check>& out)
{
    const int top = std::min(3, opt.depth_cap);
    for (int n = 2; n <= top; ++n) {
        std::vector<LinearEmbedding> bases{canonical_vertical(n)};
        if (!opt.vertical_only)
            bases.push_back(generic_embedding(n, opt.seed));
        for (const auto& phi : bases)
            for (const auto& sigma : all_permutations(n)) {
                if (sigma.is_identity())
                    continue;
                for (const Composition& alpha : compositions(n, opt.depth_cap))
                    out.push_back([&d, phi, sigma, alpha]() -> std::optional<Violation> {
                        LinearEmbedding moved = act_permutation(phi, sigma);
                        Composition moved_alpha = relabel(alpha, sigma);
                        std::string emb = "{\"embedding\":" + describe(phi) + ",\"permutation\":\"" +
                                          sigma.to_string() + "\",\"alpha\":" + describe_composition(alpha) + "}";
                        return compare(d.mu(moved, moved_alpha), d.mu(phi, alpha),
                                       Violation{"c", total_degree(alpha), emb, "",
                                                 "mu is not equivariant under relabelling of slots"});
                    });
            }
    }
}

}  // namespace detail

/// Checks axioms (a), (b), (c) on the generated family of test embeddings up
/// to arity and total degree `depth_cap`. Violations are listed in the order
/// (a), (b), (c), then by family position.
template <class Field>
Verdict verify_factorization(const FactorizationDatum<Field>& datum, const VerifyOptions& options = {})
{
    if (options.depth_cap < 0 || options.depth_cap > datum.depth())
        throw InvalidArgument("depth cap " + std::to_string(options.depth_cap) + " outside 0.." +
                              std::to_string(datum.depth()));
    std::vector<detail::Check> checks;
    detail::add_composition_checks(datum, options, checks);
    detail::add_braiding_checks(datum, options, checks);
    detail::add_equivariance_checks(datum, options, checks);
    return detail::run_checks(checks, options.threads);
}

/// Builds the system with the given vertical data after checking the
/// vertical axioms and the elementary braiding of E2(2). Throws
/// AxiomViolation naming the first failed axiom.
template <class Field>
FactorizedSystem<Field> extend_vertical_braided(const BraidedObject<Field>& obj,
                                                std::vector<Matrix<Field>> vertical_data, int depth,
                                                std::optional<Matrix<Field>> unit = std::nullopt)
{
    FactorizedSystem<Field> system(obj, depth, std::move(vertical_data), std::move(unit));
    VerifyOptions opt;
    opt.depth_cap = depth;
    opt.vertical_only = true;
    Verdict v = verify_factorization(system, opt);
    if (!v.ok())
        throw AxiomViolation(*v.first());
    return system;
}

template <class Field>
class SystemMorphism {
public:
    /// `components` lists f_0, f_1, ..., f_D with D <= both depths.
    SystemMorphism(FactorizedSystem<Field> source, FactorizedSystem<Field> target,
                   std::vector<Matrix<Field>> components)
        : source_(std::move(source)), target_(std::move(target)), f_(std::move(components))
    {
        if (f_.empty())
            throw InvalidArgument("a morphism needs at least the degree 0 component");
        if (depth() > source_.depth() || depth() > target_.depth())
            throw InvalidArgument("morphism components exceed the depth of its systems");
        for (int k = 0; k <= depth(); ++k) {
            std::size_t rows = target_.object().power_dimension(k), cols = source_.object().power_dimension(k);
            if (f_[k].rows() != rows || f_[k].cols() != cols)
                throw InvalidArgument("component " + std::to_string(k) + " must be " + std::to_string(rows) + "x" +
                                      std::to_string(cols) + ", got " + f_[k].shape());
        }
    }

    const FactorizedSystem<Field>& source() const { return source_; }
    const FactorizedSystem<Field>& target() const { return target_; }
    int depth() const { return static_cast<int>(f_.size()) - 1; }
    const Matrix<Field>& component(int k) const { return f_.at(k); }
    const std::vector<Matrix<Field>>& components() const { return f_; }

    friend bool operator==(const SystemMorphism& a, const SystemMorphism& b)
    {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.f_ == b.f_;
    }

private:
    FactorizedSystem<Field> source_;
    FactorizedSystem<Field> target_;
    std::vector<Matrix<Field>> f_;
};

/// f_n = m'_n f1^(x)n m_n^-1 for n >= 1 and f_0 = 1, up to the smaller depth.
template <class Field>
SystemMorphism<Field> lift_morphism(const Matrix<Field>& f1, const FactorizedSystem<Field>& source,
                                    const FactorizedSystem<Field>& target)
{
    if (f1.rows() != target.object().rank() || f1.cols() != source.object().rank())
        throw InvalidArgument("lift_morphism: expected a " + std::to_string(target.object().rank()) + "x" +
                              std::to_string(source.object().rank()) + " matrix, got " + f1.shape());
    const int depth = std::min(source.depth(), target.depth());
    std::vector<Matrix<Field>> f{Matrix<Field>::identity(f1.field(), 1)};
    for (int k = 1; k <= depth; ++k)
        f.push_back(target.gauge(k) * kron_power(f1, k) * source.gauge_inverse(k));
    return SystemMorphism<Field>(source, target, std::move(f));
}

template <class Field>
SystemMorphism<Field> truncate(const SystemMorphism<Field>& m, int d)
{
    if (d < 0 || d > m.depth())
        throw DepthExceeded("cannot truncate a depth " + std::to_string(m.depth()) + " morphism to depth " +
                            std::to_string(d));
    std::vector<Matrix<Field>> f(m.components().begin(), m.components().begin() + d + 1);
    return SystemMorphism<Field>(truncate(m.source(), d), truncate(m.target(), d), std::move(f));
}

/// Checks f_0 = 1, that each f_k intertwines the braid group actions, and
/// the square f_{|alpha|} mu_{phi,alpha} = nu_{phi,alpha} (f_{alpha_1} (x) ...)
/// on the generated family, total degree <= depth_cap.
template <class Field>
Verdict verify_morphism(const SystemMorphism<Field>& m, const VerifyOptions& options = {})
{
    const int cap = options.depth_cap;
    if (cap < 0 || cap > m.depth())
        throw InvalidArgument("depth cap " + std::to_string(cap) + " outside 0.." + std::to_string(m.depth()));
    Verdict out;
    if (!m.component(0).is_identity()) {
        Violation v{"f0", 0, "", "", "degree 0 component is not the identity"};
        v.lhs = m.component(0).field().format(m.component(0)(0, 0));
        v.rhs = "1";
        out.violations.push_back(v);
    }
    const auto& s = m.source();
    const auto& t = m.target();
    std::vector<detail::Check> checks;
    for (int k = 2; k <= cap; ++k)
        for (int l = 1; l < k; ++l)
            checks.push_back([&m, &s, &t, k, l]() -> std::optional<Violation> {
                const BraidWord w{l};
                return detail::compare(m.component(k) * rho(s.object(), k).eval(w),
                                       rho(t.object(), k).eval(w) * m.component(k),
                                       Violation{"morphism", k, "", "[" + std::to_string(l) + "]",
                                                 "component does not intertwine the braid group actions"});
            });
    for (int n = 0; n <= std::min(3, cap); ++n) {
        std::vector<LinearEmbedding> family = vertical_family(n);
        if (n >= 2)
            family.push_back(generic_embedding(n, options.seed));
        for (const auto& phi : family)
            for (const Composition& alpha : compositions(n, cap))
                checks.push_back([&m, &s, &t, phi, alpha]() -> std::optional<Violation> {
                    Permutation order = vertical_order(phi);
                    std::vector<Matrix<Field>> parts;
                    for (int p = 0; p < order.size(); ++p)
                        parts.push_back(m.component(alpha[order[p]]));
                    const int k = total_degree(alpha);
                    Matrix<Field> lhs = m.component(k) * s.mu(phi, alpha);
                    Matrix<Field> rhs = t.mu(phi, alpha) * kron_all<Field>(s.field(), parts);
                    std::string emb = "{\"embedding\":" + describe(phi) +
                                      ",\"alpha\":" + detail::describe_composition(alpha) + "}";
                    return detail::compare(lhs, rhs,
                                           Violation{"morphism", k, emb, "",
                                                     "morphism square with the factorization data fails"});
                });
    }
    out.append(detail::run_checks(checks, options.threads));
    return out;
}

}  // namespace factoperad
