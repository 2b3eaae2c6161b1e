#pragma once

// Towers of depth-truncated systems and their inverse limit.
//
// Level d is a system of depth d. The transition phi_{de} (d <= e) is an
// isomorphism from truncate(level e, d) to level d, stored as components
// of degree 0..d. All levels share one braided object.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "factoperad/error.hpp"
#include "factoperad/factsys.hpp"
#include "factoperad/report.hpp"

namespace factoperad {

template <class Field>
class ProjectiveSystem {
public:
    using Components = std::vector<Matrix<Field>>;

    ProjectiveSystem() = default;

    /// `transitions` maps (d, e) with d < e to the components of phi_{de};
    /// phi_{dd} is the identity unless given.
    ProjectiveSystem(std::vector<FactorizedSystem<Field>> levels, std::map<std::pair<int, int>, Components> transitions)
        : levels_(std::move(levels)), transitions_(std::move(transitions))
    {
        if (levels_.empty())
            throw InvalidArgument("a tower needs at least level 0");
        for (int d = 0; d < static_cast<int>(levels_.size()); ++d) {
            if (levels_[d].depth() != d)
                throw InvalidArgument("level " + std::to_string(d) + " has depth " +
                                      std::to_string(levels_[d].depth()));
            if (!(levels_[d].object() == levels_[0].object()))
                throw InvalidArgument("level " + std::to_string(d) + " has a different braided object");
        }
        for (const auto& [key, comps] : transitions_) {
            auto [d, e] = key;
            if (d < 0 || d > e || e > height())
                throw InvalidArgument("transition (" + std::to_string(d) + "," + std::to_string(e) +
                                      ") out of range");
            if (static_cast<int>(comps.size()) != d + 1)
                throw InvalidArgument("transition (" + std::to_string(d) + "," + std::to_string(e) + ") needs " +
                                      std::to_string(d + 1) + " components");
            for (int k = 0; k <= d; ++k) {
                const std::size_t dim = levels_[0].object().power_dimension(k);
                if (comps[k].rows() != dim || comps[k].cols() != dim)
                    throw InvalidArgument("transition (" + std::to_string(d) + "," + std::to_string(e) +
                                          ") degree " + std::to_string(k) + " must be " + std::to_string(dim) +
                                          "x" + std::to_string(dim));
            }
        }
        for (int d = 0; d <= height(); ++d) {
            transitions_.try_emplace({d, d}, identity_components(d));
            for (int e = d + 1; e <= height(); ++e)
                if (!transitions_.count({d, e}))
                    throw InvalidArgument("missing transition (" + std::to_string(d) + "," + std::to_string(e) +
                                          ")");
        }
    }

    int height() const { return static_cast<int>(levels_.size()) - 1; }
    const FactorizedSystem<Field>& level(int d) const { return levels_.at(d); }
    const std::vector<FactorizedSystem<Field>>& levels() const { return levels_; }
    const Components& transition(int d, int e) const { return transitions_.at({d, e}); }
    const std::map<std::pair<int, int>, Components>& transitions() const { return transitions_; }
    const BraidedObject<Field>& object() const { return levels_.front().object(); }

    /// phi_{de} as a morphism truncate(level e, d) -> level d.
    SystemMorphism<Field> transition_morphism(int d, int e) const
    {
        return SystemMorphism<Field>(truncate(level(e), d), level(d), transition(d, e));
    }

    friend bool operator==(const ProjectiveSystem& a, const ProjectiveSystem& b)
    {
        return a.levels_ == b.levels_ && a.transitions_ == b.transitions_;
    }

private:
    Components identity_components(int d) const
    {
        Components out;
        for (int k = 0; k <= d; ++k)
            out.push_back(Matrix<Field>::identity(levels_[0].field(), levels_[0].object().power_dimension(k)));
        return out;
    }

    std::vector<FactorizedSystem<Field>> levels_;
    std::map<std::pair<int, int>, Components> transitions_;
};

/// Levels are the truncations of `system` to depths 0..height (default: its
/// depth); all transitions are identities.
template <class Field>
ProjectiveSystem<Field> tower_of(const FactorizedSystem<Field>& system, int height = -1)
{
    if (height < 0)
        height = system.depth();
    if (height > system.depth())
        throw DepthExceeded("tower height " + std::to_string(height) + " exceeds depth " +
                            std::to_string(system.depth()));
    std::vector<FactorizedSystem<Field>> levels;
    std::map<std::pair<int, int>, std::vector<Matrix<Field>>> transitions;
    for (int d = 0; d <= height; ++d) {
        levels.push_back(truncate(system, d));
        for (int e = d + 1; e <= height; ++e)
            for (int k = 0; k <= d; ++k)
                transitions[{d, e}].push_back(Matrix<Field>::identity(system.field(), system.object().power_dimension(k)));
    }
    return ProjectiveSystem<Field>(std::move(levels), std::move(transitions));
}

/// Checks phi_{dd} = 1, the cocycle phi_{de} truncate(phi_{ef}) = phi_{df},
/// that each transition is an invertible morphism, each level against the
/// factorization axioms at its own depth, and gluing: the block braiding of
/// V^(x)a (x) V^(x)b commutes with phi_{ad}[a] (x) phi_{bd}[b] for a + b <= d.
template <class Field>
Verdict verify_tower(const ProjectiveSystem<Field>& tower, const VerifyOptions& options = {})
{
    Verdict out;
    const int h = tower.height();
    auto tag = [](Verdict v, const std::string& where) {
        for (auto& x : v.violations)
            x.message = where + ": " + x.message;
        return v;
    };
    for (int d = 0; d <= h; ++d) {
        const auto& phi = tower.transition(d, d);
        for (int k = 0; k <= d; ++k)
            if (!phi[k].is_identity())
                out.violations.push_back(Violation{"identity", k, "", "",
                                                   "transition (" + std::to_string(d) + "," + std::to_string(d) +
                                                       ") is not the identity"});
    }
    for (int d = 0; d <= h; ++d)
        for (int e = d; e <= h; ++e)
            for (int f = e; f <= h; ++f)
                for (int k = 0; k <= d; ++k) {
                    auto lhs = tower.transition(d, e)[k] * tower.transition(e, f)[k];
                    if (auto v = detail::compare(lhs, tower.transition(d, f)[k],
                                                 Violation{"cocycle", k, "", "",
                                                           "phi(" + std::to_string(d) + "," + std::to_string(e) +
                                                               ") phi(" + std::to_string(e) + "," +
                                                               std::to_string(f) + ") != phi(" + std::to_string(d) +
                                                               "," + std::to_string(f) + ")"}))
                        out.violations.push_back(*v);
                }
    for (int d = 2; d <= h; ++d)
        for (int a = 1; a < d; ++a)
            for (int b = 1; a + b <= d; ++b) {
                const auto& fa = tower.transition(a, d)[a];
                const auto& fb = tower.transition(b, d)[b];
                const auto block = rho(tower.object(), a + b).eval(detail::block_crossing(0, a, b));
                if (auto v = detail::compare(block * kron(fa, fb), kron(fb, fa) * block,
                                             Violation{"gluing", a + b, "", "",
                                                       "block braiding of degrees " + std::to_string(a) + "," +
                                                           std::to_string(b) + " does not commute with the " +
                                                           "transitions into level " + std::to_string(d)}))
                    out.violations.push_back(*v);
            }
    for (int d = 0; d <= h; ++d)
        for (int e = d + 1; e <= h; ++e) {
            const std::string where = "transition (" + std::to_string(d) + "," + std::to_string(e) + ")";
            for (int k = 0; k <= d; ++k)
                if (!is_invertible(tower.transition(d, e)[k]))
                    out.violations.push_back(Violation{"transition", k, "", "", where + " is not invertible"});
            VerifyOptions o = options;
            o.depth_cap = d;
            out.append(tag(verify_morphism(tower.transition_morphism(d, e), o), where));
        }
    for (int d = 0; d <= h; ++d) {
        VerifyOptions o = options;
        o.depth_cap = d;
        out.append(tag(verify_factorization(tower.level(d), o), "level " + std::to_string(d)));
    }
    return out;
}

/// The inverse limit: degree k data are the top degree data of level k,
/// corrected by the transitions,
///   m_k = m^{(k)}_k (phi_{1k}[1]^-1)^(x)k,
/// so that mu_{phi,alpha} = mu^{(d)}_{phi,alpha} (x)_i phi_{alpha_i d}[alpha_i]^-1
/// with d = |alpha|. Throws AxiomViolation for a tower that fails verify_tower.
template <class Field>
FactorizedSystem<Field> assemble(const ProjectiveSystem<Field>& tower, const VerifyOptions& options = {})
{
    if (Verdict v = verify_tower(tower, options); !v.ok())
        throw AxiomViolation(*v.first());
    const int h = tower.height();
    std::vector<Matrix<Field>> gauge;
    for (int k = 1; k <= h; ++k)
        gauge.push_back(tower.level(k).gauge(k) * kron_power(inverse(tower.transition(1, k)[1]), k));
    return FactorizedSystem<Field>(tower.object(), h, std::move(gauge), tower.level(0).unit());
}

/// The isomorphism truncate(assemble(tower), d) -> level d with components
/// phi_{kd}[k]^-1.
template <class Field>
SystemMorphism<Field> comparison_isomorphism(const ProjectiveSystem<Field>& tower,
                                             const FactorizedSystem<Field>& assembled, int d)
{
    std::vector<Matrix<Field>> comps;
    for (int k = 0; k <= d; ++k)
        comps.push_back(inverse(tower.transition(k, d)[k]));
    return SystemMorphism<Field>(truncate(assembled, d), tower.level(d), std::move(comps));
}

/// Checks that per-level morphisms f^d: A_d -> B_d form a morphism of
/// towers: phi^B_{de} truncate(f^e, d) = f^d phi^A_{de} in every degree, and
/// each f^d is a morphism.
template <class Field>
Verdict morphism_of_towers(const ProjectiveSystem<Field>& source, const ProjectiveSystem<Field>& target,
                           const std::vector<SystemMorphism<Field>>& components, const VerifyOptions& options = {})
{
    Verdict out;
    const int h = source.height();
    if (target.height() != h || static_cast<int>(components.size()) != h + 1) {
        out.violations.push_back(Violation{"tower-morphism", 0, "", "", "heights do not match"});
        return out;
    }
    for (int d = 0; d <= h; ++d) {
        const auto& f = components[d];
        if (f.depth() != d || !(f.source() == source.level(d)) || !(f.target() == target.level(d))) {
            out.violations.push_back(Violation{"tower-morphism", d, "", "",
                                               "component " + std::to_string(d) + " does not map level " +
                                                   std::to_string(d) + " to level " + std::to_string(d)});
            continue;
        }
        VerifyOptions o = options;
        o.depth_cap = d;
        out.append(verify_morphism(f, o));
    }
    if (!out.ok())
        return out;
    for (int d = 0; d <= h; ++d)
        for (int e = d; e <= h; ++e)
            for (int k = 0; k <= d; ++k) {
                auto lhs = target.transition(d, e)[k] * components[e].component(k);
                auto rhs = components[d].component(k) * source.transition(d, e)[k];
                if (auto v = detail::compare(lhs, rhs,
                                             Violation{"tower-morphism", k, "", "",
                                                       "square with transitions (" + std::to_string(d) + "," +
                                                           std::to_string(e) + ") does not commute"}))
                    out.violations.push_back(*v);
            }
    return out;
}

/// The morphism of limits: degree k component taken from level k.
template <class Field>
SystemMorphism<Field> assemble_morphism(const std::vector<SystemMorphism<Field>>& components,
                                        const FactorizedSystem<Field>& source, const FactorizedSystem<Field>& target)
{
    std::vector<Matrix<Field>> comps;
    for (int k = 0; k < static_cast<int>(components.size()); ++k)
        comps.push_back(components[k].component(k));
    return SystemMorphism<Field>(source, target, std::move(comps));
}

}  // namespace factoperad
