#include <gtest/gtest.h>

#include "factoperad/limits.hpp"
#include "fixtures.hpp"

using namespace factoperad;
using namespace fixtures;

namespace {

BraidedObject<RationalField> flip_obj(bool koszul = false) { return make_braided_object(2, flip(Q), koszul); }
BraidedObject<RationalField> hecke_obj() { return make_braided_object(2, hecke(Q), false); }

std::vector<std::vector<MQ>> symmetric_families(const BraidedObject<RationalField>& obj, int h)
{
    std::vector<std::vector<MQ>> out(1);
    for (int d = 1; d <= h; ++d)
        out.push_back(symmetric_automorphism(obj, d, 17 + d));
    return out;
}

std::vector<std::vector<MQ>> twist_families(const BraidedObject<RationalField>& obj, int h)
{
    std::vector<std::vector<MQ>> out(1);
    for (int d = 1; d <= h; ++d)
        out.push_back(twist_automorphism(obj, d, 2 * d, 3 * d));
    return out;
}

// mu of the limit from level |alpha|: mu^(d) (x)_i phi_{alpha_i d}[alpha_i]^-1,
// factors in reading order.
MQ limit_mu_oracle(const ProjectiveSystem<RationalField>& t, const LinearEmbedding& phi, const Composition& alpha)
{
    const int d = total_degree(alpha);
    std::vector<MQ> parts;
    const Permutation order = vertical_order(phi);
    for (int slot : order.images())
        parts.push_back(inverse(t.transition(alpha[slot], d)[alpha[slot]]));
    return t.level(d).mu(phi, alpha) * kron_all(Q, std::span<const MQ>(parts));
}

std::vector<LinearEmbedding> probes(int n)
{
    auto out = vertical_family(n);
    if (n >= 2)
        out.push_back(generic_embedding(n, 3));
    return out;
}

}  // namespace

TEST(Tower, OfSystemRoundTrips)
{
    for (bool k : {false, true}) {
        auto s = from_object(flip_obj(k), 3);
        auto t = tower_of(s);
        EXPECT_EQ(t.height(), 3);
        for (int d = 0; d <= 3; ++d)
            EXPECT_EQ(t.level(d), truncate(s, d));
        EXPECT_TRUE(verify_tower(t).ok());
        EXPECT_EQ(assemble(t), s);
    }
    auto s = from_object(hecke_obj(), 3);
    EXPECT_EQ(tower_of(s, 2).height(), 2);
    EXPECT_THROW(tower_of(s, 4), DepthExceeded);
}

TEST(Tower, ConstructionChecksShapes)
{
    auto s = from_object(flip_obj(), 2);
    std::vector<FactorizedSystem<RationalField>> levels{truncate(s, 0), truncate(s, 1), truncate(s, 2)};
    EXPECT_THROW(ProjectiveSystem<RationalField>(levels, {}), InvalidArgument);  // missing transitions
    std::map<std::pair<int, int>, std::vector<MQ>> tr{{{0, 1}, {MQ::identity(Q, 1)}},
                                                      {{0, 2}, {MQ::identity(Q, 1)}},
                                                      {{1, 2}, {MQ::identity(Q, 1), MQ::identity(Q, 2)}}};
    EXPECT_NO_THROW(ProjectiveSystem<RationalField>(levels, tr));
    auto bad = tr;
    bad[{1, 2}] = {MQ::identity(Q, 1), MQ::identity(Q, 3)};
    EXPECT_THROW(ProjectiveSystem<RationalField>(levels, bad), InvalidArgument);
    bad = tr;
    bad[{1, 2}] = {MQ::identity(Q, 1)};
    EXPECT_THROW(ProjectiveSystem<RationalField>(levels, bad), InvalidArgument);
    EXPECT_THROW(ProjectiveSystem<RationalField>({truncate(s, 0), truncate(s, 2)}, {}), InvalidArgument);
    auto other = from_object(hecke_obj(), 2);
    EXPECT_THROW(ProjectiveSystem<RationalField>({truncate(s, 0), truncate(other, 1)}, {{{0, 1}, {MQ::identity(Q, 1)}}}),
                 InvalidArgument);
}

TEST(Tower, TwistedTowerAssembles)
{
    struct Case {
        FactorizedSystem<RationalField> base;
        std::vector<std::vector<MQ>> families;
    };
    std::vector<Case> cases{{from_object(flip_obj(), 3), symmetric_families(flip_obj(), 3)},
                            {from_object(flip_obj(true), 3), symmetric_families(flip_obj(true), 3)},
                            {from_object(hecke_obj(), 3), twist_families(hecke_obj(), 3)}};
    for (const auto& c : cases) {
        auto t = twisted_tower(c.base, c.families);
        ASSERT_TRUE(verify_tower(t).ok());
        auto a = assemble(t);
        EXPECT_TRUE(verify_factorization(a).ok());
        for (int d = 0; d <= 3; ++d) {
            auto iso = comparison_isomorphism(t, a, d);
            EXPECT_TRUE(verify_morphism(iso, [d] {
                            VerifyOptions o;
                            o.depth_cap = d;
                            return o;
                        }())
                            .ok())
                << d;
        }
        // the limit is the base twisted by the top components of each level
        auto iso = lift_morphism(c.families[1][0], c.base, a);
        for (int k = 1; k <= 3; ++k)
            EXPECT_EQ(iso.component(k), c.families[k][k - 1]) << k;
        EXPECT_TRUE(verify_morphism(iso).ok());
        for (int n = 1; n <= 3; ++n)
            for (const auto& phi : probes(n))
                for (const auto& alpha : compositions(n, 3))
                    EXPECT_EQ(a.mu(phi, alpha), limit_mu_oracle(t, phi, alpha));
    }
}

TEST(Tower, IncompatibleGluingIsRejected)
{
    auto obj = hecke_obj();
    std::vector<std::vector<MQ>> fam(1);
    for (int d = 1; d <= 3; ++d)
        fam.push_back(twist_automorphism(obj, d, d + 1, 2 * d + 1));
    auto t = twisted_tower(from_object(obj, 3), fam);
    auto v = verify_tower(t);
    EXPECT_TRUE(v.names("gluing"));
    for (const auto& x : v.violations)
        EXPECT_EQ(x.axiom, "gluing");
    EXPECT_THROW(assemble(t), AxiomViolation);
}

TEST(Tower, BrokenCocycleIsRejected)
{
    auto s = from_object(flip_obj(), 3);
    auto base = tower_of(s);
    auto tr = base.transitions();
    tr[{1, 2}] = {MQ::identity(Q, 1), MQ::scalar(Q, 2, 2)};
    ProjectiveSystem<RationalField> t(base.levels(), tr);
    auto v = verify_tower(t);
    EXPECT_TRUE(v.names("cocycle"));
    EXPECT_FALSE(v.names("a"));
    EXPECT_FALSE(v.names("transition"));
    EXPECT_THROW(assemble(t), AxiomViolation);
}

TEST(Tower, NonIdentityDiagonalIsRejected)
{
    auto base = tower_of(from_object(flip_obj(), 2));
    auto tr = base.transitions();
    tr[{1, 1}] = {MQ::identity(Q, 1), MQ::scalar(Q, 2, 3)};
    auto v = verify_tower(ProjectiveSystem<RationalField>(base.levels(), tr));
    EXPECT_TRUE(v.names("identity"));
}

TEST(Tower, BadLevelIsRejected)
{
    auto obj = flip_obj();
    auto s = from_object(obj, 2);
    auto bad = FactorizedSystem<RationalField>(obj, 2, {MQ::scalar(Q, 2, 2)});
    std::map<std::pair<int, int>, std::vector<MQ>> tr{{{0, 1}, {MQ::identity(Q, 1)}},
                                                      {{0, 2}, {MQ::identity(Q, 1)}},
                                                      {{1, 2}, {MQ::identity(Q, 1), MQ::identity(Q, 2)}}};
    ProjectiveSystem<RationalField> t({truncate(s, 0), truncate(s, 1), bad}, tr);
    auto v = verify_tower(t);
    EXPECT_TRUE(v.names("a"));
    EXPECT_TRUE(v.names("morphism") || v.names("f0"));
    try {
        assemble(t);
        ADD_FAILURE() << "expected AxiomViolation";
    } catch (const AxiomViolation& e) {
        EXPECT_FALSE(e.violation.axiom.empty());
    }
}

TEST(TowerMorphism, TwistComponentsFormAMorphism)
{
    auto obj = flip_obj();
    auto s = from_object(obj, 3);
    auto fam = symmetric_families(obj, 3);
    auto src = tower_of(s);
    auto dst = twisted_tower(s, fam);
    auto family = [&](long c) {
        std::vector<SystemMorphism<RationalField>> f{
            SystemMorphism<RationalField>(src.level(0), dst.level(0), {MQ::identity(Q, 1)})};
        for (int d = 1; d <= 3; ++d)
            f.push_back(lift_morphism(MQ(fam[d][0].scaled(Q.from_int(c))), src.level(d), dst.level(d)));
        return f;
    };
    auto f = family(1), g = family(2);
    EXPECT_TRUE(morphism_of_towers(src, dst, f).ok());
    EXPECT_TRUE(morphism_of_towers(src, dst, g).ok());

    auto a = assemble(src), b = assemble(dst);
    auto fa = assemble_morphism(f, a, b), ga = assemble_morphism(g, a, b);
    EXPECT_TRUE(verify_morphism(fa).ok());
    EXPECT_TRUE(verify_morphism(ga).ok());
    // faithful: equal levelwise iff equal after assembly
    EXPECT_EQ(fa, assemble_morphism(family(1), a, b));
    EXPECT_FALSE(fa == ga);
    bool levelwise_equal = true;
    for (int d = 0; d <= 3; ++d)
        levelwise_equal = levelwise_equal && f[d] == g[d];
    EXPECT_FALSE(levelwise_equal);

    // independent scalars per level break the squares
    std::vector<SystemMorphism<RationalField>> mixed{f[0], f[1], g[2], f[3]};
    auto v = morphism_of_towers(src, dst, mixed);
    EXPECT_TRUE(v.names("tower-morphism"));
}

TEST(TowerMorphism, ShapeMismatch)
{
    auto s = from_object(flip_obj(), 2);
    auto t = tower_of(s);
    std::vector<SystemMorphism<RationalField>> f{
        SystemMorphism<RationalField>(t.level(0), t.level(0), {MQ::identity(Q, 1)})};
    EXPECT_TRUE(morphism_of_towers(t, t, f).names("tower-morphism"));
}
