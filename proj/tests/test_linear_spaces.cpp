#include <gtest/gtest.h>

#include "pipgns/expr_parse.hpp"
#include "pipgns/pairing.hpp"
#include "pipgns/representability.hpp"

#include <random>

using namespace pipgns;

namespace {

Sequence S(const std::string& t) { return parse_sequence(t); }

Subspace fin(int d, std::initializer_list<const char*> gens) {
    std::vector<Sequence> g;
    for (auto* s : gens) g.push_back(S(s));
    return Subspace(Ambient::finite(d), g);
}

Subspace sym(bool phi, std::initializer_list<const char*> gens) {
    std::vector<Sequence> g;
    for (auto* s : gens) g.push_back(S(s));
    return Subspace(Ambient::symbolic(), g, phi);
}

Subspace random_finite(std::mt19937& rng, int d) {
    std::uniform_int_distribution<int> count(0, d), coef(-2, 2);
    std::vector<Sequence> g;
    int k = count(rng);
    for (int j = 0; j < k; ++j) {
        std::vector<Scalar> v;
        for (int i = 0; i < d; ++i) v.push_back(Scalar(coef(rng)));
        g.push_back(Sequence::finite(v));
    }
    return Subspace(Ambient::finite(d), g);
}

}  // namespace

TEST(FiniteSubspace, IntersectionOfCoordinatePlanes) {
    Subspace a = fin(5, {"e[1]", "e[2]"}), b = fin(5, {"e[2]", "e[3]"});
    EXPECT_EQ(intersect(a, b), fin(5, {"e[2]"}));
    EXPECT_EQ((a + b).rank(), 3u);
    EXPECT_TRUE(a.contains(S("e[1] - 3*e[2]")));
    EXPECT_FALSE(a.contains(S("e[3]")));
}

TEST(FiniteSubspace, CanonicalBasisMakesEqualityStructural) {
    Subspace a = fin(3, {"vec(1,1,0)", "vec(1,-1,0)"});
    Subspace b = fin(3, {"e[1]", "e[2]"});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.to_string(), b.to_string());
}

TEST(FiniteSubspace, RejectsVectorsOutsideAmbient) {
    EXPECT_THROW(fin(2, {"e[3]"}), Error);
    EXPECT_THROW(Subspace(Ambient::finite(2), {}, true), Error);
    EXPECT_THROW(intersect(fin(2, {"e[1]"}), sym(true, {})), Error);
}

TEST(FiniteSubspace, ModularLawsOnRandomSubspaces) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        int d = 2 + trial % 4;
        Subspace s = random_finite(rng, d), t = random_finite(rng, d), u = random_finite(rng, d);
        EXPECT_EQ(s.rank() + t.rank(), (s + t).rank() + intersect(s, t).rank());
        EXPECT_TRUE(intersect(s, t + u).contains(intersect(s, t) + intersect(s, u)));
        if (s.contains(u)) {
            EXPECT_EQ(intersect(s, t + u), intersect(s, t) + u);
        }
    }
}

TEST(SymbolicSubspace, TailSpansIndependentModuloPhi) {
    Subspace a = sym(true, {"1/n"}), b = sym(true, {"n"});
    Subspace m = intersect(a, b);
    EXPECT_EQ(m, Subspace::phi());
    EXPECT_TRUE(m.contains(S("patch{1:5, 7:-2}")));
    EXPECT_FALSE(m.contains(S("1/n")));
    EXPECT_FALSE(b.contains(S("1/n")));
    EXPECT_FALSE(a.contains(S("n")));
}

TEST(SymbolicSubspace, Membership) {
    Subspace A = sym(true, {"1/n", "n"});
    EXPECT_TRUE(A.contains(S("1/n")));
    EXPECT_TRUE(A.contains(S("3*n - 1/n + e[4]")));
    EXPECT_FALSE(A.contains(S("n^2")));
    EXPECT_FALSE(A.contains(S("1")));
    Subspace noPhi = sym(false, {"n"});
    EXPECT_TRUE(noPhi.contains(S("2*n")));
    EXPECT_FALSE(noPhi.contains(S("n + e[1]")));
}

TEST(SymbolicSubspace, MixedIntersectionIsTailCondition) {
    Subspace p = sym(false, {"n + e[1]", "1/n", "e[2]"});
    Subspace q = sym(true, {"n"});
    Subspace m = intersect(p, q);
    EXPECT_EQ(m, sym(false, {"n + e[1]", "e[2]"}));
    for (const auto& g : m.basis()) {
        EXPECT_TRUE(p.contains(g));
        EXPECT_TRUE(q.contains(g));
    }
    EXPECT_FALSE(q.contains(S("1/n + e[2]")));
}

TEST(SymbolicSubspace, ReportedIntersectionVerifiedByMembership) {
    std::mt19937 rng(5);
    const char* tails[] = {"n", "1/n", "(1/2)^n", "n^2", "2^n", "n*(1/3)^n"};
    std::uniform_int_distribution<int> pick(0, 5), coef(-2, 2), flag(0, 1), idx(1, 4);
    auto random_sym = [&] {
        std::vector<Sequence> g;
        int k = pick(rng) % 3 + 1;
        for (int j = 0; j < k; ++j) {
            Sequence s = S(tails[pick(rng)]) * Scalar(coef(rng) == 0 ? 1 : coef(rng));
            if (flag(rng)) s = s + S(tails[pick(rng)]) + Sequence::unit(idx(rng), Scalar(coef(rng)));
            g.push_back(s);
        }
        return Subspace(Ambient::symbolic(), g, flag(rng) == 1);
    };
    for (int trial = 0; trial < 150; ++trial) {
        Subspace s = random_sym(), t = random_sym();
        Subspace m = intersect(s, t);
        EXPECT_TRUE(s.contains(m));
        EXPECT_TRUE(t.contains(m));
        for (const auto& g : s.probe_generators(4))
            if (!m.contains(g)) {
                EXPECT_FALSE(t.contains(g)) << s.to_string() << " / " << t.to_string() << " at " << g.to_string();
            }
    }
}

TEST(SymbolicSubspace, RenderingAndZero) {
    EXPECT_EQ(Subspace::zero(Ambient::symbolic()).to_string(), "{0}");
    EXPECT_EQ(Subspace::phi().to_string(), "phi");
    EXPECT_EQ(sym(true, {"n + e[2]"}).to_string(), "phi + span{n}");
}

TEST(Representability, CubicFunctionalNotRepresentable) {
    Sequence a = S("n");
    Subspace phi = Subspace::phi();
    Subspace target = sym(true, {"n", "n^2"});
    Functional F;
    F.at = [](const Sequence&) { return Scalar(0); };
    F.phi_values = a * a * a;
    Representation r = representability_solve(PairingRule::sum(), F, phi, target);
    EXPECT_FALSE(r.ok());
    EXPECT_FALSE(r.unsupported);
    EXPECT_NE(r.witness.find("n^3"), std::string::npos) << r.witness;
}

TEST(Representability, UnitFunctionalFinite) {
    Subspace D = Subspace::full(5);
    Subspace target = fin(5, {"e[3]", "e[1]"});
    PairingRule omega = PairingRule::sum();
    Functional F;
    F.at = [&](const Sequence& g) { return pairing_value(omega, S("e[3]"), g); };
    Representation r = representability_solve(omega, F, Subspace(Ambient::finite(5), {S("e[1]"), S("e[3]")}), target);
    ASSERT_TRUE(r.ok()) << r.witness;
    EXPECT_EQ(*r.vector, S("e[3]"));
}

TEST(Representability, LinearFunctionalOnPhi) {
    Subspace target = sym(true, {"n"});
    Functional F;
    F.at = [](const Sequence&) { return Scalar(0); };
    F.phi_values = S("n");
    Representation r = representability_solve(PairingRule::sum(), F, Subspace::phi(), target);
    ASSERT_TRUE(r.ok()) << r.witness;
    EXPECT_EQ(*r.vector, S("n"));
    for (long k = 1; k <= 10; ++k) EXPECT_EQ(pairing_value(PairingRule::sum(), *r.vector, Sequence::unit(k)), Scalar(k));
}

TEST(Annihilator, WeightedSumKernel) {
    PairingRule w = PairingRule::sum(S("vec(0,1,1,1,0)"));
    Subspace B = fin(5, {"e[1]", "e[2]"});
    EXPECT_EQ(annihilator(w, B, B), fin(5, {"e[1]"}));
    Subspace C = fin(5, {"e[1]", "e[2]", "e[3]", "e[4]"});
    EXPECT_EQ(annihilator(w, C, B), fin(5, {"e[1]", "e[3]", "e[4]"}));
}

TEST(Annihilator, PhiAgainstPhi) {
    EXPECT_EQ(annihilator(PairingRule::sum(), Subspace::phi(), Subspace::phi()), Subspace::zero(Ambient::symbolic()));
    Subspace A = sym(true, {"n", "1/n"});
    EXPECT_EQ(annihilator(PairingRule::lim(), A, Subspace::phi()), A);
    EXPECT_EQ(annihilator(PairingRule::lim(), A, sym(true, {"1/n"})), sym(true, {"1/n"}));
}
