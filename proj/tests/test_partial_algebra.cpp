#include <gtest/gtest.h>

#include "pipgns/corpus.hpp"
#include "pipgns/expr_parse.hpp"

#include <random>

using namespace pipgns;

namespace {

Sequence S(const std::string& t) { return parse_sequence(t); }

Subspace span5(std::initializer_list<int> idx) {
    std::vector<Sequence> g;
    for (int k : idx) g.push_back(Sequence::unit(k));
    return Subspace(Ambient::finite(5), g);
}

Sequence random_in(std::mt19937& rng, const Subspace& s) {
    std::uniform_int_distribution<int> c(-3, 3);
    Sequence x;
    for (const auto& g : s.basis()) x = x + g * Scalar(c(rng));
    return x;
}

}  // namespace

TEST(Validate, Ex45AllAxiomsPass) {
    auto M = corpus::ex45();
    Report r = validate_algebra(M.algebra());
    EXPECT_TRUE(r.ok()) << r.text();
    EXPECT_TRUE(commutative_on_generators(M.algebra()));
    auto w = associativity_counterexample(M.algebra());
    ASSERT_TRUE(w.has_value());
    EXPECT_NE(w->lhs, w->rhs);
}

TEST(Validate, ChainFailureOnTwoLines) {
    Subspace C2 = Subspace::full(2);
    Subspace l1(Ambient::finite(2), {Sequence::unit(1)}), l2(Ambient::finite(2), {Sequence::unit(2)});
    PartialStarAlgebra A(C2, RectangleRelation(C2, {{l1, l1}, {l1, l2}}), ProductRule::pointwise(), 6);
    Report r = validate_algebra(A);
    const Check* c = r.find("chain-condition");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->pass);
    EXPECT_EQ(c->witness, "vec(1, 0)");
    EXPECT_THROW(A.right_multipliers(l1), Error);
}

TEST(Validate, Ex46AndOtherCorpusAlgebrasPass) {
    for (auto g : {corpus::Growth::Linear, corpus::Growth::Quadratic, corpus::Growth::Geometric}) {
        Report r = validate_algebra(corpus::ex46(g).algebra());
        EXPECT_TRUE(r.ok()) << r.text();
    }
    for (const auto& name : {"ex24", "ex25", "desk-ex2"}) {
        Report r = validate_algebra(corpus::by_name(name).algebra());
        EXPECT_TRUE(r.ok()) << name << "\n" << r.text();
    }
}

TEST(Validate, MissingMirrorRectangleFailsInvolutionClosure) {
    Subspace C3 = Subspace::full(3);
    Subspace l1(Ambient::finite(3), {Sequence::unit(1)});
    PartialStarAlgebra A(C3, RectangleRelation(C3, {{l1, C3}}), ProductRule::pointwise(), 6);
    EXPECT_FALSE(validate_algebra(A).find("involution-closure")->pass);
}

TEST(Validate, ProductLeavingCarrierDetected) {
    Subspace C3 = Subspace::full(3);
    Subspace P(Ambient::finite(3), {S("vec(1,2,0)"), S("e[3]")});
    PartialStarAlgebra A(P, RectangleRelation(P, {{P, P}}), ProductRule::pointwise(), 6);
    Report r = validate_algebra(A);
    EXPECT_FALSE(r.find("product-in-carrier")->pass);
}

TEST(Multipliers, Ex46RightMultipliersOfA) {
    auto M = corpus::ex46();
    const auto& A = M.algebra();
    Subspace Ra = A.right_multipliers_of(M.elements["a"]);
    EXPECT_EQ(Ra, Subspace(Ambient::symbolic(), {S("n")}, true));
    EXPECT_EQ(A.right_multipliers(Subspace::zero(Ambient::symbolic())), A.carrier());
    EXPECT_EQ(A.right_multipliers_of(S("n^2")), Subspace::phi());
    EXPECT_EQ(A.right_multipliers(A.carrier()), Subspace::phi());
}

TEST(Multipliers, Ex45RightMultipliersOfCarrier) {
    auto M = corpus::ex45();
    const auto& A = M.algebra();
    EXPECT_EQ(A.right_multipliers(A.carrier()), span5({1, 2, 3, 4}));
    EXPECT_EQ(A.right_multipliers(span5({1, 2})), Subspace::full(5));
    EXPECT_EQ(A.right_multipliers(span5({5})), span5({1, 2, 3, 4}));
}

TEST(Products, Ex45FormulaAndComposability) {
    auto M = corpus::ex45();
    const auto& A = M.algebra();
    auto p = A.product(S("e[5]"), S("e[1]"));
    ASSERT_TRUE(p.ok());
    EXPECT_EQ(A.render(*p.value), "vec(0, 0, 1, 0, 0)");
    EXPECT_EQ(*A.product(S("vec(1,2,3,4,0)"), S("vec(1,1,1,1,1)")).value, S("vec(4,2,4,4,0)"));
    EXPECT_FALSE(A.product(S("e[5]"), S("e[5]")).ok());
}

TEST(Products, Ex46SquareAndNotComposable) {
    auto M = corpus::ex46();
    const auto& A = M.algebra();
    Sequence a = M.elements["a"];
    auto sq = A.product(a, a);
    ASSERT_TRUE(sq.ok());
    EXPECT_EQ(*sq.value, S("n^2"));
    auto bad = A.product(a, a * a);
    EXPECT_FALSE(bad.ok());
    EXPECT_NE(bad.reason.find("no rectangle"), std::string::npos);
    EXPECT_EQ(*A.product(S("n^2"), S("e[3]")).value, S("9*e[3]"));
}

TEST(SemiAssociativity, StepFunctionAlgebraPasses) {
    for (int m : {1, 2, 4}) EXPECT_TRUE(semi_associativity_check(corpus::ex24(m).algebra()).ok());
    EXPECT_TRUE(semi_associativity_check(corpus::ex46().algebra()).ok());
    EXPECT_TRUE(semi_associativity_check(corpus::ex25().algebra()).ok());
}

TEST(SemiAssociativity, Ex45FailsWithTriple) {
    auto M = corpus::ex45();
    const auto& A = M.algebra();
    std::optional<TripleWitness> w;
    Report r = semi_associativity_check(A, &w);
    EXPECT_FALSE(r.ok());
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(A.right_multipliers_of(w->y).contains(w->x));
    EXPECT_TRUE(A.right_multipliers(A.carrier()).contains(w->b));
    Sequence lhs = A.formal_product(w->y, A.formal_product(w->x, w->b));
    Sequence rhs = A.formal_product(A.formal_product(w->y, w->x), w->b);
    EXPECT_NE(lhs, rhs);
    EXPECT_EQ(lhs, w->lhs);
    EXPECT_EQ(rhs, w->rhs);
}

TEST(MultiplierProperties, SumAndAntitonicity) {
    std::mt19937 rng(3);
    auto M = corpus::ex45();
    const auto& A = M.algebra();
    std::uniform_int_distribution<int> bit(0, 1);
    auto random_span = [&] {
        std::vector<Sequence> g;
        for (int k = 1; k <= 5; ++k)
            if (bit(rng)) g.push_back(Sequence::unit(k) + (bit(rng) ? Sequence::unit(1 + k % 5) : Sequence()));
        return Subspace(Ambient::finite(5), g);
    };
    for (int t = 0; t < 100; ++t) {
        Subspace n1 = random_span(), n2 = random_span();
        EXPECT_EQ(A.right_multipliers(n1 + n2), intersect(A.right_multipliers(n1), A.right_multipliers(n2)));
        if (n1.contains(n2)) {
            EXPECT_TRUE(A.right_multipliers(n2).contains(A.right_multipliers(n1)));
        }
        EXPECT_EQ(A.left_multipliers(n1 + n2), intersect(A.left_multipliers(n1), A.left_multipliers(n2)));
    }
}

TEST(MultiplierProperties, BruteForceMembershipOracle) {
    std::mt19937 rng(11);
    auto M = corpus::ex45();
    const auto& A = M.algebra();
    const Subspace full = Subspace::full(5);
    std::vector<Subspace> Ns = {span5({1}), span5({5}), span5({1, 5}), span5({2, 3}), full};
    for (const auto& N : Ns) {
        Subspace R = A.right_multipliers(N);
        for (int t = 0; t < 40; ++t) {
            Sequence x = random_in(rng, full);
            bool all = true;
            for (int s = 0; s < 30; ++s) all = all && A.gamma().related(random_in(rng, N), x);
            for (const auto& y : N.basis()) all = all && A.gamma().related(y, x);
            EXPECT_EQ(R.contains(x), all) << N.to_string() << " " << A.render(x);
        }
    }
}

TEST(ProductProperties, StarAntihomomorphism) {
    std::mt19937 rng(9);
    for (const auto& name : {"ex45", "ex24"}) {
        auto M = corpus::by_name(name);
        const auto& A = M.algebra();
        for (int t = 0; t < 50; ++t) {
            const auto& r = A.gamma().rects()[t % A.gamma().rects().size()];
            Sequence x = random_in(rng, r.left) + random_in(rng, r.left) * Scalar(0, 1);
            Sequence y = random_in(rng, r.right);
            auto xy = A.product(x, y);
            ASSERT_TRUE(xy.ok());
            auto rev = A.product(y.conj(), x.conj());
            ASSERT_TRUE(rev.ok());
            EXPECT_EQ(xy.value->conj(), *rev.value);
        }
    }
}
