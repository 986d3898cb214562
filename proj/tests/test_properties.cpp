#include <gtest/gtest.h>

#include "suites.hpp"

using namespace pipgns;
using namespace pipgns::suites;

TEST(GaloisLattice, FiniteBackendRandomSubspaces) {
    const SuiteResult r = galois_finite(2024, 60);
    EXPECT_TRUE(r.ok()) << join(r.failures);
    EXPECT_GE(r.count, 300);
}

TEST(GaloisLattice, SymbolicBackendRandomSubspaces) {
    const SuiteResult r = galois_symbolic(77, 50);
    EXPECT_TRUE(r.ok()) << join(r.failures);
    EXPECT_GE(r.count, 250);
}

TEST(GaloisLattice, AssayingLatticeClosedAndAboveVsharp) {
    const SuiteResult r = lattice_closure();
    EXPECT_TRUE(r.ok()) << join(r.failures);
    EXPECT_GT(r.count, 0);
}

TEST(ProductHierarchy, CircImpliesBulletImpliesStar) {
    SuiteResult r = product_hierarchy(4242);
    EXPECT_TRUE(r.ok()) << join(r.failures);
    EXPECT_GE(r.tally["decided"], 200) << "pairs tried " << r.tally["pairs"];
    EXPECT_GT(r.tally["circ"], 0);
    EXPECT_GT(r.tally["bullet_only"], 0);
    EXPECT_GE(r.tally["star"], r.tally["circ"]);
    RecordProperty("decided_pairs", r.tally["decided"]);
}

TEST(ProductHierarchy, Ex46SeparatesCircFromBullet) {
    const Model M = corpus::ex46();
    const PipSpace P = *pip_build(M.weight).space;
    const PipOperator A = PipOperator::multiplication(M.elements.at("a"));
    EXPECT_FALSE(product_circ(P, {A, A}).ok());
    ASSERT_TRUE(product_bullet(P, A, A).ok());
    EXPECT_TRUE(op_equal(P, *product_bullet(P, A, A).value, PipOperator::multiplication(S("n^2"))));
}

TEST(ProductHierarchy, QueriesOutsideOpAreRejected) {
    const Model M = corpus::desk_ex2();
    const PipSpace P = *pip_build(M.weight).space;
    const QueryResult q = run_query(P, "pi(x) star id", M.elements);
    EXPECT_EQ(q.verdict, "NotInOp");
    EXPECT_FALSE(q.outcome.report.find("operand 1 maps-into-V")->pass);
}

TEST(Prop2, RandomSemiAssociativeDiagonalModels) {
    const SuiteResult r = prop2_random(99, 24);
    EXPECT_TRUE(r.ok()) << join(r.failures);
    EXPECT_GE(r.count, 20);
}

TEST(Prop2, StepFunctionDataPassesInFull) {
    const Model base = corpus::ex24();
    BuildResult r = build_from_functional(base.algebra(), base.weight.B, *base.functional);
    ASSERT_TRUE(r.weight.has_value()) << r.report.text();
    EXPECT_TRUE(r.report.ok());
    EXPECT_TRUE(check_bweight(*r.weight).ok()) << check_bweight(*r.weight).text();
}

TEST(NumericOracle, CorpusPairingsAgreeWithFloatingEvaluation) {
    SuiteResult r = numeric_oracles(1e-9, 1e-6);
    EXPECT_TRUE(r.ok()) << join(r.failures);
    EXPECT_GT(r.tally["sums"], 50);
    EXPECT_GT(r.tally["limits"], 5);
}

TEST(NumericOracle, DeskRepresentabilityAgainstSampling) {
    const SuiteResult r = desk_oracle(50);
    EXPECT_TRUE(r.ok()) << join(r.failures);
    EXPECT_EQ(r.count, 50);
}
