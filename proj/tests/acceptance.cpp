#include "suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace pipgns;
using namespace pipgns::suites;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void need(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct Criterion {
    std::string name;
    std::string tolerance;
    double limit_ms;
    std::function<Verdict()> run;
};

bool has(const Check* c, bool pass, const std::string& needle) {
    return c && c->pass == pass && (c->witness + " " + c->detail).find(needle) != std::string::npos;
}

Verdict ex24() {
    Verdict v;
    const Model M = corpus::ex24(4);
    const Degeneracy d = compute_degeneracy_spaces(M.weight);
    v.need(d.N1.is_zero(), "N1 = " + d.N1.to_string());
    v.need(d.N2 == corpus::detail::coord_span(8, 5, 8), "N2 = " + d.N2.to_string());
    v.need(!pip_build(M.weight).space, "PIP-space built");
    v.need(gns_pipeline(M.weight, ProductMode::Star).report.exit_code() == 11, "gns did not stop at the criterion");
    if (v.pass) v.detail = "N1 = {0}, N2 = " + d.N2.to_string() + ", criterion fail";
    return v;
}

Verdict ex25() {
    Verdict v;
    const Model M = corpus::ex25();
    const BWeight& W = M.weight;
    const Degeneracy d = compute_degeneracy_spaces(W);
    const Sequence y = M.elements.at("y"), b = M.elements.at("b");
    v.need(d.N1 == Subspace::phi(Ambient::symbolic()), "N1 = " + d.N1.to_string());
    v.need(d.N2 == Subspace(Ambient::symbolic(), {b}, true), "N2 = " + d.N2.to_string());
    const SeriesValue bb = W.pair(b, b), yb = W.pair(y, b);
    v.need(bb.ok() && bb.value == Scalar(0), "Omega(b, b) = " + bb.value.to_string());
    v.need(yb.ok() && yb.value == Scalar(1), "Omega(y, b) = " + yb.value.to_string());
    std::mt19937 rng(25);
    int samples = 0;
    for (; samples < 200 && v.pass; ++samples) {
        const Scalar alpha = gaussian_rational(rng), b1 = gaussian_rational(rng), b2 = gaussian_rational(rng);
        const Sequence left = random_phi(rng) + y * b1 + b * b2, right = random_phi(rng) + b * alpha;
        const SeriesValue o = W.pair(left, right);
        v.need(o.ok() && o.value == b1 * alpha.conj(), "formula fails at alpha = " + alpha.to_string());
    }
    if (v.pass) v.detail = "N1 = phi, N2 = " + d.N2.to_string() + ", " + std::to_string(samples) + " formula samples";
    return v;
}

Verdict ex45() {
    Verdict v;
    const Model M = corpus::ex45();
    const Degeneracy d = compute_degeneracy_spaces(M.weight);
    const Subspace e1 = corpus::detail::coord_span(5, 1, 1);
    v.need(d.N1 == e1 && d.N2 == e1, "N1 = " + d.N1.to_string() + ", N2 = " + d.N2.to_string());
    v.need(d.Ngns == Subspace(Ambient::finite(5), {Sequence::unit(1), Sequence::unit(3), Sequence::unit(4)}),
           "Ngns = " + d.Ngns.to_string());
    const GnsOutcome o = gns_pipeline(M.weight, ProductMode::Star);
    v.need(!o.rep && o.report.exit_code() == 11, "refusal stage " + std::to_string(o.report.exit_code()));
    v.need(has(o.report.report.find("criterion/invariance with N = N1"), false,
               "vec(0, 0, 0, 0, 1) * vec(1, 0, 0, 0, 0) = vec(0, 0, 1, 0, 0)"),
           "invariance witness missing");
    if (v.pass) v.detail = "Ngns = " + d.Ngns.to_string() + ", refused at stage 1 (criterion), witness a*e1 = e3";
    return v;
}

Verdict ex46() {
    Verdict v;
    const Model M = corpus::ex46();
    for (auto mode : {ProductMode::Star, ProductMode::Bullet}) {
        const GnsOutcome o = gns_pipeline(M.weight, mode);
        v.need(o.rep && o.report.exit_code() == 0, std::string("gns ") + mode_name(mode) + " failed");
        if (o.rep) v.need(o.rep->space.N().is_zero(), "N nonzero");
    }
    const PipSpace P = *pip_build(M.weight).space;
    const Subspace phi = Subspace::phi(Ambient::symbolic());
    v.need(P.Vsharp() == phi, "V# = " + P.render(P.Vsharp()));
    v.need(P.lattice().size() == 2 && P.is_lattice_member(phi) && P.is_lattice_member(P.V()), "lattice is not {phi, V}");
    v.need(run_query(P, "pi(a) star pi(a)", M.elements).verdict == "= pi(a^2)", "star");
    v.need(run_query(P, "pi(a) bullet pi(a)", M.elements).verdict == "= pi(a^2)", "bullet");
    const QueryResult c = run_query(P, "pi(a) circ pi(a)", M.elements);
    v.need(c.verdict == "NotFactorizable", "circ verdict " + c.verdict);
    const std::string big = "chain E1=" + P.render(P.V());
    v.need(c.outcome.report.find("chain E1=phi") && !c.outcome.report.find("chain E1=phi")->pass, "E1 = phi chain");
    v.need(has(c.outcome.report.find(big), false, "n^3"), "E1 = V chain does not name n^3");
    if (v.pass) v.detail = "N = {0}, lattice {phi, " + P.render(P.V()) + "}, star = bullet = pi(a^2), circ NotFactorizable";
    return v;
}

Verdict desk() {
    Verdict v;
    const GnsOutcome o = gns_pipeline(corpus::desk_ex2().weight, ProductMode::Star);
    v.need(o.report.exit_code() == 15, "exit " + std::to_string(o.report.exit_code()));
    v.need(has(o.report.report.find("extension"), false, "pi(4^n) does not extend to (1/2)^n"), "witness u");
    v.need(has(o.report.report.find("extension"), false, "2^n"), "candidate 2^n");
    const SuiteResult r = desk_oracle(50);
    v.need(r.ok(), r.first_failure());
    if (v.pass) v.detail = "stage 5, u = (1/2)^n, candidate 2^n, oracle n = 1.." + std::to_string(r.count);
    return v;
}

Verdict prop2() {
    Verdict v;
    const Model base = corpus::ex24();
    const BuildResult b = build_from_functional(base.algebra(), base.weight.B, *base.functional);
    v.need(b.weight && b.report.ok(), "construction refused on step-function data");
    if (b.weight) v.need(check_bweight(*b.weight).ok(), "check_bweight fails on step-function data");
    const SuiteResult r = prop2_random(99, 24);
    v.need(r.ok(), r.first_failure());
    v.need(r.count >= 20, std::to_string(r.count) + " random models");
    if (v.pass) v.detail = "step-function data plus " + std::to_string(r.count) + " random models pass check_bweight";
    return v;
}

Verdict hierarchy() {
    Verdict v;
    SuiteResult r = product_hierarchy(4242);
    v.need(r.ok(), join(r.failures));
    v.need(r.tally["decided"] >= 200, std::to_string(r.tally["decided"]) + " decided pairs");
    v.need(r.tally["circ"] > 0, "no circ-defined pair");
    v.need(r.tally["bullet_only"] > 0, "no pair with bullet defined and circ undefined");
    if (v.pass)
        v.detail = std::to_string(r.tally["decided"]) + " pairs, circ " + std::to_string(r.tally["circ"]) + ", bullet only " +
                   std::to_string(r.tally["bullet_only"]) + ", star " + std::to_string(r.tally["star"]);
    return v;
}

Verdict galois() {
    Verdict v;
    const SuiteResult f = galois_finite(2024, 60), s = galois_symbolic(77, 50), l = lattice_closure();
    v.need(f.ok(), f.first_failure());
    v.need(s.ok(), s.first_failure());
    v.need(l.ok(), l.first_failure());
    v.need(f.count + s.count >= 500, std::to_string(f.count + s.count) + " law checks");
    if (v.pass)
        v.detail = std::to_string(f.count) + " finite + " + std::to_string(s.count) + " symbolic law checks (two random subspaces each), " +
                   std::to_string(l.count) + " lattice meets";
    return v;
}

Verdict numeric() {
    Verdict v;
    SuiteResult r = numeric_oracles(1e-9, 1e-6);
    v.need(r.ok(), join(r.failures));
    v.need(r.tally["sums"] > 0 && r.tally["limits"] > 0, "no sums or limits checked");
    if (v.pass)
        v.detail = std::to_string(r.tally["sums"]) + " sums, " + std::to_string(r.tally["limits"]) + " limits";
    return v;
}

}  // namespace

int main() {
    const std::vector<Criterion> all = {
        {"ex24 degeneracy (m = 4)", "exact", 1000, ex24},
        {"ex25 degeneracy and pairing formula", "exact", 1000, ex25},
        {"ex45 criterion refusal", "exact", 1000, ex45},
        {"ex46 GNS and products", "exact", 5000, ex46},
        {"desk-ex2 extension failure", "exact", 1000, desk},
        {"functional construction round trip", "exact", 0, prop2},
        {"product hierarchy", "exact", 0, hierarchy},
        {"Galois laws and lattice closure", "exact", 0, galois},
        {"numeric oracles", "1e-9 sums, 1e-6 limits", 0, numeric},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_ms > 0 && ms > c.limit_ms && v.pass) v = {false, "runtime over limit; " + v.detail};
        failed += !v.pass;
        char time[64];
        if (c.limit_ms > 0)
            std::snprintf(time, sizeof time, "%.0f ms (limit %.0f ms)", ms, c.limit_ms);
        else
            std::snprintf(time, sizeof time, "%.0f ms", ms);
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << c.name << "  [tol " << c.tolerance << "]  " << time << "  "
                  << v.detail << std::endl;
    }
    std::cout << (all.size() - failed) << "/" << all.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
