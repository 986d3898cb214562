#pragma once

#include "pipgns/model.hpp"

#include <string>
#include <vector>

namespace pipgns::corpus {

namespace detail {

inline Subspace coord_span(int d, int from, int to) {
    std::vector<Sequence> g;
    for (int k = from; k <= to; ++k) g.push_back(Sequence::unit(k));
    return Subspace(Ambient::finite(d), g);
}

inline Sequence geometric(const Scalar& r) { return Sequence(TailExpr::geometric(r, RatFunc(Scalar(1)))); }

}  // namespace detail

/// Step-function discretization of bounded functions on [0,2], 2m slots of width 1/m; B = functions
/// vanishing on [1,2].
inline Model ex24(int m = 4) {
    if (m < 1) throw Error("ex24 needs at least one slot per half");
    const int d = 2 * m;
    const Subspace A = Subspace::full(d);
    const Subspace B = detail::coord_span(d, 1, m);
    PartialStarAlgebra alg(A, RectangleRelation(A, {{A, A}}), ProductRule::pointwise(), 6);
    std::vector<Scalar> w(d, Scalar(Rational(1, m)));
    Model M;
    M.name = "ex24";
    M.weight = BWeight{alg, B, RectangleRelation(A, {{A, B}, {B, A}}), PairingRule::sum(Sequence::finite(w))};
    std::vector<int> D;
    for (int k = 1; k <= m; ++k) D.push_back(k);
    M.functional = FunctionalData{D, std::vector<Scalar>(m, Scalar(Rational(1, m)))};
    M.elements["chi1"] = Sequence::finite(std::vector<Scalar>(m, Scalar(1)));
    return M;
}

/// A = phi + C(n) + C(1/n), products only against phi, lim pairing.
inline Model ex25() {
    const Ambient S = Ambient::symbolic();
    const Sequence n = Sequence::identity_index();
    const Sequence inv = Sequence(TailExpr::geometric(Scalar(1), RatFunc(Poly(Scalar(1)), Poly::n())));
    const Subspace phi = Subspace::phi(S);
    const Subspace A(S, {n, inv}, true);
    const Subspace Binv(S, {inv}, true);
    PartialStarAlgebra alg(A, RectangleRelation(A, {{A, phi}, {phi, A}}), ProductRule::pointwise(), 6);
    Model M;
    M.name = "ex25";
    M.weight = BWeight{alg, phi, RectangleRelation(A, {{A, Binv}, {Binv, A}}), PairingRule::lim()};
    M.elements["y"] = n;
    M.elements["b"] = inv;
    return M;
}

/// C^5 with the commutative, non-associative product on (C x A) u (A x C), C = {x5 = 0}.
inline Model ex45() {
    const Subspace A = Subspace::full(5);
    const Subspace C = detail::coord_span(5, 1, 4);
    const Subspace B = detail::coord_span(5, 1, 2);
    std::vector<ProductRule::Entry> t = {
        {1, 1, 1, Scalar(1)}, {2, 2, 2, Scalar(1)}, {3, 3, 3, Scalar(1)}, {4, 4, 4, Scalar(1)},
        {5, 3, 1, Scalar(1)}, {5, 1, 3, Scalar(1)}, {3, 5, 1, Scalar(1)}, {1, 5, 3, Scalar(1)},
    };
    PartialStarAlgebra alg(A, RectangleRelation(A, {{C, A}, {A, C}}), ProductRule::structure(t), 6);
    Model M;
    M.name = "ex45";
    M.weight = BWeight{alg, B, RectangleRelation(A, {{C, C}}),
                       PairingRule::sum(Sequence::finite({Scalar(0), Scalar(1), Scalar(1), Scalar(1), Scalar(0)}))};
    M.elements["a"] = Sequence::unit(5);
    return M;
}

enum class Growth { Linear, Quadratic, Geometric };

inline Sequence growth_sequence(Growth g) {
    switch (g) {
        case Growth::Linear: return Sequence::identity_index();
        case Growth::Quadratic: return Sequence::identity_index() * Sequence::identity_index();
        case Growth::Geometric: return detail::geometric(Scalar(2));
    }
    return {};
}

inline Growth parse_growth(const std::string& s) {
    if (s == "n") return Growth::Linear;
    if (s == "n^2") return Growth::Quadratic;
    if (s == "2^n") return Growth::Geometric;
    throw Error("ex46 growth must be one of n, n^2, 2^n");
}

/// A = phi + Ca + Ca^2 with a unbounded, B = phi, sum pairing against phi.
inline Model ex46(Growth g = Growth::Linear) {
    const Ambient S = Ambient::symbolic();
    const Sequence a = growth_sequence(g);
    const Subspace phi = Subspace::phi(S);
    const Subspace A(S, {a, a * a}, true);
    const Subspace Pa(S, {a}, true);
    PartialStarAlgebra alg(A, RectangleRelation(A, {{Pa, Pa}, {A, phi}, {phi, A}}), ProductRule::pointwise(), 6);
    Model M;
    M.name = "ex46";
    M.weight = BWeight{alg, phi, RectangleRelation(A, {{A, phi}, {phi, A}}), PairingRule::sum()};
    M.elements["a"] = a;
    M.queries = {"pi(a) star pi(a)", "pi(a) bullet pi(a)", "pi(a) circ pi(a)", "id bullet pi(a)", "pi(e[2]) circ pi(e[2])"};
    return M;
}

/// Desk variant of the unbounded multiplier on l2: u = 2^-n is square summable, x = 4^n is not, and
/// x u = 2^n escapes V.
inline Model desk_ex2() {
    const Ambient S = Ambient::symbolic();
    const Sequence u = detail::geometric(Scalar(Rational(1, 2)));
    const Sequence x = detail::geometric(Scalar(4));
    const Subspace phi = Subspace::phi(S);
    const Subspace A(S, {u, x}, true);
    const Subspace Pu(S, {u}, true);
    PartialStarAlgebra alg(A, RectangleRelation(A, {{A, phi}, {phi, A}}), ProductRule::pointwise(), 6);
    Model M;
    M.name = "desk-ex2";
    M.weight = BWeight{alg, phi, RectangleRelation(A, {{Pu, Pu}, {Pu, phi}, {phi, Pu}}), PairingRule::sum()};
    M.elements["u"] = u;
    M.elements["x"] = x;
    M.queries = {"|u><u| circ |u><u|", "|u><u| star |u><u|"};
    return M;
}

/// The discretized step-function data run through the functional construction with D = B.
inline Model prop2_demo(int m = 4) {
    Model base = ex24(m);
    BuildResult r = build_from_functional(base.algebra(), base.weight.B, *base.functional);
    if (!r.weight) throw Error("functional construction failed on the step-function data:\n" + r.report.text());
    base.name = "prop2-demo";
    base.weight = *r.weight;
    return base;
}

inline std::vector<std::string> names() { return {"ex24", "ex25", "ex45", "ex46", "desk-ex2", "prop2-demo"}; }

inline Model by_name(const std::string& name) {
    if (name == "ex24") return ex24();
    if (name == "ex25") return ex25();
    if (name == "ex45") return ex45();
    if (name == "ex46") return ex46();
    if (name == "desk-ex2") return desk_ex2();
    if (name == "prop2-demo") return prop2_demo();
    throw Error("unknown corpus entry '" + name + "'");
}

}  // namespace pipgns::corpus
