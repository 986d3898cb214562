#pragma once

#include "pipgns/rectangles.hpp"
#include "pipgns/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace pipgns {

/// Total bilinear rule used on the pairs of Gamma: pointwise, or structure constants e_i e_j = sum c e_k.
struct ProductRule {
    struct Entry {
        int i, j, k;
        Scalar c;
    };
    enum class Kind { Pointwise, Structure };
    Kind kind = Kind::Pointwise;
    std::vector<Entry> table;

    static ProductRule pointwise() { return {Kind::Pointwise, {}}; }
    static ProductRule structure(std::vector<Entry> t) { return {Kind::Structure, std::move(t)}; }

    Sequence apply(const Sequence& x, const Sequence& y) const {
        if (kind == Kind::Pointwise) return x * y;
        std::map<long, Scalar> out;
        for (const auto& e : table) {
            Scalar v = x.at(e.i) * y.at(e.j);
            if (!v.is_zero()) out[e.k] += e.c * v;
        }
        return Sequence(std::move(out), {});
    }
    bool associative_by_construction() const { return kind == Kind::Pointwise; }
};

/// Product witness carried by NotComposable.
struct ProductResult {
    std::optional<Sequence> value;
    std::string reason;
    bool ok() const { return value.has_value(); }
};

class PartialStarAlgebra {
public:
    PartialStarAlgebra() = default;
    PartialStarAlgebra(Subspace carrier, RectangleRelation gamma, ProductRule rule, long probe_bound)
        : carrier_(std::move(carrier)), gamma_(std::move(gamma)), rule_(std::move(rule)), K_(probe_bound) {
        if (!carrier_.ambient().is_finite() && rule_.kind != ProductRule::Kind::Pointwise)
            throw Error("symbolic carriers need the pointwise product");
    }

    const Subspace& carrier() const { return carrier_; }
    const RectangleRelation& gamma() const { return gamma_; }
    const ProductRule& rule() const { return rule_; }
    const Ambient& ambient() const { return carrier_.ambient(); }
    long probe_bound() const { return K_; }

    static Sequence star(const Sequence& x) { return x.conj(); }
    static Subspace star(const Subspace& s) { return s.conj(); }

    Sequence formal_product(const Sequence& x, const Sequence& y) const { return rule_.apply(x, y); }

    ProductResult product(const Sequence& x, const Sequence& y) const {
        if (!carrier_.contains(x) || !carrier_.contains(y)) return {std::nullopt, "factor outside the carrier"};
        if (!gamma_.related(x, y))
            return {std::nullopt, "(" + render(x) + ", " + render(y) + ") lies in no rectangle of Gamma"};
        return {formal_product(x, y), {}};
    }

    /// R(N) = {x ; (y, x) in Gamma for all y in N}.
    Subspace right_multipliers(const Subspace& N) const {
        auto r = gamma_.right_partner(N);
        if (!r) throw Error("an element of " + N.to_string() + " has no right partner in Gamma");
        return *r;
    }
    Subspace left_multipliers(const Subspace& N) const {
        auto r = gamma_.left_partner(N);
        if (!r) throw Error("an element of " + N.to_string() + " has no left partner in Gamma");
        return *r;
    }
    Subspace right_multipliers_of(const Sequence& y) const { return right_multipliers(Subspace(ambient(), {y})); }

    /// span{xy ; x in X, y in Y} under the formal product.
    Subspace product_span(const Subspace& X, const Subspace& Y) const {
        std::vector<Sequence> gens;
        bool phi = false;
        if (rule_.kind == ProductRule::Kind::Pointwise) {
            auto reach = [&](const Subspace& A, const Subspace& B) {
                if (!A.has_phi()) return;
                if (B.has_phi()) {
                    phi = true;
                    return;
                }
                for (const auto& b : B.basis())
                    if (!b.eventually_zero()) phi = true;
                if (!phi)
                    for (const auto& b : B.basis())
                        for (const auto& [k, v] : b.correction()) gens.push_back(Sequence::unit(k));
            };
            reach(X, Y);
            reach(Y, X);
            for (const auto& x : X.basis())
                for (const auto& y : Y.basis()) gens.push_back(x * y);
        } else {
            for (const auto& x : X.basis())
                for (const auto& y : Y.basis()) gens.push_back(formal_product(x, y));
        }
        return Subspace(ambient(), gens, phi);
    }

    std::string render(const Sequence& s) const { return ambient().render(s); }

    std::vector<Sequence> probes(const Subspace& s) const { return s.probe_generators(K_); }

private:
    Subspace carrier_;
    RectangleRelation gamma_;
    ProductRule rule_;
    long K_ = 6;
};

inline std::string render_triple(const PartialStarAlgebra& A, const Sequence& a, const Sequence& b, const Sequence& c) {
    return "(" + A.render(a) + ", " + A.render(b) + ", " + A.render(c) + ")";
}

/// Axioms of a partial *-algebra, each with a witness on failure.
inline Report validate_algebra(const PartialStarAlgebra& A) {
    Report rep;
    const auto& G = A.gamma();

    if (auto f = G.chain_failure())
        rep.add("chain-condition", false, f->describe(A.ambient()), A.render(f->witness));
    else
        rep.add("chain-condition", true, std::to_string(G.rects().size()) + " rectangles");

    bool closed = true;
    std::string wit;
    for (std::size_t i = 0; i < G.rects().size() && closed; ++i) {
        const auto& r = G.rects()[i];
        if (!G.contains_rectangle(PartialStarAlgebra::star(r.right), PartialStarAlgebra::star(r.left))) {
            closed = false;
            wit = "rectangle #" + std::to_string(i) + " (" + r.left.to_string() + ") x (" + r.right.to_string() + ")";
        }
    }
    rep.add("involution-closure", closed, closed ? "(x,y) in Gamma implies (y*,x*) in Gamma" : "mirror rectangle missing", wit);

    rep.add("distributivity", true, "product rule is bilinear on every rectangle");
    rep.add("overlap-consistency", true, "one product rule serves all rectangles");

    bool in_carrier = true, anti = true;
    std::string wc, wa;
    for (const auto& r : G.rects()) {
        auto xs = A.probes(r.left), ys = A.probes(r.right);
        for (const auto& x : xs)
            for (const auto& y : ys) {
                Sequence xy = A.formal_product(x, y);
                if (in_carrier && !A.carrier().contains(xy)) {
                    in_carrier = false;
                    wc = "(" + A.render(x) + ")(" + A.render(y) + ") = " + A.render(xy);
                }
                if (anti && PartialStarAlgebra::star(xy) != A.formal_product(PartialStarAlgebra::star(y), PartialStarAlgebra::star(x))) {
                    anti = false;
                    wa = "x = " + A.render(x) + ", y = " + A.render(y);
                }
            }
    }
    rep.add("product-in-carrier", in_carrier, {}, wc);
    rep.add("star-antihomomorphism", anti, "(xy)* = y*x* on rectangle generators", wa);
    return rep;
}

struct TripleWitness {
    Sequence y, x, b;
    Sequence lhs, rhs;
};

/// Semi-associativity: x in R({y}) implies xb in R({y}) and y(xb) = (yx)b for b in R(A).
inline Report semi_associativity_check(const PartialStarAlgebra& A, std::optional<TripleWitness>* out = nullptr) {
    Report rep;
    const auto& G = A.gamma();
    Subspace RA = A.right_multipliers(A.carrier());
    auto rb = A.probes(RA);
    for (const auto& cell : G.cells(true)) {
        if (cell.rects.empty()) continue;
        if (!cell.max) {
            rep.add("semi-associativity", false, "chain condition fails", cell.P.to_string());
            return rep;
        }
        const Subspace& Ry = G.opposite(cell, true);
        Subspace moved = A.product_span(Ry, RA);
        if (!Ry.contains(moved)) {
            rep.add("semi-associativity", false, "R({y})R(A) leaves R({y}) for y in cell " + cell.P.to_string(), moved.to_string());
            return rep;
        }
        for (const auto& y : A.probes(cell.P))
            for (const auto& x : A.probes(Ry))
                for (const auto& b : rb) {
                    Sequence lhs = A.formal_product(y, A.formal_product(x, b));
                    Sequence rhs = A.formal_product(A.formal_product(y, x), b);
                    if (lhs != rhs) {
                        if (out) *out = TripleWitness{y, x, b, lhs, rhs};
                        rep.add("semi-associativity", false,
                                "y(xb) = " + A.render(lhs) + " but (yx)b = " + A.render(rhs),
                                "(y, x, b) = " + render_triple(A, y, x, b));
                        return rep;
                    }
                }
    }
    rep.add("semi-associativity", true, "R(A) = " + RA.to_string());
    return rep;
}

/// Searches generator triples with all four products composable for (xy)z != x(yz).
inline std::optional<TripleWitness> associativity_counterexample(const PartialStarAlgebra& A) {
    std::vector<Sequence> gens;
    for (const auto& r : A.gamma().rects()) {
        for (const auto& g : A.probes(r.left)) gens.push_back(g);
        for (const auto& g : A.probes(r.right)) gens.push_back(g);
    }
    std::vector<Sequence> uniq;
    for (auto& g : gens)
        if (std::find(uniq.begin(), uniq.end(), g) == uniq.end()) uniq.push_back(g);
    for (const auto& x : uniq)
        for (const auto& y : uniq) {
            auto xy = A.product(x, y);
            if (!xy.ok()) continue;
            for (const auto& z : uniq) {
                auto yz = A.product(y, z);
                if (!yz.ok()) continue;
                auto l = A.product(*xy.value, z), r = A.product(x, *yz.value);
                if (l.ok() && r.ok() && *l.value != *r.value) return TripleWitness{x, y, z, *l.value, *r.value};
            }
        }
    return std::nullopt;
}

/// xy = yx on generator pairs composable both ways.
inline bool commutative_on_generators(const PartialStarAlgebra& A) {
    for (const auto& r : A.gamma().rects())
        for (const auto& x : A.probes(r.left))
            for (const auto& y : A.probes(r.right))
                if (A.gamma().related(y, x) && A.formal_product(x, y) != A.formal_product(y, x)) return false;
    return true;
}

}  // namespace pipgns
