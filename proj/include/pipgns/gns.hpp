#pragma once

#include "pipgns/products.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pipgns {

enum class ProductMode { Star, Bullet, Circ };

inline std::string mode_name(ProductMode m) {
    switch (m) {
        case ProductMode::Star: return "star";
        case ProductMode::Bullet: return "bullet";
        case ProductMode::Circ: return "circ";
    }
    return "?";
}

inline ProductMode parse_product_mode(const std::string& s) {
    if (s == "star") return ProductMode::Star;
    if (s == "bullet") return ProductMode::Bullet;
    if (s == "circ") return ProductMode::Circ;
    throw Error("product mode must be one of star, bullet, circ");
}

inline const std::array<const char*, 8>& gns_stage_names() {
    static const std::array<const char*, 8> n = {"axioms",    "criterion", "pip-build", "density",
                                                 "invariance", "extension", "involution", "products"};
    return n;
}

struct GnsReport {
    Report report;
    std::optional<int> failed_stage;

    int exit_code() const { return failed_stage ? 10 + *failed_stage : 0; }
    std::string failed_stage_name() const { return failed_stage ? gns_stage_names()[*failed_stage] : "none"; }
};

struct GnsRepresentation {
    BWeight setup;
    PipSpace space;
    ProductMode mode;
    std::vector<std::pair<Sequence, PipOperator>> pi;
    bool bss_eq_b_plus_n = false;
    bool n_invariant = false;
    bool functional_continuity = false;
};

struct GnsOutcome {
    std::optional<GnsRepresentation> rep;
    GnsReport report;
};

struct HypothesisReport {
    Report report;
    bool moot = false;
    bool guaranteed = false;
};

namespace detail {

inline std::vector<Sequence> algebra_generators(const BWeight& W) { return W.algebra.probes(W.algebra.carrier()); }

/// First x n outside N over generators x and basis vectors n of N with (x, n) composable.
inline std::optional<std::string> invariance_witness(const BWeight& W, const Subspace& N) {
    const auto& A = W.algebra;
    for (const auto& x : algebra_generators(W))
        for (const auto& n : N.basis()) {
            if (!A.gamma().related(x, n)) continue;
            Sequence v = A.formal_product(x, n);
            if (!N.contains(v)) return A.render(x) + " * " + A.render(n) + " = " + A.render(v);
        }
    return std::nullopt;
}

inline std::string first_outside(const Subspace& big, const Subspace& small, long K, const Ambient& amb) {
    for (const auto& g : big.probe_generators(K))
        if (!small.contains(g)) return amb.render(g);
    return {};
}

}  // namespace detail

/// (a) B## = B + N and (b) continuity of b -> Omega(xb, w) for generators x and w in (xB)#.
inline HypothesisReport check_gns_hypotheses(const BWeight& W) {
    HypothesisReport out;
    const Degeneracy d = compute_degeneracy_spaces(W);
    const auto& A = W.algebra;
    const bool crit = d.Ngns == d.N1 && d.N1 == d.N2;
    if (!crit) {
        out.moot = true;
        out.report.add("criterion", false, "Ngns = N1 = N2 fails; hypotheses are moot",
                       "Ngns = " + d.Ngns.to_string() + ", N1 = " + d.N1.to_string() + ", N2 = " + d.N2.to_string());
        return out;
    }
    const Subspace BN = W.B + d.N1;
    const bool a = d.Bss == BN;
    out.report.add("(a)", a, "B## = " + d.Bss.to_string() + ", B + N = " + BN.to_string(),
                   a ? "" : detail::first_outside(d.Bss, BN, A.probe_bound(), A.ambient()));
    bool b = true;
    std::string wit;
    for (const auto& x : detail::algebra_generators(W)) {
        Subspace xB = A.product_span(Subspace(A.ambient(), {x}), W.B);
        for (const auto& w : W.probes(W.sharp_partner(xB))) {
            Representation r = functional_continuity_check(W, x, w);
            if (!r.ok()) {
                b = false;
                wit = "x = " + A.render(x) + ", w = " + A.render(w) + (r.unsupported ? " (undecided): " : ": ") + r.witness;
                break;
            }
        }
        if (!b) break;
    }
    out.report.add("(b)", b, "b -> Omega(xb, w) representable in B# for all generator pairs", wit);
    out.guaranteed = a && b;
    return out;
}

/// Stages axioms .. involution; the product stage runs in verify_representation.
inline GnsOutcome gns_build(const BWeight& W, ProductMode mode) {
    GnsOutcome out;
    GnsReport& G = out.report;
    Report& R = G.report;
    auto fail = [&](int stage) {
        G.failed_stage = stage;
        return out;
    };
    const auto& A = W.algebra;
    const Ambient amb = A.ambient();
    const long K = A.probe_bound();

    Report ax = validate_algebra(A);
    Report bw = check_bweight(W);
    std::string axw;
    for (const auto* rep : {&ax, &bw})
        for (const auto& c : rep->checks)
            if (!c.pass && axw.empty()) axw = c.name + (c.witness.empty() ? "" : ": " + c.witness);
    R.add("axioms", ax.ok() && bw.ok(), "partial *-algebra and B-weight axioms", axw);
    if (!ax.ok() || !bw.ok()) return fail(0);

    const Degeneracy d = compute_degeneracy_spaces(W);
    const bool crit = d.Ngns == d.N1 && d.N1 == d.N2;
    std::string cw;
    if (d.Ngns != d.N1) cw = detail::first_outside(d.Ngns, d.N1, K, amb) + " in Ngns but not in N1";
    else if (d.N1 != d.N2) cw = detail::first_outside(d.N2, d.N1, K, amb) + " in N2 but not in N1";
    R.add("criterion", crit,
          "Ngns = " + d.Ngns.to_string() + ", N1 = " + d.N1.to_string() + ", N2 = " + d.N2.to_string(), cw);
    if (!crit) {
        if (d.N1 == d.N2) {
            PipBuild pb = pip_build(W, d.N1);
            if (pb.space) {
                Check dc = density_check(*pb.space);
                R.add("criterion/density with N = N1", dc.pass, dc.detail, dc.witness);
            }
            auto iw = detail::invariance_witness(W, d.N1);
            R.add("criterion/invariance with N = N1", !iw, "x N1 inside N1", iw.value_or(""));
        }
        return fail(1);
    }

    PipBuild pb = pip_build(W);
    R.append(pb.report, "pip-build/");
    if (!pb.space || !pb.report.ok()) {
        R.add("pip-build", false, "PIP-space construction failed");
        return fail(2);
    }
    R.add("pip-build", true, "V = B#/N");
    const PipSpace& P = *pb.space;
    const Subspace& N = P.N();

    Check dc = density_check(P);
    R.add("density", dc.pass, dc.detail, dc.witness);
    if (!dc.pass) return fail(3);

    auto iw = detail::invariance_witness(W, N);
    R.add("invariance", !iw, "x N inside N for every generator x", iw.value_or(""));
    if (iw) return fail(4);

    const Subspace BN = W.B + N;
    const bool trivial = d.Bss == BN;
    std::string ew;
    bool extends = true;
    if (!trivial) {
        for (const auto& x : detail::algebra_generators(W))
            for (const auto& g : d.Bss.basis()) {
                if (BN.contains(g)) continue;
                Functional F;
                F.at = [&](const Sequence& b) { return pairing_value(W.omega, g, A.formal_product(x.conj(), b)); };
                if (W.B.has_phi()) {
                    auto pm = W.omega.phi_multiplier();
                    if (pm) F.phi_values = *pm * A.formal_product(x, g);
                }
                Representation rep;
                try {
                    rep = representability_solve(W.omega, F, W.B, d.Bs);
                } catch (const UnsupportedError& e) {
                    rep.unsupported = true;
                    rep.witness = e.what();
                }
                std::string msg;
                if (!rep.ok())
                    msg = "pi(" + A.render(x) + ") does not extend to " + A.render(g) + ": " + rep.witness;
                else if (!P.quotient().same_coset(*rep.vector, A.formal_product(x, g)))
                    msg = "extension of pi(" + A.render(x) + ") at " + A.render(g) + " differs from the product";
                if (!msg.empty()) {
                    extends = false;
                    ew += (ew.empty() ? "" : "; ") + msg;
                }
            }
        if (d.Bss.has_phi() && !BN.has_phi()) {
            extends = false;
            ew += (ew.empty() ? "" : "; ") + std::string("undecided: phi inside B## but not in B + N");
        }
    }
    R.add("extension", extends, trivial ? "B## = B + N, pi(x) is defined on all of V#" : "extension to B## beyond B + N", ew);
    if (!extends) return fail(5);

    std::vector<std::pair<Sequence, PipOperator>> pi;
    std::string vw;
    for (const auto& x : detail::algebra_generators(W)) {
        PipOperator T = PipOperator::multiplication(x);
        Report m = op_membership(P, T);
        if (!m.ok()) {
            for (const auto& c : m.checks)
                if (!c.pass && vw.empty()) vw = "pi(" + A.render(x) + ") " + c.name + ": " + c.witness;
        } else if (!op_equal(P, PipOperator::multiplication(x.conj()), op_adjoint(P, T))) {
            if (vw.empty()) vw = "pi(" + A.render(x) + "*) != pi(" + A.render(x) + ")*";
        }
        pi.emplace_back(x, T);
    }
    R.add("involution", vw.empty(), "pi(x) in Op(V) and pi(x*) = pi(x)* on generators", vw);
    if (!vw.empty()) return fail(6);

    HypothesisReport h = check_gns_hypotheses(W);
    out.rep.emplace(GnsRepresentation{W, P, mode, std::move(pi), trivial, true, h.report.find("(b)") && h.report.find("(b)")->pass});
    return out;
}

/// pi(xy) against the selected product of pi(x), pi(y) for composable generator pairs, with the status of all three.
inline Report verify_representation(const GnsRepresentation& Rp) {
    Report out;
    const PipSpace& P = Rp.space;
    const auto& A = Rp.setup.algebra;
    std::string iw;
    for (const auto& [x, T] : Rp.pi)
        if (!op_equal(P, PipOperator::multiplication(x.conj()), op_adjoint(P, T)) && iw.empty()) iw = A.render(x);
    out.add("involution", iw.empty(), "pi(x*) = pi(x)*", iw);
    for (const auto& [x, Tx] : Rp.pi)
        for (const auto& [y, Ty] : Rp.pi) {
            if (!A.gamma().related(x, y)) continue;
            const PipOperator Txy = PipOperator::multiplication(*A.product(x, y).value);
            auto verdict = [&](const ProductOutcome& o) {
                if (!o.ok()) return o.unsupported ? std::string("undecided") : std::string("undefined");
                return op_equal(P, *o.value, Txy) ? std::string("= pi(xy)") : std::string("!= pi(xy)");
            };
            std::string vc = verdict(product_circ(P, {Tx, Ty}));
            std::string vb = verdict(product_bullet(P, Tx, Ty));
            std::string vs = verdict(product_star(P, Tx, Ty));
            const std::string& chosen = Rp.mode == ProductMode::Circ ? vc : Rp.mode == ProductMode::Bullet ? vb : vs;
            out.add("pair (" + A.render(x) + ", " + A.render(y) + ")", chosen == "= pi(xy)",
                    "circ " + vc + ", bullet " + vb + ", star " + vs,
                    chosen == "= pi(xy)" ? "" : mode_name(Rp.mode) + " " + chosen);
        }
    return out;
}

/// gns_build followed by verify_representation as the product stage.
inline GnsOutcome gns_pipeline(const BWeight& W, ProductMode mode) {
    GnsOutcome out = gns_build(W, mode);
    if (!out.rep) return out;
    Report v = verify_representation(*out.rep);
    out.report.report.append(v, "products/");
    out.report.report.add("products", v.ok(), "pi(xy) = pi(x) " + mode_name(mode) + " pi(y) whenever y in R({x})");
    if (!v.ok()) out.report.failed_stage = 7;
    return out;
}

}  // namespace pipgns
