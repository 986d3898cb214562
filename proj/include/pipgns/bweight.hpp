#pragma once

#include "pipgns/algebra.hpp"
#include "pipgns/pairing.hpp"
#include "pipgns/representability.hpp"

#include <set>
#include <string>
#include <vector>

namespace pipgns {

/// (B, sharp, Omega) over a partial *-algebra.
struct BWeight {
    PartialStarAlgebra algebra;
    Subspace B;
    RectangleRelation sharp;
    PairingRule omega;

    const Ambient& ambient() const { return algebra.ambient(); }

    /// M^sharp = {y ; x sharp y for all x in M}.
    Subspace sharp_partner(const Subspace& M) const {
        auto r = sharp.right_partner(M);
        if (!r) throw Error("an element of " + M.to_string() + " has no sharp partner");
        return *r;
    }
    Subspace B_sharp() const { return sharp_partner(B); }

    SeriesValue pair(const Sequence& x, const Sequence& y) const { return omega.eval(x, y); }

    std::vector<Sequence> probes(const Subspace& s) const { return algebra.probes(s); }
};

/// Checks definedness and hermiticity of Omega on the sharp rectangles and conditions (i)-(iv).
inline Report check_bweight(const BWeight& W) {
    Report rep;
    const auto& A = W.algebra;
    const Ambient& amb = W.ambient();
    auto sh = [&](const Sequence& s) { return amb.render(s); };

    if (auto f = W.sharp.chain_failure()) {
        rep.add("sharp-chain", false, f->describe(amb), sh(f->witness));
        return rep;
    }
    bool sym = true;
    std::string wsym;
    for (std::size_t i = 0; i < W.sharp.rects().size(); ++i) {
        const auto& r = W.sharp.rects()[i];
        if (sym && !W.sharp.contains_rectangle(r.right, r.left)) {
            sym = false;
            wsym = "rectangle #" + std::to_string(i) + " has no mirror";
        }
    }
    rep.add("sharp-symmetric", sym, {}, wsym);

    bool defined = true, herm = true;
    std::string wdef, wherm;
    for (const auto& r : W.sharp.rects())
        for (const auto& x : W.probes(r.left))
            for (const auto& y : W.probes(r.right)) {
                SeriesValue a = W.pair(x, y), b = W.pair(y, x);
                if (!a.ok()) {
                    if (defined) wdef = "Omega(" + sh(x) + ", " + sh(y) + "): " + a.reason;
                    defined = false;
                    continue;
                }
                if (b.ok() && herm && a.value != b.value.conj()) {
                    herm = false;
                    wherm = "Omega(" + sh(x) + ", " + sh(y) + ") = " + a.value.to_string() + ", Omega(" + sh(y) + ", " +
                            sh(x) + ") = " + b.value.to_string();
                }
            }
    rep.add("pairing-defined", defined, "Omega finite on sharp rectangle generators", wdef);
    rep.add("hermitian", herm, "Omega(x,y) = conj Omega(y,x)", wherm);
    if (!defined) return rep;

    Subspace RA;
    try {
        RA = A.right_multipliers(A.carrier());
    } catch (const Error& e) {
        rep.add("B-in-R(A)", false, e.what());
        return rep;
    }
    bool b_in = RA.contains(W.B);
    rep.add("B-in-R(A)", b_in, "R(A) = " + RA.to_string());
    if (!b_in) return rep;

    Subspace AB = A.product_span(A.carrier(), W.B);
    bool i1 = W.sharp.contains_rectangle(W.B, W.B);
    bool i2 = W.sharp.contains_rectangle(AB, W.B);
    rep.add("i", i1 && i2, "B x B and AB x B inside sharp",
            i1 ? (i2 ? "" : "AB = " + AB.to_string()) : "B = " + W.B.to_string());

    bool ii = true;
    std::string wii;
    auto bs = W.probes(W.B);
    for (const auto& x : A.probes(A.carrier()))
        for (const auto& b1 : bs)
            for (const auto& b2 : bs) {
                if (!ii) break;
                SeriesValue l = W.pair(A.formal_product(x, b1), b2);
                SeriesValue r = W.pair(b1, A.formal_product(PartialStarAlgebra::star(x), b2));
                if (!l.ok() || !r.ok() || l.value != r.value) {
                    ii = false;
                    wii = "(x, b1, b2) = " + render_triple(A, x, b1, b2);
                }
            }
    rep.add("ii", ii, "Omega(xb1, b2) = Omega(b1, x*b2)", wii);

    bool iii = true;
    std::string wiii;
    for (const auto& g : A.gamma().rects()) {
        if (!iii) break;
        Subspace left = A.product_span(g.right, W.B);
        Subspace right = A.product_span(PartialStarAlgebra::star(g.left), W.B);
        if (!W.sharp.contains_rectangle(left, right)) {
            iii = false;
            wiii = "span(T B) x span(S* B) not in sharp for Gamma rectangle " + g.left.to_string() + " x " + g.right.to_string();
            break;
        }
        for (const auto& x2 : A.probes(g.left))
            for (const auto& x1 : A.probes(g.right))
                for (const auto& b1 : bs)
                    for (const auto& b2 : bs) {
                        if (!iii) break;
                        SeriesValue l = W.pair(A.formal_product(x1, b1), A.formal_product(PartialStarAlgebra::star(x2), b2));
                        SeriesValue r = W.pair(A.formal_product(A.formal_product(x2, x1), b1), b2);
                        if (!l.ok() || !r.ok() || l.value != r.value) {
                            iii = false;
                            wiii = "x2 = " + sh(x2) + ", x1 = " + sh(x1) + ", b1 = " + sh(b1) + ", b2 = " + sh(b2);
                        }
                    }
    }
    rep.add("iii", iii, "Omega(x1b1, x2*b2) = Omega((x2x1)b1, b2) for x1 in R({x2})", wiii);

    try {
        Subspace K = annihilator(W.omega, W.B, W.B);
        Subspace Bs = W.B_sharp();
        Subspace K2 = annihilator(W.omega, K, Bs);
        bool iv = K2 == K;
        std::string wiv;
        if (!iv)
            for (const auto& k : K.probe_generators(A.probe_bound()))
                if (!K2.contains(k)) {
                    wiv = sh(k) + " pairs to 0 with B but not with B#";
                    break;
                }
        rep.add("iv", iv, "ann(B) = " + K.to_string(), wiv);
    } catch (const UnsupportedError& e) {
        rep.add("iv", false, std::string("undecided: ") + e.what());
    }
    return rep;
}

/// Is b -> Omega(xb, w) continuous for the topology of the pair (B, B#)? On success y in B# with
/// Omega(xb, w) = Omega(b, y) for every b in B.
inline Representation functional_continuity_check(const BWeight& W, const Sequence& x, const Sequence& w) {
    const auto& A = W.algebra;
    Functional F;
    F.at = [&](const Sequence& b) {
        return pairing_value(W.omega, A.formal_product(x, b), w).conj();
    };
    if (W.B.has_phi()) {
        auto m = W.omega.phi_multiplier();
        if (m) F.phi_values = m->conj() * w * x.conj();
    }
    Representation r = representability_solve(W.omega, F, W.B, W.B_sharp());
    return r;
}

/// Coordinate data of the functional: D is the span of e_i for i in coords.
struct FunctionalData {
    std::vector<int> coords;
    std::vector<Scalar> weights;  // one positive weight per coordinate of D
};

struct BuildResult {
    std::optional<BWeight> weight;
    Report report;
    std::optional<TripleWitness> semi;
};

/// B-weight induced by omega(v) = sum_{i in D} nu_i v_i: x sharp y iff (y*, x) in Gamma and y*x in D.
inline BuildResult build_from_functional(const PartialStarAlgebra& A, const Subspace& B, const FunctionalData& f) {
    BuildResult out;
    Report& rep = out.report;
    const Ambient& amb = A.ambient();
    Report sa = semi_associativity_check(A, &out.semi);
    rep.append(sa);
    if (!sa.ok()) return out;
    if (!amb.is_finite() || A.rule().kind != ProductRule::Kind::Pointwise)
        throw UnsupportedError("functional construction needs a finite pointwise algebra");
    const int d = amb.dim;
    if (f.coords.size() != f.weights.size()) throw Error("one weight per coordinate of D");
    std::set<int> Dset;
    for (int c : f.coords) {
        if (c < 1 || c > d) throw Error("coordinate of D outside 1.." + std::to_string(d));
        Dset.insert(c);
    }
    std::vector<int> Dc;
    for (int k = 1; k <= d; ++k)
        if (!Dset.count(k)) Dc.push_back(k);
    if (Dc.size() > 12) throw UnsupportedError("too many coordinates outside D");

    std::vector<Scalar> nu(d, Scalar(0));
    bool real_pos = true;
    for (std::size_t k = 0; k < f.coords.size(); ++k) {
        nu[f.coords[k] - 1] = f.weights[k];
        if (!(f.weights[k].im() == 0) || f.weights[k].re() <= 0) real_pos = false;
    }
    const Sequence nuD = Sequence::finite(nu);
    std::vector<Sequence> dgens;
    for (int c : Dset) dgens.push_back(Sequence::unit(c));
    const Subspace D(amb, dgens);

    Subspace RA = A.right_multipliers(A.carrier());
    rep.add("B-in-R(A)", RA.contains(B), "R(A) = " + RA.to_string());
    rep.add("hyp-i", real_pos, "D = D* and omega(v*) = conj omega(v)");

    Subspace AB = A.product_span(A.carrier(), B);
    Subspace BB = A.product_span(B.conj(), B), BAB = A.product_span(B.conj(), AB);
    bool h2 = D.contains(BB) && D.contains(BAB);
    rep.add("hyp-ii", h2, "B*B and B*(AB) inside D", h2 ? "" : (D.contains(BB) ? BAB : BB).to_string());

    PairingRule omega = PairingRule::sum(nuD);
    Subspace K3 = annihilator(omega, B, B);
    std::vector<Sequence> bp;
    for (int k = 1; k <= d; ++k) {
        bool blocked = false;
        if (!Dset.count(k))
            for (const auto& b : B.basis()) blocked = blocked || !b.at(k).is_zero();
        if (!blocked) bp.push_back(Sequence::unit(k));
    }
    const Subspace Bprime(amb, bp);
    bool h3 = true;
    std::string w3;
    for (const auto& x : K3.basis())
        for (const auto& y : Bprime.basis())
            if (h3 && !pairing_value(omega, x, y).is_zero()) {
                h3 = false;
                w3 = "x = " + amb.render(x) + ", y = " + amb.render(y);
            }
    rep.add("hyp-iii", h3, "omega(y*x) = 0 for x in K, y in B' = " + Bprime.to_string(), w3);
    if (!rep.ok()) return out;

    std::vector<Rect> rects;
    auto coord_zero = [&](const std::vector<int>& idx) {
        std::vector<Vec> rows;
        for (int k = 1; k <= d; ++k)
            if (std::find(idx.begin(), idx.end(), k) == idx.end()) {
                Vec v(d, Scalar(0));
                v[k - 1] = Scalar(1);
                rows.push_back(v);
            }
        std::vector<Sequence> g;
        for (auto& r : rows) g.push_back(Sequence::finite(r));
        return Subspace(amb, g);
    };
    const std::size_t subsets = std::size_t(1) << Dc.size();
    for (const auto& g : A.gamma().rects()) {
        for (std::size_t mask = 0; mask < subsets; ++mask) {
            std::vector<int> T, rest;
            for (std::size_t k = 0; k < Dc.size(); ++k) (mask >> k & 1 ? T : rest).push_back(Dc[k]);
            Rect r{intersect(g.right, coord_zero(T)), intersect(g.left.conj(), coord_zero(rest))};
            bool dup = false;
            for (const auto& q : rects) dup = dup || (q.left.contains(r.left) && q.right.contains(r.right));
            if (!dup) rects.push_back(std::move(r));
        }
    }
    out.weight = BWeight{A, B, RectangleRelation(A.carrier(), std::move(rects)), omega};
    return out;
}

}  // namespace pipgns
