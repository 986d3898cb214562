#pragma once

#include "pipgns/bweight.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace pipgns {

/// N1 = {x in B## ; Omega(x, B#) = 0}, N2 = {x in B# ; Omega(x, B##) = 0}, Ngns = {x in B# ; Omega(x, B) = 0}.
struct Degeneracy {
    Subspace Bs, Bss;
    Subspace N1, N2, Ngns;
};

inline Degeneracy compute_degeneracy_spaces(const BWeight& W) {
    Degeneracy d;
    d.Bs = W.B_sharp();
    d.Bss = W.sharp_partner(d.Bs);
    d.N1 = annihilator(W.omega, d.Bss, d.Bs);
    d.N2 = annihilator(W.omega, d.Bs, d.Bss);
    d.Ngns = annihilator(W.omega, d.Bs, W.B);
    return d;
}

/// Finite-dimensional null space N inside a base space, with a canonical coset representative.
class Quotient {
public:
    Quotient() = default;
    Quotient(Subspace base, Subspace null) : base_(std::move(base)), null_(std::move(null)) {
        if (null_.has_phi()) throw UnsupportedError("quotient by an infinite-dimensional null space " + null_.to_string());
        if (!base_.contains(null_)) throw Error("null space is not inside the base space");
        const auto& ns = null_.basis();
        if (ns.empty()) return;
        long L = 1;
        for (const auto& n : ns) L = std::max(L, n.max_index());
        for (;; L += 4) {
            Matrix M(ns.size(), static_cast<std::size_t>(L));
            for (std::size_t j = 0; j < ns.size(); ++j)
                for (long i = 1; i <= L; ++i) M(j, static_cast<std::size_t>(i - 1)) = ns[j].at(i);
            Rref r = rref(M);
            if (r.rank() == ns.size()) {
                const std::size_t k = ns.size();
                Matrix P(k, k);
                for (std::size_t l = 0; l < k; ++l)
                    for (std::size_t j = 0; j < k; ++j) P(l, j) = ns[j].at(static_cast<long>(r.pivots[l]) + 1);
                for (std::size_t i = 0; i < k; ++i) {
                    Vec e(k);
                    e[i] = Scalar(1);
                    Vec c = *solve(P, e);
                    pivots_.push_back(static_cast<long>(r.pivots[i]) + 1);
                    reduced_.push_back(combine(ns, c));
                }
                return;
            }
            if (L > 4096) throw Error("null space basis is not independent on sampled indices");
        }
    }

    const Subspace& base() const { return base_; }
    const Subspace& null() const { return null_; }

    /// The representative vanishing at the pivot indices of N.
    Sequence reduce(const Sequence& x) const {
        Sequence out = x;
        for (std::size_t j = 0; j < reduced_.size(); ++j) {
            Scalar c = x.at(pivots_[j]);
            if (!c.is_zero()) out = out - reduced_[j] * c;
        }
        return out;
    }
    bool same_coset(const Sequence& x, const Sequence& y) const { return null_.contains(x - y); }
    std::size_t null_dim() const { return reduced_.size(); }

private:
    Subspace base_, null_;
    std::vector<long> pivots_;
    std::vector<Sequence> reduced_;
};

/// V = B#/N with the induced compatibility and pairing. Subspaces of V are stored as preimages in B#.
class PipSpace {
public:
    PipSpace(BWeight W, Degeneracy d, Subspace N) : W_(std::move(W)), deg_(std::move(d)), q_(deg_.Bs, N) {
        vsharp_ = sharp_of(deg_.Bs);
        build_lattice();
    }

    const BWeight& weight() const { return W_; }
    const Degeneracy& degeneracy() const { return deg_; }
    const Quotient& quotient() const { return q_; }
    const Subspace& V() const { return deg_.Bs; }
    const Subspace& Vsharp() const { return vsharp_; }
    const Subspace& N() const { return q_.null(); }
    const std::vector<Subspace>& lattice() const { return lattice_; }
    const Ambient& ambient() const { return W_.ambient(); }
    const PairingRule& omega() const { return W_.omega; }
    long probe_bound() const { return W_.algebra.probe_bound(); }

    /// X^# inside V for a preimage X.
    Subspace sharp_of(const Subspace& X) const { return intersect(W_.sharp_partner(X), deg_.Bs); }

    bool compatible(const Sequence& x, const Sequence& y) const { return W_.sharp.related(x, y); }
    SeriesValue pair(const Sequence& x, const Sequence& y) const { return W_.omega.eval(x, y); }
    Scalar pair_value(const Sequence& x, const Sequence& y) const { return pairing_value(W_.omega, x, y); }

    std::vector<Sequence> probes(const Subspace& X) const { return X.probe_generators(probe_bound()); }
    std::string render(const Sequence& x) const { return ambient().render(q_.reduce(x)); }
    std::string render(const Subspace& X) const {
        if (N().is_zero()) return X.to_string();
        std::vector<Sequence> g;
        for (const auto& b : X.basis()) g.push_back(q_.reduce(b));
        Subspace r(ambient(), g, X.has_phi());
        return r.to_string() + " + N";
    }
    bool is_lattice_member(const Subspace& X) const {
        return std::find(lattice_.begin(), lattice_.end(), X) != lattice_.end();
    }

    /// {v in V ; <v, psi> = 0 for all psi in V#}, as a preimage; equals N when non-degenerate.
    Subspace radical() const { return annihilator(W_.omega, deg_.Bs, vsharp_); }

private:
    void build_lattice() {
        std::vector<Subspace> gens{deg_.Bs};
        for (const auto* c : W_.sharp.cells_meeting(deg_.Bs, true)) {
            if (!c->max) throw Error("sharp violates the chain condition");
            gens.push_back(intersect(W_.sharp.opposite(*c, true), deg_.Bs));
        }
        auto add = [&](const Subspace& s) {
            if (std::find(lattice_.begin(), lattice_.end(), s) != lattice_.end()) return false;
            lattice_.push_back(s);
            return true;
        };
        for (const auto& g : gens) add(g);
        add(vsharp_);
        for (bool grew = true; grew;) {
            grew = false;
            std::size_t n = lattice_.size();
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b) grew = add(intersect(lattice_[a], lattice_[b])) || grew;
        }
        std::stable_sort(lattice_.begin(), lattice_.end(), [](const Subspace& x, const Subspace& y) {
            if (x.has_phi() != y.has_phi()) return x.has_phi();
            return x.rank() > y.rank();
        });
    }

    BWeight W_;
    Degeneracy deg_;
    Quotient q_;
    Subspace vsharp_;
    std::vector<Subspace> lattice_;
};

struct PipBuild {
    std::optional<PipSpace> space;
    Degeneracy deg;
    Report report;
};

/// Builds V = B#/N for N = N1 = N2, or reports why the criterion or the quotient fails.
inline PipBuild pip_build(const BWeight& W, std::optional<Subspace> forced_null = std::nullopt) {
    PipBuild out;
    out.deg = compute_degeneracy_spaces(W);
    const Degeneracy& d = out.deg;
    Report& rep = out.report;
    Subspace N = d.N1;
    if (forced_null) {
        N = *forced_null;
        rep.add("null-space", true, "N = " + N.to_string() + " (given)");
    } else {
        bool eq = d.N1 == d.N2;
        std::string wit;
        if (!eq) {
            for (const auto& g : d.N2.probe_generators(W.algebra.probe_bound()))
                if (!d.N1.contains(g)) {
                    wit = W.ambient().render(g) + " in N2 but not in N1";
                    break;
                }
            if (wit.empty())
                for (const auto& g : d.N1.probe_generators(W.algebra.probe_bound()))
                    if (!d.N2.contains(g)) {
                        wit = W.ambient().render(g) + " in N1 but not in N2";
                        break;
                    }
        }
        rep.add("criterion", eq, "N1 = " + d.N1.to_string() + ", N2 = " + d.N2.to_string(), wit);
        if (!eq) return out;
    }
    try {
        out.space.emplace(W, d, N);
    } catch (const UnsupportedError& e) {
        rep.add("quotient", false, e.what());
        return out;
    }
    const PipSpace& P = *out.space;
    rep.add("quotient", true, "V = " + d.Bs.to_string() + " modulo " + N.to_string());
    Subspace rad = P.radical();
    bool nondeg = rad == N;
    std::string wrad;
    if (!nondeg)
        for (const auto& g : rad.probe_generators(P.probe_bound()))
            if (!N.contains(g)) {
                wrad = P.render(g);
                break;
            }
    rep.add("non-degenerate", nondeg, "V# = " + P.render(P.Vsharp()), wrad);

    bool lawful = true;
    std::string wl;
    for (const auto& n : N.basis())
        for (const auto& r : W.sharp.rects())
            for (const auto& x : P.probes(intersect(r.left, d.Bs)))
                for (const auto& y : P.probes(intersect(r.right, d.Bs))) {
                    if (!lawful) break;
                    if (!P.compatible(x + n, y) || !P.pair(x + n, y).ok() || P.pair_value(x + n, y) != P.pair_value(x, y)) {
                        lawful = false;
                        wl = "x = " + W.ambient().render(x) + ", n = " + W.ambient().render(n);
                    }
                }
    rep.add("coset-independence", lawful, "# and <.,.> independent of representatives", wl);

    std::string lat;
    for (const auto& s : P.lattice()) lat += (lat.empty() ? "" : "; ") + P.render(s);
    rep.add("lattice", true, std::to_string(P.lattice().size()) + " assaying subspaces: " + lat);
    return out;
}

/// Polar of the image of B in V: pass iff it is {0}.
inline Check density_check(const PipSpace& P) {
    Subspace polar = annihilator(P.omega(), P.V(), P.weight().B + P.N());
    if (polar == P.N()) return {"density", true, "polar of B in V is {0}", {}};
    std::string wit;
    for (const auto& g : polar.probe_generators(P.probe_bound()))
        if (!P.N().contains(g)) {
            wit = P.render(g);
            break;
        }
    return {"density", false, "polar of B in V is " + P.render(polar), wit};
}

}  // namespace pipgns
