#pragma once

#include "pipgns/operators.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pipgns {

/// Weakly continuous extension S: X -> V of an operator, given on the generators of X beyond V#.
struct Extension {
    bool exists = false;
    bool unsupported = false;
    std::string condition;
    std::string witness;
    std::vector<std::pair<Sequence, Sequence>> values;
};

inline Extension continuous_extension_exists(const PipSpace& P, const PipOperator& T, const Subspace& X) {
    Extension out;
    const Subspace& Vs = P.Vsharp();
    if (!X.contains(Vs)) throw Error("extension domain " + X.to_string() + " does not contain V#");
    if (X == Vs) {
        out.exists = true;
        return out;
    }
    if (X.has_phi() && !Vs.has_phi()) {
        out.unsupported = true;
        out.witness = "extension to phi from a V# without phi";
        return out;
    }
    const PipOperator S = op_adjoint(P, T);
    std::string w;
    if (!image_contained(P, S, P.sharp_of(X), &w)) {
        out.condition = "(a)";
        out.witness = "adjoint: " + w + ", outside " + P.render(P.sharp_of(X));
        return out;
    }
    const Sequence m = detail::diagonal(T);
    for (const auto& x : X.basis()) {
        if (Vs.contains(x)) continue;
        Functional F;
        F.at = [&](const Sequence& psi) {
            return pairing_value(P.omega(), x, op_apply_checked(P, S, psi));
        };
        if (Vs.has_phi()) {
            const Sequence pm = detail::phi_mult(P);
            Sequence f = m * x;
            for (const auto& r : T.rank) {
                if ((pm * r.u).is_zero()) continue;
                SeriesValue v = P.pair(x, r.w);
                if (!v.ok()) {
                    out.unsupported = true;
                    out.witness = "<" + P.render(x) + ", " + P.render(r.w) + "> undefined";
                    return out;
                }
                f = f + r.u * v.value;
            }
            F.phi_values = pm * f;
        }
        Representation rep;
        try {
            rep = representability_solve(P.omega(), F, Vs, P.V());
        } catch (const UnsupportedError& e) {
            out.unsupported = true;
            out.witness = e.what();
            return out;
        }
        if (rep.unsupported) {
            out.unsupported = true;
            out.witness = rep.witness;
            return out;
        }
        if (!rep.ok()) {
            out.condition = "(b)";
            out.witness = "psi -> <" + P.render(x) + ", T* psi>: " + rep.witness;
            return out;
        }
        auto formal = op_apply(P, T, x);
        if (!formal || !P.quotient().same_coset(*formal, *rep.vector)) {
            out.unsupported = true;
            out.witness = "extension at " + P.render(x) + " differs from the formal action";
            return out;
        }
        out.values.emplace_back(x, *rep.vector);
    }
    out.exists = true;
    return out;
}

struct ProductOutcome {
    std::optional<PipOperator> value;
    bool unsupported = false;
    std::vector<Subspace> witness;
    Report report;
    bool ok() const { return value.has_value(); }
};

namespace detail {

inline std::string describe_extension(const Extension& e) {
    if (e.unsupported) return "undecided: " + e.witness;
    return "no continuous extension, condition " + e.condition + ": " + e.witness;
}

/// Decides whether T extends to a continuous map Eprev -> Enext; returns the failing reason.
inline std::optional<std::string> link_failure(const PipSpace& P, const PipOperator& T, const Subspace& Eprev,
                                               const Subspace& Enext, bool* undecided) {
    std::string w;
    Extension ext = continuous_extension_exists(P, T, Eprev);
    if (!ext.exists) {
        *undecided = *undecided || ext.unsupported;
        return "extension to " + P.render(Eprev) + ": " + describe_extension(ext);
    }
    if (!image_contained(P, T, Enext, &w)) return "image leaves " + P.render(Enext) + ": " + w;
    for (const auto& [x, sx] : ext.values)
        if (!Enext.contains(sx)) return "S " + P.render(x) + " = " + P.render(sx) + " leaves " + P.render(Enext);
    const PipOperator S = op_adjoint(P, T);
    const Subspace Gnext = P.sharp_of(Enext), Gprev = P.sharp_of(Eprev);
    Extension adj = continuous_extension_exists(P, S, Gnext);
    if (!adj.exists) {
        *undecided = *undecided || adj.unsupported;
        return "adjoint extension to " + P.render(Gnext) + ": " + describe_extension(adj);
    }
    if (!image_contained(P, S, Gprev, &w)) return "adjoint image leaves " + P.render(Gprev) + ": " + w;
    for (const auto& [y, sy] : adj.values)
        if (!Gprev.contains(sy)) return "S* " + P.render(y) + " = " + P.render(sy) + " leaves " + P.render(Gprev);
    for (const auto& [x, sx] : ext.values)
        for (const auto& [y, sy] : adj.values) {
            SeriesValue l = P.pair(sx, y), r = P.pair(x, sy);
            if (!l.ok() || !r.ok() || l.value != r.value)
                return "duality fails at (" + P.render(x) + ", " + P.render(y) + ")";
        }
    return std::nullopt;
}

}  // namespace detail

/// ops[0] o ops[1] o ... o ops[n-1], searched over chains V# = E0, E1, ..., En = V of the lattice,
/// smallest members first.
inline ProductOutcome product_circ(const PipSpace& P, const std::vector<PipOperator>& ops) {
    ProductOutcome out;
    const std::size_t n = ops.size();
    if (n < 2) throw Error("factorization product needs at least two operators");
    const auto& L = P.lattice();
    std::vector<std::size_t> idx(n - 1, 0);
    for (;;) {
        std::vector<Subspace> E{P.Vsharp()};
        for (auto i : idx) E.push_back(L[L.size() - 1 - i]);
        E.push_back(P.V());
        std::string label = "chain";
        for (std::size_t j = 1; j < n; ++j) label += " E" + std::to_string(j) + "=" + P.render(E[j]);
        std::optional<std::string> bad;
        bool undecided = false;
        try {
            for (std::size_t j = 1; j <= n && !bad; ++j) {
                auto f = detail::link_failure(P, ops[n - j], E[j - 1], E[j], &undecided);
                if (f) bad = "link " + std::to_string(j) + ": " + *f;
            }
        } catch (const Error& e) {
            bad = std::string("undecided: ") + e.what();
            undecided = true;
        }
        out.unsupported = out.unsupported || undecided;
        out.report.add(label, !bad, bad ? *bad : "factorizes");
        if (!bad) {
            PipOperator C = ops[0];
            for (std::size_t k = 1; k < n; ++k) C = op_compose(P, C, ops[k]);
            out.value = C;
            out.witness.assign(E.begin() + 1, E.end() - 1);
            out.unsupported = false;
            return out;
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == L.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

inline ProductOutcome product_bullet(const PipSpace& P, const PipOperator& T2, const PipOperator& T1) {
    ProductOutcome out;
    const PipOperator S1 = op_adjoint(P, T1), S2 = op_adjoint(P, T2);
    for (const auto& X : P.lattice())
        for (const auto& Y : P.lattice()) {
            const std::string label = "X=" + P.render(X) + " Y=" + P.render(Y);
            std::string w;
            std::optional<std::string> bad;
            bool undecided = false;
            try {
                if (!image_contained(P, T1, X, &w)) bad = "T1(V#) not in X: " + w;
                else if (!image_contained(P, S2, Y, &w)) bad = "T2*(V#) not in Y: " + w;
                else {
                    Extension e2 = continuous_extension_exists(P, T2, X);
                    if (!e2.exists) {
                        bad = "T2 on X: " + detail::describe_extension(e2);
                        undecided = e2.unsupported;
                    } else {
                        Extension e1 = continuous_extension_exists(P, S1, Y);
                        if (!e1.exists) {
                            bad = "T1* on Y: " + detail::describe_extension(e1);
                            undecided = e1.unsupported;
                        }
                    }
                }
            } catch (const Error& e) {
                bad = std::string("undecided: ") + e.what();
                undecided = true;
            }
            out.unsupported = out.unsupported || undecided;
            out.report.add(label, !bad, bad ? *bad : "defined");
            if (!bad) {
                out.value = op_compose(P, T2, T1);
                out.witness = {X, Y};
                out.unsupported = false;
                return out;
            }
        }
    return out;
}

inline ProductOutcome product_star(const PipSpace& P, const PipOperator& T2, const PipOperator& T1) {
    ProductOutcome out;
    try {
        const PipOperator S2 = op_adjoint(P, T2);
        const Subspace H1 = image_hull(P, T1), H2 = image_hull(P, S2);
        const bool compat = P.weight().sharp.contains_rectangle(H1, H2);
        out.report.add("compatible", compat, "T1(V#) x T2*(V#) inside #",
                       compat ? "" : P.render(H1) + " x " + P.render(H2));
        if (!compat) return out;
        const PipOperator C = op_compose(P, T2, T1);
        Report m = op_membership(P, C);
        out.report.append(m, "candidate ");
        if (!m.ok()) return out;
        const PipOperator D = op_adjoint(P, C);
        std::string bad;
        const auto gens = P.probes(P.Vsharp());
        for (const auto& phi : gens) {
            const Sequence t1 = op_apply_checked(P, T1, phi), c = op_apply_checked(P, C, phi);
            for (const auto& psi : gens) {
                const Sequence s2 = op_apply_checked(P, S2, psi), d = op_apply_checked(P, D, psi);
                if (P.pair_value(t1, s2) != P.pair_value(c, psi) || P.pair_value(s2, t1) != P.pair_value(d, phi)) {
                    bad = "(" + P.render(phi) + ", " + P.render(psi) + ")";
                    break;
                }
            }
            if (!bad.empty()) break;
        }
        out.report.add("identity", bad.empty(), "<T1 phi, T2* psi> = <C phi, psi>", bad);
        if (bad.empty()) out.value = C;
    } catch (const Error& e) {
        out.unsupported = true;
        out.report.add("undecided", false, e.what());
    }
    return out;
}

}  // namespace pipgns
