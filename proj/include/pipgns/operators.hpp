#pragma once

#include "pipgns/pip_space.hpp"
#include "pipgns/representability.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pipgns {

class AdjointUnverifiable : public Error {
public:
    using Error::Error;
};

/// phi -> <phi, w> u.
struct RankOne {
    Sequence u, w;
};

/// c id + pi(a) + sum |u><w|, acting on V# and taking values in V.
struct PipOperator {
    Scalar c{0};
    Sequence a;
    std::vector<RankOne> rank;

    static PipOperator identity() { return {Scalar(1), {}, {}}; }
    static PipOperator zero() { return {}; }
    static PipOperator multiplication(Sequence x) { return {Scalar(0), std::move(x), {}}; }
    static PipOperator rank_one(Sequence u, Sequence w) { return {Scalar(0), {}, {{std::move(u), std::move(w)}}}; }

    friend PipOperator operator+(PipOperator x, const PipOperator& y) {
        x.c += y.c;
        x.a = x.a + y.a;
        x.rank.insert(x.rank.end(), y.rank.begin(), y.rank.end());
        return x;
    }
    friend PipOperator operator*(PipOperator x, const Scalar& s) {
        x.c = x.c * s;
        x.a = x.a * s;
        for (auto& r : x.rank) r.u = r.u * s;
        return x;
    }
    friend PipOperator operator-(const PipOperator& x, const PipOperator& y) { return x + y * Scalar(-1); }
};

namespace detail {

inline bool multiplier_rules_hold(const PipSpace& P) {
    return P.weight().algebra.rule().kind == ProductRule::Kind::Pointwise &&
           P.omega().mode != PairingRule::Mode::Matrix;
}

inline Sequence phi_mult(const PipSpace& P) {
    auto m = P.omega().phi_multiplier();
    if (!m) throw UnsupportedError("pairing has no phi multiplier");
    return *m;
}

/// m with T e_n = m(n) e_n + sum_j kappa_j(n) u_j.
inline Sequence diagonal(const PipOperator& T) { return T.a + Sequence::constant(T.c); }

inline std::vector<Sequence> kappas(const PipSpace& P, const PipOperator& T) {
    std::vector<Sequence> k;
    if (T.rank.empty()) return k;
    const Sequence pm = phi_mult(P);
    for (const auto& r : T.rank) k.push_back(pm * r.w.conj());
    return k;
}

inline long horizon(const PipSpace& P, const PipOperator& T, const Subspace& Y) {
    long K = std::max(P.probe_bound(), T.a.max_index());
    for (const auto& r : T.rank) K = std::max({K, r.u.max_index(), r.w.max_index()});
    for (const auto& y : Y.basis()) K = std::max(K, y.max_index());
    for (const auto& g : P.Vsharp().basis()) K = std::max(K, g.max_index());
    if (auto m = P.omega().phi_multiplier()) K = std::max(K, m->max_index());
    return K + 1;
}

}  // namespace detail

/// Formal action on any vector of the ambient; nullopt when a pairing <x, w> is undefined.
inline std::optional<Sequence> op_apply(const PipSpace& P, const PipOperator& T, const Sequence& x,
                                        std::string* why = nullptr) {
    Sequence out = x * T.c;
    if (!T.a.is_zero()) out = out + P.weight().algebra.formal_product(T.a, x);
    for (const auto& r : T.rank) {
        SeriesValue v = P.pair(x, r.w);
        if (!v.ok()) {
            if (why) *why = "<" + P.ambient().render(x) + ", " + P.ambient().render(r.w) + "> undefined (" + v.reason + ")";
            return std::nullopt;
        }
        if (!v.value.is_zero()) out = out + r.u * v.value;
    }
    return out;
}

inline Sequence op_apply_checked(const PipSpace& P, const PipOperator& T, const Sequence& x) {
    std::string why;
    auto v = op_apply(P, T, x, &why);
    if (!v) throw UnsupportedError(why);
    return *v;
}

/// T2 T1 as a formal composite in the representation class.
inline PipOperator op_compose(const PipSpace& P, const PipOperator& T2, const PipOperator& T1) {
    const bool mult = !T1.a.is_zero() || !T2.a.is_zero();
    if (mult && !detail::multiplier_rules_hold(P))
        throw UnsupportedError("composing multipliers needs the pointwise product and a diagonal pairing");
    const auto& A = P.weight().algebra;
    PipOperator C;
    C.c = T2.c * T1.c;
    C.a = T1.a * T2.c + T2.a * T1.c;
    if (!T1.a.is_zero() && !T2.a.is_zero()) C.a = C.a + A.formal_product(T2.a, T1.a);
    for (const auto& r : T1.rank) {
        Sequence u = r.u * T2.c;
        if (!T2.a.is_zero()) u = u + A.formal_product(T2.a, r.u);
        if (!u.is_zero()) C.rank.push_back({u, r.w});
    }
    for (const auto& r : T2.rank) {
        Sequence w = r.w * T1.c.conj();
        if (!T1.a.is_zero()) w = w + T1.a.conj() * r.w;
        if (!w.is_zero()) C.rank.push_back({r.u, w});
        for (const auto& s : T1.rank) {
            SeriesValue v = P.pair(s.u, r.w);
            if (!v.ok()) throw UnsupportedError("<" + P.ambient().render(s.u) + ", " + P.ambient().render(r.w) + "> undefined");
            if (!v.value.is_zero()) C.rank.push_back({r.u * v.value, s.w});
        }
    }
    return C;
}

/// First generator pair of V# where <T phi, psi> = <phi, S psi> fails; throws when a pairing is undefined.
inline std::optional<std::string> adjoint_identity_failure(const PipSpace& P, const PipOperator& T, const PipOperator& S) {
    const auto gens = P.probes(P.Vsharp());
    for (const auto& phi : gens)
        for (const auto& psi : gens) {
            std::string why;
            auto tp = op_apply(P, T, phi, &why);
            auto sp = tp ? op_apply(P, S, psi, &why) : std::nullopt;
            if (!tp || !sp) throw AdjointUnverifiable(why);
            SeriesValue l = P.pair(*tp, psi), r = P.pair(phi, *sp);
            if (!l.ok() || !r.ok())
                throw AdjointUnverifiable("pairing undefined at (" + P.render(phi) + ", " + P.render(psi) + ")");
            if (l.value != r.value) return "(" + P.render(phi) + ", " + P.render(psi) + ")";
        }
    return std::nullopt;
}

inline PipOperator op_adjoint(const PipSpace& P, const PipOperator& T) {
    PipOperator S;
    S.c = T.c.conj();
    S.a = T.a.conj();
    for (const auto& r : T.rank) S.rank.push_back({r.w, r.u});
    if (auto bad = adjoint_identity_failure(P, T, S))
        throw AdjointUnverifiable("<T phi, psi> = <phi, T* psi> fails at " + *bad);
    return S;
}

/// T(V#) inside Y, decided exactly: directly below a horizon, through the tail profile beyond it.
inline bool image_contained(const PipSpace& P, const PipOperator& T, const Subspace& Y, std::string* witness = nullptr) {
    auto fail = [&](std::string w) {
        if (witness) *witness = std::move(w);
        return false;
    };
    for (const auto& g : P.Vsharp().basis()) {
        std::string why;
        auto v = op_apply(P, T, g, &why);
        if (!v) return fail(why);
        if (!Y.contains(*v)) return fail("T " + P.render(g) + " = " + P.render(*v));
    }
    if (!P.Vsharp().has_phi()) return true;
    const long K = detail::horizon(P, T, Y);
    for (long n = 1; n <= K; ++n) {
        Sequence e = Sequence::unit(n);
        Sequence v = op_apply_checked(P, T, e);
        if (!Y.contains(v)) return fail("T " + P.render(e) + " = " + P.render(v));
    }
    const Sequence m = detail::diagonal(T);
    const std::string far = "T e[n] for large n";
    if (!Y.has_phi() && !m.tail().is_zero()) return fail(far + " has diagonal part " + m.to_string());
    if (T.rank.empty()) return true;
    const auto ks = detail::kappas(P, T);
    std::vector<Sequence> gens;
    for (const auto& r : T.rank) gens.push_back(r.u);
    const std::size_t J = gens.size();
    for (const auto& y : Y.basis()) gens.push_back(y);
    std::vector<Vec> allowed;
    for (const auto& rel : relations(gens, Y.has_phi())) allowed.push_back(Vec(rel.begin(), rel.begin() + J));
    Matrix Km(allowed.size(), J);
    for (std::size_t i = 0; i < allowed.size(); ++i)
        for (std::size_t j = 0; j < J; ++j) Km(i, j) = allowed[i][j];
    for (const auto& q : kernel(Km)) {
        Sequence s;
        for (std::size_t j = 0; j < J; ++j)
            if (!q[j].is_zero()) s = s + ks[j] * q[j];
        if (!s.tail().is_zero()) return fail(far + " leaves " + Y.to_string() + " along " + s.to_string());
    }
    return true;
}

/// Operator equality on V/N: (T - S)(V#) inside N.
inline bool op_equal(const PipSpace& P, const PipOperator& T, const PipOperator& S) {
    return image_contained(P, T - S, P.N());
}

/// A subspace of V containing T(V#).
inline Subspace image_hull(const PipSpace& P, const PipOperator& T) {
    std::vector<Sequence> g;
    for (const auto& b : P.Vsharp().basis()) g.push_back(op_apply_checked(P, T, b));
    bool phi = false;
    if (P.Vsharp().has_phi()) {
        const Sequence m = detail::diagonal(T);
        if (!m.tail().is_zero()) phi = true;
        else
            for (const auto& [k, v] : m.correction())
                if (!m.at(k).is_zero()) g.push_back(Sequence::unit(k));
        const auto ks = detail::kappas(P, T);
        for (std::size_t j = 0; j < ks.size(); ++j)
            if (!ks[j].is_zero()) g.push_back(T.rank[j].u);
    }
    return Subspace(P.ambient(), g, phi);
}

/// Membership in Op(V): both T and T* map V# into V, T preserves N, and the duality identity holds.
inline Report op_membership(const PipSpace& P, const PipOperator& T) {
    Report r;
    std::string w;
    bool into = image_contained(P, T, P.V(), &w);
    r.add("maps-into-V", into, "T(V#) in V", w);
    PipOperator S;
    try {
        S = op_adjoint(P, T);
        r.add("adjoint", true, "adjoint exists in the representation class");
    } catch (const AdjointUnverifiable& e) {
        r.add("adjoint", false, "adjoint unverifiable", e.what());
        return r;
    }
    w.clear();
    into = image_contained(P, S, P.V(), &w);
    r.add("adjoint-into-V", into, "T*(V#) in V", w);
    bool lawful = true;
    w.clear();
    for (const auto& n : P.N().basis()) {
        auto v = op_apply(P, T, n, &w);
        if (!v || !P.N().contains(*v)) {
            lawful = false;
            if (v) w = "T " + P.ambient().render(n) + " = " + P.ambient().render(*v);
            break;
        }
    }
    r.add("coset-lawful", lawful, "T(N) in N", w);
    return r;
}

inline bool in_op(const PipSpace& P, const PipOperator& T) { return op_membership(P, T).ok(); }

/// Names operators that coincide with id, 0 or pi(x^k) for a named x and k <= 4; otherwise spells out the terms.
inline std::string render_operator(const PipSpace& P, const PipOperator& T,
                                   const std::map<std::string, Sequence>& names = {}) {
    auto same = [&](const PipOperator& S) {
        try {
            return op_equal(P, T, S);
        } catch (const Error&) {
            return false;
        }
    };
    if (same(PipOperator::zero())) return "0";
    if (same(PipOperator::identity())) return "id";
    for (const auto& [name, x] : names) {
        Sequence pw = x;
        for (int k = 1; k <= 4; ++k) {
            if (k > 1) pw = P.weight().algebra.formal_product(pw, x);
            if (same(PipOperator::multiplication(pw))) return k == 1 ? "pi(" + name + ")" : "pi(" + name + "^" + std::to_string(k) + ")";
        }
    }
    std::string out;
    auto add = [&](const std::string& t) { out += (out.empty() ? "" : " + ") + t; };
    if (!T.c.is_zero()) add(T.c == Scalar(1) ? "id" : "(" + T.c.to_string() + ")*id");
    if (!T.a.is_zero()) add("pi(" + P.ambient().render(T.a) + ")");
    for (const auto& r : T.rank) add("|" + P.render(r.u) + "><" + P.render(r.w) + "|");
    return out.empty() ? "0" : out;
}

}  // namespace pipgns
