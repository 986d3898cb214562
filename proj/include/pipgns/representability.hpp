#pragma once

#include "pipgns/pairing.hpp"

#include <functional>
#include <optional>
#include <string>

namespace pipgns {

/// A linear or conjugate-linear functional on a subspace D, known on D's basis and, when D
/// contains phi, through its values f(n) = F(e_n) as one exact sequence.
struct Functional {
    std::function<Scalar(const Sequence&)> at;
    std::optional<Sequence> phi_values;
};

struct Representation {
    std::optional<Sequence> vector;
    bool unsupported = false;
    std::string witness;
    bool ok() const { return vector.has_value(); }
};

/// Pointwise quotient f / m when m is constant or a single closed-form term.
inline std::optional<Sequence> pointwise_divide(const Sequence& f, const Sequence& m) {
    if (m.correction().empty() && m.tail().terms().size() == 1) {
        const TailTerm& t = m.tail().terms()[0];
        if (!t.coeff.num().has_positive_integer_root())
            return f * Sequence(TailExpr::geometric(t.base.inverse(), t.coeff.reciprocal()));
    }
    return std::nullopt;
}

/// Finds v in S with Omega(v, g) = F(g) for every g in D.
inline Representation representability_solve(const PairingRule& rule, const Functional& F, const Subspace& D,
                                             const Subspace& S) {
    Representation out;
    const Ambient amb = S.ambient();
    if (D.has_phi()) {
        auto m = rule.phi_multiplier();
        if (!m || !F.phi_values) {
            out.unsupported = true;
            out.witness = "functional on phi given without its pointwise profile";
            return out;
        }
        const Sequence& f = *F.phi_values;
        if (m->is_zero()) {
            if (!f.is_zero()) {
                long n = 1;
                while (f.at(n).is_zero()) ++n;
                out.witness = "F(e[" + std::to_string(n) + "]) = " + f.at(n).to_string() + " but every vector pairs to 0 with phi";
                return out;
            }
        } else {
            auto nz = nowhere_zero(*m);
            auto v = (nz && *nz) ? pointwise_divide(f, *m) : std::nullopt;
            if (!v) {
                out.unsupported = true;
                out.witness = "weight " + m->to_string() + " is not invertible in closed form";
                return out;
            }
            if (!S.contains(*v)) {
                out.witness = "the only candidate " + amb.render(*v) + " is not in " + S.to_string();
                return out;
            }
            for (const auto& g : D.basis()) {
                SeriesValue val = rule.eval(*v, g);
                if (!val.ok() || val.value != F.at(g)) {
                    out.witness = "candidate " + amb.render(*v) + " misses the value on " + amb.render(g);
                    return out;
                }
            }
            out.vector = *v;
            return out;
        }
    }
    if (S.has_phi() && !D.has_phi()) {
        auto m = rule.phi_multiplier();
        bool phi_silent = m && m->is_zero();
        if (!phi_silent) {
            out.unsupported = true;
            out.witness = "phi part of the target pairs nontrivially with a finite domain";
            return out;
        }
    }
    const auto& xs = S.basis();
    const auto& gs = D.basis();
    Matrix M(gs.size(), xs.size());
    Vec rhs(gs.size());
    for (std::size_t j = 0; j < gs.size(); ++j) {
        rhs[j] = F.at(gs[j]);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            SeriesValue val = rule.eval(xs[i], gs[j]);
            if (!val.ok()) {
                out.unsupported = true;
                out.witness = "pairing of " + amb.render(xs[i]) + " with " + amb.render(gs[j]) + " undefined";
                return out;
            }
            M(j, i) = val.value;
        }
    }
    auto c = solve(M, rhs);
    if (!c) {
        out.witness = "no element of " + S.to_string() + " reproduces the functional on " + D.to_string();
        return out;
    }
    out.vector = combine(xs, *c);
    return out;
}

}  // namespace pipgns
