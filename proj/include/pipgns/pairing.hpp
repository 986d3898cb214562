#pragma once

#include "pipgns/subspace.hpp"

#include <optional>
#include <string>

namespace pipgns {

/// How Omega(x, y) is evaluated on the pairs where it is defined.
struct PairingRule {
    enum class Mode { Sum, Lim, Matrix, Zero };
    Mode mode = Mode::Sum;
    Sequence weight = Sequence::constant(1);  // Sum: sum_n w(n) x(n) conj(y(n))
    Matrix matrix;                            // Matrix: sum_ij x_i M_ij conj(y_j), finite backend only

    static PairingRule sum(Sequence w = Sequence::constant(1)) { return {Mode::Sum, std::move(w), {}}; }
    static PairingRule lim() { return {Mode::Lim, Sequence::constant(1), {}}; }
    static PairingRule zero() { return {Mode::Zero, Sequence::constant(1), {}}; }
    static PairingRule from_matrix(Matrix m) { return {Mode::Matrix, Sequence::constant(1), std::move(m)}; }

    SeriesValue eval(const Sequence& x, const Sequence& y) const {
        switch (mode) {
            case Mode::Sum: return sequence_sum(x * y.conj() * weight);
            case Mode::Lim: return sequence_limit(x * y.conj());
            case Mode::Zero: return SeriesValue::of(Scalar(0));
            case Mode::Matrix: {
                Scalar acc(0);
                for (std::size_t i = 0; i < matrix.rows(); ++i) {
                    Scalar xi = x.at(static_cast<long>(i) + 1);
                    if (xi.is_zero()) continue;
                    for (std::size_t j = 0; j < matrix.cols(); ++j)
                        if (!matrix(i, j).is_zero()) acc += xi * matrix(i, j) * y.at(static_cast<long>(j) + 1).conj();
                }
                return SeriesValue::of(acc);
            }
        }
        return SeriesValue::unsupported("unknown pairing mode");
    }

    /// m with Omega(x, e_n) = m(n) x(n) and Omega(e_n, x) = m(n) conj(x(n)); none for Matrix mode.
    std::optional<Sequence> phi_multiplier() const {
        switch (mode) {
            case Mode::Sum: return weight;
            case Mode::Lim:
            case Mode::Zero: return Sequence();
            case Mode::Matrix: return std::nullopt;
        }
        return std::nullopt;
    }

    std::string describe() const {
        switch (mode) {
            case Mode::Sum: return weight == Sequence::constant(1) ? "sum" : "sum weighted by " + weight.to_string();
            case Mode::Lim: return "lim";
            case Mode::Zero: return "zero";
            case Mode::Matrix: return "matrix";
        }
        return "?";
    }
};

/// Positive integer roots of p, in increasing order.
inline std::vector<long> positive_integer_roots(const Poly& p) {
    std::vector<long> out;
    if (p.is_zero() || p.degree() == 0) return out;
    double bound = 1.0;
    const Rational lead_norm = p.lead().norm2();
    for (int k = 0; k < p.degree(); ++k)
        bound = std::max(bound, 1.0 + std::sqrt(Rational(p.coeff(k).norm2() / lead_norm).get_d()));
    const long limit = static_cast<long>(bound) + 2;
    if (limit > 2'000'000) throw UnsupportedError("root bound too large");
    for (long n = 1; n <= limit; ++n)
        if (p.eval(Scalar(n)).is_zero()) out.push_back(n);
    return out;
}

/// Decides m(n) != 0 for every n >= 1; nullopt when the tail shape is outside what is decided here.
inline std::optional<bool> nowhere_zero(const Sequence& m) {
    for (const auto& [k, v] : m.correction())
        if (m.at(k).is_zero()) return false;
    const auto& terms = m.tail().terms();
    if (terms.empty()) return false;
    if (terms.size() != 1) return std::nullopt;
    for (long r : positive_integer_roots(terms[0].coeff.num()))
        if (m.at(r).is_zero()) return false;
    return true;
}

inline Scalar pairing_value(const PairingRule& rule, const Sequence& x, const Sequence& y) {
    SeriesValue v = rule.eval(x, y);
    if (!v.ok())
        throw UnsupportedError("pairing of " + x.to_string() + " with " + y.to_string() + " is undefined: " + v.reason);
    return v.value;
}

/// {x in X ; Omega(x, y) = 0 for all y in Y}.
inline Subspace annihilator(const PairingRule& rule, const Subspace& X, const Subspace& Y) {
    const Ambient amb = X.ambient();
    Subspace cur = X;
    if (Y.has_phi()) {
        auto m = rule.phi_multiplier();
        if (!m) throw UnsupportedError("pairing has no phi multiplier");
        if (!m->is_zero()) {
            if (cur.has_phi()) {
                auto nz = nowhere_zero(*m);
                if (!nz || !*nz) throw UnsupportedError("annihilator of phi under weight " + m->to_string());
                cur = Subspace::zero(amb);
            } else {
                std::vector<Sequence> prod;
                for (const auto& b : cur.basis()) prod.push_back(*m * b);
                std::vector<Sequence> keep;
                for (const auto& c : relations(prod, false)) keep.push_back(combine(cur.basis(), c));
                cur = Subspace(amb, keep);
            }
        }
    }
    const auto& ys = Y.basis();
    if (ys.empty() || cur.is_zero()) return cur;
    if (cur.has_phi()) {
        auto m = rule.phi_multiplier();
        if (!m) throw UnsupportedError("pairing has no phi multiplier");
        for (const auto& g : ys)
            if (!(*m * g.conj()).is_zero())
                throw UnsupportedError("annihilator inside phi is not of the form phi + span");
    }
    const auto& xs = cur.basis();
    Matrix M(ys.size(), xs.size());
    for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t i = 0; i < xs.size(); ++i) M(j, i) = pairing_value(rule, xs[i], ys[j]);
    std::vector<Sequence> keep;
    for (const auto& c : kernel(M)) keep.push_back(combine(xs, c));
    return Subspace(amb, keep, cur.has_phi());
}

}  // namespace pipgns
