#pragma once

#include "pipgns/polynomial.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pipgns {

/// One closed-form tail term base^n * coeff(n).
struct TailTerm {
    Scalar base;
    RatFunc coeff;
    friend bool operator==(const TailTerm& a, const TailTerm& b) { return a.base == b.base && a.coeff == b.coeff; }
};

/// Canonical sum of tail terms: bases distinct and sorted, coefficients nonzero, no zero base.
class TailExpr {
public:
    TailExpr() = default;
    explicit TailExpr(std::vector<TailTerm> terms) {
        for (auto& t : terms) add_term(std::move(t));
    }
    static TailExpr geometric(const Scalar& base, const RatFunc& coeff) { return TailExpr({TailTerm{base, coeff}}); }
    static TailExpr constant(const Scalar& c) { return geometric(Scalar(1), RatFunc(c)); }

    const std::vector<TailTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar eval(long n) const {
        Scalar acc(0);
        for (const auto& t : terms_) acc += t.base.pow(n) * t.coeff.eval(n);
        return acc;
    }
    std::complex<double> eval_double(double n) const {
        std::complex<double> acc(0.0);
        for (const auto& t : terms_) acc += std::pow(t.base.to_complex(), n) * t.coeff.eval_double(n);
        return acc;
    }

    TailExpr conj() const {
        TailExpr out;
        for (const auto& t : terms_) out.add_term({t.base.conj(), t.coeff.conj()});
        return out;
    }

    friend TailExpr operator+(const TailExpr& a, const TailExpr& b) {
        TailExpr out = a;
        for (const auto& t : b.terms_) out.add_term(t);
        return out;
    }
    friend TailExpr operator*(const TailExpr& a, const Scalar& s) {
        if (s.is_zero()) return {};
        TailExpr out = a;
        for (auto& t : out.terms_) t.coeff = t.coeff * s;
        return out;
    }
    friend TailExpr operator-(const TailExpr& a, const TailExpr& b) { return a + b * Scalar(-1); }
    friend TailExpr operator*(const TailExpr& a, const TailExpr& b) {
        TailExpr out;
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) out.add_term({s.base * t.base, s.coeff * t.coeff});
        return out;
    }
    friend bool operator==(const TailExpr& a, const TailExpr& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TailExpr& a, const TailExpr& b) { return !(a == b); }

    /// Sum of the rational-function degrees plus the term count; bounds the number of zeros a
    /// difference of two such tails can have before it must vanish identically.
    int complexity() const {
        int c = 0;
        for (const auto& t : terms_) c += 1 + t.coeff.num().degree() + t.coeff.den().degree();
        return c;
    }

private:
    void add_term(TailTerm t) {
        if (t.base.is_zero() || t.coeff.is_zero()) return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), t.base,
                                   [](const TailTerm& x, const Scalar& b) { return canonical_less(x.base, b); });
        if (it != terms_.end() && it->base == t.base) {
            it->coeff = it->coeff + t.coeff;
            if (it->coeff.is_zero()) terms_.erase(it);
        } else {
            terms_.insert(it, std::move(t));
        }
    }
    std::vector<TailTerm> terms_;
};

/// A complex sequence indexed by n >= 1: value(n) = correction(n) + tail(n), with the correction
/// finitely supported. This additive form is unique, so structural equality is pointwise equality.
class Sequence {
public:
    Sequence() = default;
    Sequence(std::map<long, Scalar> correction, TailExpr tail) : corr_(std::move(correction)), tail_(std::move(tail)) {
        prune();
    }
    explicit Sequence(TailExpr tail) : tail_(std::move(tail)) {}

    static Sequence unit(long index, const Scalar& value = Scalar(1)) {
        if (index < 1) throw Error("sequence index must be >= 1");
        return Sequence({{index, value}}, {});
    }
    static Sequence constant(const Scalar& c) { return Sequence(TailExpr::constant(c)); }
    static Sequence identity_index() { return Sequence(TailExpr::geometric(Scalar(1), RatFunc(Poly::n()))); }
    static Sequence finite(const std::vector<Scalar>& values) {
        std::map<long, Scalar> m;
        for (std::size_t k = 0; k < values.size(); ++k)
            if (!values[k].is_zero()) m[static_cast<long>(k) + 1] = values[k];
        return Sequence(std::move(m), {});
    }

    const std::map<long, Scalar>& correction() const { return corr_; }
    const TailExpr& tail() const { return tail_; }

    bool is_zero() const { return corr_.empty() && tail_.is_zero(); }
    /// Finite support, i.e. an element of phi.
    bool eventually_zero() const { return tail_.is_zero(); }
    long max_index() const { return corr_.empty() ? 0 : corr_.rbegin()->first; }

    Scalar at(long n) const {
        Scalar v = tail_.eval(n);
        if (auto it = corr_.find(n); it != corr_.end()) v += it->second;
        return v;
    }
    std::complex<double> at_double(double n) const {
        std::complex<double> v = tail_.eval_double(n);
        if (auto it = corr_.find(static_cast<long>(n)); it != corr_.end() && static_cast<double>(it->first) == n)
            v += it->second.to_complex();
        return v;
    }

    Sequence tail_part() const { return Sequence(tail_); }
    Sequence correction_part() const { return Sequence(corr_, {}); }

    Sequence conj() const {
        std::map<long, Scalar> c;
        for (const auto& [k, v] : corr_) c[k] = v.conj();
        return Sequence(std::move(c), tail_.conj());
    }

    Sequence operator-() const { return *this * Scalar(-1); }
    friend Sequence operator+(const Sequence& a, const Sequence& b) {
        std::map<long, Scalar> c = a.corr_;
        for (const auto& [k, v] : b.corr_) c[k] += v;
        return Sequence(std::move(c), a.tail_ + b.tail_);
    }
    friend Sequence operator-(const Sequence& a, const Sequence& b) { return a + (-b); }
    friend Sequence operator*(const Sequence& a, const Scalar& s) {
        if (s.is_zero()) return {};
        std::map<long, Scalar> c = a.corr_;
        for (auto& [k, v] : c) v *= s;
        return Sequence(std::move(c), a.tail_ * s);
    }
    friend Sequence operator*(const Scalar& s, const Sequence& a) { return a * s; }
    /// Pointwise product.
    friend Sequence operator*(const Sequence& a, const Sequence& b) {
        std::map<long, Scalar> c;
        for (const auto& [k, v] : a.corr_) c[k] += v * b.tail_.eval(k);
        for (const auto& [k, v] : b.corr_) c[k] += v * a.tail_.eval(k);
        for (const auto& [k, v] : a.corr_)
            if (auto it = b.corr_.find(k); it != b.corr_.end()) c[k] += v * it->second;
        return Sequence(std::move(c), a.tail_ * b.tail_);
    }
    friend bool operator==(const Sequence& a, const Sequence& b) { return a.corr_ == b.corr_ && a.tail_ == b.tail_; }
    friend bool operator!=(const Sequence& a, const Sequence& b) { return !(a == b); }

    std::string to_string() const;
    /// Renders a finitely supported sequence as a coordinate vector of length dim.
    std::string to_vector_string(int dim) const;

private:
    void prune() {
        for (auto it = corr_.begin(); it != corr_.end();) {
            if (it->first < 1) throw Error("sequence index must be >= 1");
            it = it->second.is_zero() ? corr_.erase(it) : std::next(it);
        }
    }
    std::map<long, Scalar> corr_;
    TailExpr tail_;
};

inline std::string render_tail_term(const TailTerm& t) {
    std::string coeff = t.coeff.to_string();
    bool compound = coeff.find_first_of(" ") != std::string::npos;
    if (t.base.is_one()) return coeff;
    std::string b = t.base.to_string();
    bool simple_base = t.base.is_real() && sgn(t.base.re()) > 0 && t.base.re().get_den() == 1;
    std::string base = (simple_base ? b : (b.front() == '(' ? b : "(" + b + ")")) + "^n";
    if (coeff == "1") return base;
    return base + "*" + (compound || coeff.front() == '-' ? "(" + coeff + ")" : coeff);
}

inline std::string Sequence::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::string> parts;
    if (!corr_.empty()) {
        std::string p = "patch{";
        bool first = true;
        for (const auto& [k, v] : corr_) {
            if (!first) p += ", ";
            first = false;
            p += std::to_string(k) + ":" + v.to_string();
        }
        parts.push_back(p + "}");
    }
    for (const auto& t : tail_.terms()) {
        std::string s = render_tail_term(t);
        bool compound = t.base.is_one() && s.find(' ') != std::string::npos && s.front() != '(';
        if (compound && (!parts.empty() || tail_.terms().size() > 1)) s = "(" + s + ")";
        parts.push_back(s);
    }
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? " + " : "") + parts[k];
    return out;
}

inline std::string Sequence::to_vector_string(int dim) const {
    std::string out = "vec(";
    for (int k = 1; k <= dim; ++k) out += (k > 1 ? ", " : "") + at(k).to_string();
    return out + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Sequence& s) { return os << s.to_string(); }

// ---------------------------------------------------------------------------
// Pairings of sequences

/// Outcome of an infinite sum or limit.
struct SeriesValue {
    enum class Kind { Value, Divergent, Unsupported };
    Kind kind = Kind::Value;
    Scalar value;
    std::string reason;

    bool ok() const { return kind == Kind::Value; }
    static SeriesValue of(Scalar v) { return {Kind::Value, std::move(v), {}}; }
    static SeriesValue divergent(std::string why) { return {Kind::Divergent, {}, std::move(why)}; }
    static SeriesValue unsupported(std::string why) { return {Kind::Unsupported, {}, std::move(why)}; }
};

namespace detail {

inline Rational binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

/// S_k = sum_{n>=1} n^k r^n for |r| < 1, k = 0..max_k. Uses (1-r) S_k = sum_{j<k} (-1)^(k-1-j) C(k,j) S_j.
inline std::vector<Scalar> power_geometric_sums(const Scalar& r, int max_k) {
    std::vector<Scalar> s;
    const Scalar inv = (Scalar(1) - r).inverse();
    s.push_back(r * inv);
    for (int k = 1; k <= max_k; ++k) {
        Scalar acc(0);
        for (int j = 0; j < k; ++j) {
            Scalar term = Scalar(binomial(k, j)) * s[j];
            acc += ((k - 1 - j) % 2 == 0) ? term : -term;
        }
        s.push_back(acc * inv);
    }
    return s;
}

}  // namespace detail

/// sum_{n>=1} p(n) for an exp-rational sequence p.
inline SeriesValue sequence_sum(const Sequence& p) {
    Scalar total(0);
    for (const auto& [k, v] : p.correction()) total += v;
    bool unsupported = false;
    std::string why;
    for (const auto& t : p.tail().terms()) {
        Rational m = t.base.norm2();
        int gap = t.coeff.den().degree() - t.coeff.num().degree();
        if (m > 1 || (m == 1 && gap < (t.base.is_one() ? 2 : 1)))
            return SeriesValue::divergent("term " + render_tail_term(t) + " is not summable");
        if (m == 1 || !t.coeff.is_polynomial()) {
            unsupported = true;
            why = "term " + render_tail_term(t) + " is summable but has a non-polynomial coefficient";
            continue;
        }
        const Poly& poly = t.coeff.num();
        auto sums = detail::power_geometric_sums(t.base, poly.degree());
        for (int k = 0; k <= poly.degree(); ++k) total += poly.coeff(k) * sums[k];
    }
    if (unsupported) return SeriesValue::unsupported(why);
    return SeriesValue::of(total);
}

/// sum_{n>=1} x(n) * conj(y(n)).
inline SeriesValue seq_sum_pairing(const Sequence& x, const Sequence& y) { return sequence_sum(x * y.conj()); }

/// lim_{n->inf} p(n).
inline SeriesValue sequence_limit(const Sequence& p) {
    Scalar limit(0);
    for (const auto& t : p.tail().terms()) {
        Rational m = t.base.norm2();
        if (m < 1) continue;
        if (m > 1) return SeriesValue::divergent("term " + render_tail_term(t) + " grows geometrically");
        int dn = t.coeff.num().degree(), dd = t.coeff.den().degree();
        if (dn > dd) return SeriesValue::divergent("term " + render_tail_term(t) + " is unbounded");
        if (dn < dd) continue;
        Scalar c = t.coeff.num().lead() / t.coeff.den().lead();
        if (t.base.is_one())
            limit += c;
        else
            return SeriesValue::divergent("term " + render_tail_term(t) + " oscillates");
    }
    return SeriesValue::of(limit);
}

/// lim_{n->inf} x(n) * conj(y(n)).
inline SeriesValue seq_lim_pairing(const Sequence& x, const Sequence& y) { return sequence_limit(x * y.conj()); }

}  // namespace pipgns
