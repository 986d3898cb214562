#pragma once

#include "pipgns/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace pipgns {

/// Dense univariate polynomial in the index variable n; coeffs_[k] multiplies n^k.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Poly(const Scalar& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) coeffs_.push_back(c);
    }
    static Poly monomial(int k, const Scalar& c = Scalar(1)) {
        std::vector<Scalar> v(static_cast<std::size_t>(k) + 1);
        v[k] = c;
        return Poly(std::move(v));
    }
    static Poly n() { return monomial(1); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    Scalar coeff(int k) const { return k >= 0 && k <= degree() ? coeffs_[k] : Scalar(0); }
    Scalar lead() const { return is_zero() ? Scalar(0) : coeffs_.back(); }
    bool is_constant() const { return degree() <= 0; }

    Scalar eval(const Scalar& x) const {
        Scalar acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    std::complex<double> eval_double(double x) const {
        std::complex<double> acc(0.0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_complex();
        return acc;
    }

    Poly conj() const {
        std::vector<Scalar> v;
        v.reserve(coeffs_.size());
        for (const auto& c : coeffs_) v.push_back(c.conj());
        return Poly(std::move(v));
    }

    Poly operator-() const { return *this * Scalar(-1); }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Scalar& s) {
        if (s.is_zero()) return {};
        std::vector<Scalar> v = a.coeffs_;
        for (auto& c : v) c *= s;
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(v));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Euclidean division: returns (quotient, remainder).
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error("polynomial division by zero");
        Poly q, r = a;
        const Scalar inv_lead = b.lead().inverse();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            Scalar c = r.lead() * inv_lead;
            Poly t = monomial(shift, c);
            q = q + t;
            r = r - t * b;
        }
        return {q, r};
    }

    Poly monic() const { return is_zero() ? *this : *this * lead().inverse(); }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// True if some integer n >= 1 is a root. Uses the Cauchy root bound.
    bool has_positive_integer_root() const {
        if (is_zero()) return true;
        if (degree() == 0) return false;
        double bound = 1.0;
        const Rational lead_norm = lead().norm2();
        for (int k = 0; k < degree(); ++k) {
            Rational ratio = coeffs_[k].norm2() / lead_norm;
            bound = std::max(bound, 1.0 + std::sqrt(ratio.get_d()));
        }
        const long limit = static_cast<long>(bound) + 2;
        if (limit > 2'000'000) throw UnsupportedError("root bound too large for positive-integer pole test");
        for (long n = 1; n <= limit; ++n)
            if (eval(Scalar(n)).is_zero()) return true;
        return false;
    }

    std::string to_string() const;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<Scalar> coeffs_;
};

inline std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Scalar& c = coeffs_[k];
        if (c.is_zero()) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? "n" : "n^" + std::to_string(k));
        std::string cs = c.to_string();
        bool negative = c.is_real() && sgn(c.re()) < 0;
        std::string mag = negative ? (-c).to_string() : cs;
        std::string piece;
        if (mono.empty())
            piece = mag;
        else if (mag == "1")
            piece = mono;
        else
            piece = mag + "*" + mono;
        if (out.empty())
            out = negative ? "-" + piece : piece;
        else
            out += negative ? " - " + piece : " + " + piece;
    }
    return out;
}

/// Reduced rational function num/den in n; den is monic and has no root at any n >= 1.
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(Poly num) : num_(std::move(num)), den_(Scalar(1)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(const Scalar& c) : RatFunc(Poly(c)) {}                 // NOLINT(google-explicit-constructor)
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    Scalar eval(long n) const { return num_.eval(Scalar(n)) / den_.eval(Scalar(n)); }
    std::complex<double> eval_double(double n) const { return num_.eval_double(n) / den_.eval_double(n); }

    RatFunc conj() const { return RatFunc(num_.conj(), den_.conj()); }
    RatFunc reciprocal() const {
        if (is_zero()) throw Error("reciprocal of zero rational function");
        return RatFunc(den_, num_);
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const Scalar& s) { return RatFunc(a.num_ * s, a.den_); }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        auto wrap = [](const Poly& p) {
            std::string s = p.to_string();
            bool simple = s.find_first_of(" +") == std::string::npos && s.find('-', 1) == std::string::npos;
            return simple ? s : "(" + s + ")";
        };
        return wrap(num_) + "/" + wrap(den_);
    }

private:
    void normalize() {
        if (den_.is_zero()) throw Error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(Scalar(1));
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::divmod(num_, g).first;
            den_ = Poly::divmod(den_, g).first;
        }
        Scalar l = den_.lead();
        num_ = num_ * l.inverse();
        den_ = den_ * l.inverse();
        if (den_.degree() > 0 && den_.has_positive_integer_root())
            throw UnsupportedError("rational function has a pole at a positive integer: " + to_string());
    }

    Poly num_;
    Poly den_{Scalar(1)};
};

}  // namespace pipgns
