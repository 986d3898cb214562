#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pipgns {

/// Thrown for malformed input and for requests outside what the engine can decide.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

using Rational = mpq_class;

/// Exact Gaussian rational re + im*i.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    Scalar(int v) : re_(v), im_(0) {}   // NOLINT(google-explicit-constructor)
    Scalar(Rational re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar frac(long num, long den) { return Scalar(Rational(num, den)); }
    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    /// |s|^2, always real and non-negative.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw Error("division by zero scalar");
        Rational d = o.norm2();
        Scalar q = *this * o.conj();
        re_ = q.re_ / d;
        im_ = q.im_ / d;
        return *this;
    }
    Scalar inverse() const { return Scalar(1) / *this; }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Total order used only for canonical sorting (lexicographic on re, im).
    friend bool canonical_less(const Scalar& a, const Scalar& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    Scalar pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        Scalar result(1), base = *this;
        while (k > 0) {
            if (k & 1) result *= base;
            base *= base;
            k >>= 1;
        }
        return result;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    std::string to_string() const;

    std::size_t hash() const {
        return std::hash<std::string>{}(re_.get_str()) * 31 + std::hash<std::string>{}(im_.get_str());
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline std::string rational_string(const Rational& r) { return r.get_str(); }

// Renders in the sequence-literal grammar: `3/2`, `-1/2*i`, `(1/2+3*i)`.
inline std::string Scalar::to_string() const {
    if (sgn(im_) == 0) return rational_string(re_);
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = rational_string(im_) + "*i";
    if (sgn(re_) == 0) return imag;
    std::string out = "(" + rational_string(re_);
    if (imag[0] == '-')
        out += imag;
    else
        out += "+" + imag;
    return out + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace pipgns
