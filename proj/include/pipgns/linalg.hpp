#pragma once

#include "pipgns/scalar.hpp"

#include <optional>
#include <vector>

namespace pipgns {

using Vec = std::vector<Scalar>;

/// Dense row-major matrix over Scalar.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols && c < rows[r].size(); ++c) m(r, c) = rows[r][c];
        return m;
    }
    /// Matrix whose columns are the given vectors.
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < rows && r < cols[c].size(); ++r) m(r, c) = cols[c][r];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Vec row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

struct Rref {
    Matrix m;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline Rref rref(Matrix m) {
    Rref out;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t p = lead;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != lead)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead, k));
        Scalar inv = m(lead, c).inverse();
        for (std::size_t k = c; k < m.cols(); ++k) m(lead, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m(r, c).is_zero()) continue;
            Scalar f = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(lead, k);
        }
        out.pivots.push_back(c);
        ++lead;
    }
    out.m = std::move(m);
    return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank(); }

/// Basis of {v ; M v = 0}.
inline std::vector<Vec> kernel(const Matrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = Scalar(1);
        for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.m(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some solution of M v = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    Rref red = rref(aug);
    if (!red.pivots.empty() && red.pivots.back() == m.cols()) return std::nullopt;
    Vec v(m.cols());
    for (std::size_t k = 0; k < red.pivots.size(); ++k) v[red.pivots[k]] = red.m(k, m.cols());
    return v;
}

inline Vec mat_vec(const Matrix& m, const Vec& v) {
    Vec out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!v[c].is_zero()) out[r] += m(r, c) * v[c];
    return out;
}

inline bool vec_is_zero(const Vec& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

}  // namespace pipgns
