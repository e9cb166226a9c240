#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "kinet/errors.hpp"
#include "kinet/rational.hpp"

namespace kinet {

using QVec = std::vector<Rat>;

// Dense matrix over the rationals. Row-major storage.
class QMat {
  public:
    QMat() : rows_(0), cols_(0) {}
    QMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    QMat(std::initializer_list<std::initializer_list<Rat>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw error("ragged initializer for QMat");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static QMat identity(size_t n) {
        QMat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static QMat from_rows(const std::vector<QVec>& rows, size_t cols) {
        QMat m(rows.size(), cols);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw error("ragged row list for QMat");
            for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rat& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    QVec row(size_t i) const {
        return QVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    QVec col(size_t j) const {
        QVec v(rows_);
        for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_row(size_t i, const QVec& v) {
        for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }
    void set_col(size_t j, const QVec& v) {
        for (size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    bool operator==(const QMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    QMat transpose() const {
        QMat t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    QMat operator*(const QMat& o) const {
        if (cols_ != o.rows_) throw error("QMat multiply: dimension mismatch");
        QMat p(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const Rat& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (size_t j = 0; j < o.cols_; ++j) p(i, j) += aik * o(k, j);
            }
        return p;
    }

    QVec operator*(const QVec& v) const {
        if (cols_ != v.size()) throw error("QMat apply: dimension mismatch");
        QVec r(rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    // Rows of `o` appended below this matrix.
    QMat vstack(const QMat& o) const {
        if (cols_ != o.cols_ && rows_ != 0 && o.rows_ != 0)
            throw error("QMat vstack: column mismatch");
        size_t cols = rows_ ? cols_ : o.cols_;
        QMat s(rows_ + o.rows_, cols);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols; ++j) s(i, j) = (*this)(i, j);
        for (size_t i = 0; i < o.rows_; ++i)
            for (size_t j = 0; j < cols; ++j) s(rows_ + i, j) = o(i, j);
        return s;
    }

    QMat hstack(const QMat& o) const {
        if (rows_ != o.rows_) throw error("QMat hstack: row mismatch");
        QMat s(rows_, cols_ + o.cols_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j);
            for (size_t j = 0; j < o.cols_; ++j) s(i, cols_ + j) = o(i, j);
        }
        return s;
    }

    Eigen::MatrixXd to_eigen() const {
        Eigen::MatrixXd m(rows_, cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) m(i, j) = to_double((*this)(i, j));
        return m;
    }

  private:
    size_t rows_, cols_;
    std::vector<Rat> a_;
};

inline Rat dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw error("dot: dimension mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline Eigen::VectorXd to_eigen(const QVec& v) {
    Eigen::VectorXd e(v.size());
    for (size_t i = 0; i < v.size(); ++i) e(i) = to_double(v[i]);
    return e;
}

// Scales a rational vector to the primitive integer vector in its ray:
// multiply by the lcm of denominators, divide by the gcd of numerators.
inline QVec primitive(const QVec& v) {
    Int l = 1;
    for (const auto& x : v)
        if (x != 0) l = boost::multiprecision::lcm(l, denom(x));
    Int g = 0;
    for (const auto& x : v)
        if (x != 0) g = boost::multiprecision::gcd(g, Int(numer(x) * (l / denom(x))));
    if (g == 0) return v;
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] * Rat(l, g);
    return r;
}

struct RrefResult {
    QMat mat;                    // reduced row echelon form
    std::vector<size_t> pivots;  // pivot column per pivot row
    size_t rank;
};

// Gauss-Jordan over the rationals. Exact; the RREF is canonical for the row space.
inline RrefResult rref(QMat m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t piv = row;
        while (piv < m.rows() && m(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
        Rat inv = Rat(1) / m(row, col);
        for (size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rat f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots), row};
}

// Exact rank via Bareiss fraction-free elimination on the denominator-cleared
// integer matrix. Row scaling preserves rank.
inline size_t rank_bareiss(const QMat& q) {
    size_t rows = q.rows(), cols = q.cols();
    std::vector<Int> w(rows * cols);
    for (size_t i = 0; i < rows; ++i) {
        Int l = 1;
        for (size_t j = 0; j < cols; ++j)
            if (q(i, j) != 0) l = boost::multiprecision::lcm(l, denom(q(i, j)));
        for (size_t j = 0; j < cols; ++j)
            w[i * cols + j] = numer(q(i, j)) * (l / denom(q(i, j)));
    }
    auto at = [&](size_t i, size_t j) -> Int& { return w[i * cols + j]; };
    Int prev = 1;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && at(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != row)
            for (size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(row, j));
        for (size_t i = row + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j)
                at(i, j) = (at(row, col) * at(i, j) - at(i, col) * at(row, j)) / prev;
            at(i, col) = 0;
        }
        prev = at(row, col);
        ++row;
    }
    return row;
}

inline size_t rank(const QMat& m) { return rank_bareiss(m); }

// Basis of {v : M v = 0}, one row per free column of the RREF.
inline QMat kernel_basis(const QMat& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : r.pivots) is_pivot[p] = true;
    std::vector<size_t> free_cols;
    for (size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    QMat basis(free_cols.size(), m.cols());
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        size_t f = free_cols[fi];
        basis(fi, f) = 1;
        for (size_t i = 0; i < r.pivots.size(); ++i) basis(fi, r.pivots[i]) = -r.mat(i, f);
    }
    return basis;
}

}  // namespace kinet
