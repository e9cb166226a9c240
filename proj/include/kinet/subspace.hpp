#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "kinet/lp.hpp"
#include "kinet/qmatrix.hpp"
#include "kinet/tolerances.hpp"

namespace kinet {

// Linear subspace of Q^n, stored as the canonical RREF basis of its row space.
// Canonical storage makes equality literal matrix equality.
class Subspace {
  public:
    explicit Subspace(size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

    static Subspace row_space(const QMat& m) {
        Subspace s(m.cols());
        RrefResult r = rref(m);
        QMat b(r.rank, m.cols());
        for (size_t i = 0; i < r.rank; ++i)
            for (size_t j = 0; j < m.cols(); ++j) b(i, j) = r.mat(i, j);
        s.basis_ = std::move(b);
        return s;
    }

    static Subspace column_space(const QMat& m) { return row_space(m.transpose()); }

    static Subspace zero(size_t ambient) { return Subspace(ambient); }

    static Subspace full(size_t ambient) { return row_space(QMat::identity(ambient)); }

    static Subspace span(const std::vector<QVec>& vectors, size_t ambient) {
        return row_space(QMat::from_rows(vectors, ambient));
    }

    size_t ambient() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const QMat& basis() const { return basis_; }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    // Row-per-basis-vector matrix cast to doubles.
    Eigen::MatrixXd basis_eigen() const { return basis_.to_eigen(); }

    // Orthonormal basis as matrix columns (m x dim), for float projections.
    Eigen::MatrixXd orthonormal_columns() const {
        if (dim() == 0) return Eigen::MatrixXd(ambient_, 0);
        Eigen::MatrixXd bt = basis_.to_eigen().transpose();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(bt);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(ambient_, dim());
        return q;
    }

  private:
    size_t ambient_;
    QMat basis_;
};

inline Subspace orthogonal_complement(const Subspace& v) {
    if (v.dim() == 0) return Subspace::full(v.ambient());
    return Subspace::row_space(kernel_basis(v.basis()));
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw error("subspace sum: ambient mismatch");
    return Subspace::row_space(a.basis().vstack(b.basis()));
}

// Intersection via the kernel of [A' | -B']: coefficient pairs (u, w) with
// A'u = B'w parameterize the common vectors.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw error("subspace intersect: ambient mismatch");
    size_t da = a.dim(), db = b.dim();
    if (da == 0 || db == 0) return Subspace::zero(a.ambient());
    QMat stacked = a.basis().transpose().hstack(b.basis().transpose());
    // columns 0..da-1 carry u, columns da..da+db-1 carry w; negate the w block
    for (size_t i = 0; i < stacked.rows(); ++i)
        for (size_t j = da; j < da + db; ++j) stacked(i, j) = -stacked(i, j);
    QMat ker = kernel_basis(stacked);
    QMat vecs(ker.rows(), a.ambient());
    for (size_t r = 0; r < ker.rows(); ++r)
        for (size_t j = 0; j < a.ambient(); ++j) {
            Rat s = 0;
            for (size_t i = 0; i < da; ++i) s += ker(r, i) * a.basis()(i, j);
            vecs(r, j) = s;
        }
    return Subspace::row_space(vecs);
}

inline bool is_direct_sum(std::span<const Subspace> parts) {
    if (parts.empty()) return true;
    size_t ambient = parts[0].ambient();
    size_t total = 0;
    QMat stacked(0, ambient);
    for (const auto& p : parts) {
        if (p.ambient() != ambient) throw error("is_direct_sum: ambient mismatch");
        total += p.dim();
        stacked = stacked.vstack(p.basis());
    }
    return rank(stacked) == total;
}

inline bool is_direct_sum(const std::vector<Subspace>& parts) {
    return is_direct_sum(std::span<const Subspace>(parts.data(), parts.size()));
}

// Exact membership: v lies in V iff appending it leaves the rank unchanged.
inline bool member(const QVec& v, const Subspace& space) {
    if (v.size() != space.ambient()) throw error("member: dimension mismatch");
    if (is_zero(v)) return true;
    if (space.dim() == 0) return false;
    QMat stacked = space.basis().vstack(QMat::from_rows({v}, v.size()));
    return rank(stacked) == space.dim();
}

// Float membership with relative tolerance: distance from v to V against ||v||.
inline bool member(const Eigen::VectorXd& v, const Subspace& space, double rel_tol = tol::lin) {
    if (static_cast<size_t>(v.size()) != space.ambient())
        throw error("member: dimension mismatch");
    double norm = v.norm();
    if (space.dim() == 0) return norm <= rel_tol;
    Eigen::MatrixXd q = space.orthonormal_columns();
    double resid = (v - q * (q.transpose() * v)).norm();
    return resid <= rel_tol * std::max(1.0, norm);
}

// Searches V for a strictly positive vector by maximizing the minimum
// coordinate over the coordinate-sum-one slice of V. Exact. Returns the
// primitive integer witness when one exists.
inline std::optional<QVec> contains_positive_vector(const Subspace& v) {
    size_t n = v.ambient();
    size_t d = v.dim();
    if (d == 0 || n == 0) return std::nullopt;
    const QMat& B = v.basis();
    // Variables: c+ (d), c- (d), t+, t-, slack s (n). Constraints:
    //   sum_i B(i,j) (c+_i - c-_i) - (t+ - t-) - s_j = 0      for each j
    //   sum_j sum_i B(i,j) (c+_i - c-_i) = 1
    // Objective: maximize t+ - t- (minimize its negation).
    size_t nv = 2 * d + 2 + n;
    QMat A(n + 1, nv);
    QVec b(n + 1, Rat(0));
    QVec c(nv, Rat(0));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < d; ++i) {
            A(j, i) = B(i, j);
            A(j, d + i) = -B(i, j);
        }
        A(j, 2 * d) = -1;
        A(j, 2 * d + 1) = 1;
        A(j, 2 * d + 2 + j) = -1;
    }
    for (size_t i = 0; i < d; ++i) {
        Rat s = 0;
        for (size_t j = 0; j < n; ++j) s += B(i, j);
        A(n, i) = s;
        A(n, d + i) = -s;
    }
    b[n] = 1;
    c[2 * d] = -1;
    c[2 * d + 1] = 1;
    LpResult r = simplex_solve(A, b, c);
    if (r.status == LpStatus::unbounded) throw error("positive-vector LP unbounded");
    if (r.status != LpStatus::optimal) return std::nullopt;
    Rat t = r.x[2 * d] - r.x[2 * d + 1];
    if (t <= 0) return std::nullopt;
    QVec w(n, Rat(0));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < d; ++i) w[j] += B(i, j) * (r.x[i] - r.x[d + i]);
    return primitive(w);
}

}  // namespace kinet
