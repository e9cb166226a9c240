#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kinet/kinetics.hpp"
#include "kinet/network.hpp"
#include "kinet/tolerances.hpp"

namespace kinet {

// Species formation rate f(x) = N K(x).
inline Eigen::VectorXd sfrf(const ReactionNetwork& net, const PowerLawKinetics& kin,
                            const Eigen::VectorXd& x) {
    return stoichiometric_matrix(net).to_eigen() * monomial_rates(net, kin, x);
}

// d f / d x = N diag(K) F diag(1/x).
inline Eigen::MatrixXd sfrf_jacobian(const ReactionNetwork& net, const PowerLawKinetics& kin,
                                     const Eigen::VectorXd& x) {
    Eigen::MatrixXd nd = stoichiometric_matrix(net).to_eigen();
    Eigen::MatrixXd fd = kin.f.to_eigen();
    Eigen::VectorXd k = monomial_rates(net, kin, x);
    return nd * k.asDiagonal() * fd * x.cwiseInverse().asDiagonal();
}

// Size gauge for residual comparisons: ||N||_F * ||K(x)||.
inline double residual_scale(const ReactionNetwork& net, const PowerLawKinetics& kin,
                             const Eigen::VectorXd& x) {
    double nn = stoichiometric_matrix(net).to_eigen().norm();
    double kn = monomial_rates(net, kin, x).norm();
    return std::max(nn * kn, 1e-300);
}

inline bool is_equilibrium(const ReactionNetwork& net, const PowerLawKinetics& kin,
                           const Eigen::VectorXd& x, double rel_tol = tol::eq) {
    return sfrf(net, kin, x).norm() <= rel_tol * residual_scale(net, kin, x);
}

// Complex balance residual I_a K(x).
inline Eigen::VectorXd complex_balance_residual(const ReactionNetwork& net,
                                                const PowerLawKinetics& kin,
                                                const Eigen::VectorXd& x) {
    return incidence_matrix(net).to_eigen() * monomial_rates(net, kin, x);
}

inline bool is_complex_balanced_at(const ReactionNetwork& net, const PowerLawKinetics& kin,
                                   const Eigen::VectorXd& x, double rel_tol = tol::eq) {
    double scale = std::max(incidence_matrix(net).to_eigen().norm() *
                                monomial_rates(net, kin, x).norm(),
                            1e-300);
    return complex_balance_residual(net, kin, x).norm() <= rel_tol * scale;
}

inline Eigen::VectorXd log_translate(const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return (x.array().log() + v.array()).exp();
}

// The unique positive point of (p + V) whose log-coordinate offset from
// x_star lies in V-perp. Damped Newton on the strictly convex potential
// phi(w) = sum_i exp(c + A'w)_i - w'(A p), with A an orthonormal row basis
// of V-perp; the gradient is h(w) = A(x(w) - p).
inline Eigen::VectorXd birch_point(const Eigen::VectorXd& p, const Eigen::VectorXd& x_star,
                                   const Subspace& v, double rel_tol = 1e-13,
                                   int cap = tol::newton_cap) {
    const long m = p.size();
    Eigen::MatrixXd a = orthogonal_complement(v).orthonormal_columns().transpose();
    const long d = a.rows();
    Eigen::VectorXd c = x_star.array().log();
    if (d == 0) return c.array().exp();  // V-perp trivial: x = x_star

    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd ap = a * p;
    double gate = rel_tol * (1.0 + p.cwiseAbs().sum());
    auto potential = [&](const Eigen::VectorXd& wv) {
        return (c + a.transpose() * wv).array().exp().sum() - wv.dot(ap);
    };
    Eigen::VectorXd x = (c + a.transpose() * w).array().exp();
    double best_resid = (a * (x - p)).norm();
    Eigen::VectorXd best_x = x;
    for (int iter = 0; iter < cap; ++iter) {
        Eigen::VectorXd h = a * (x - p);
        double hn = h.norm();
        if (hn < best_resid) {
            best_resid = hn;
            best_x = x;
        }
        if (hn <= gate) return x;
        Eigen::MatrixXd jac = a * x.asDiagonal() * a.transpose();
        Eigen::VectorXd step = jac.llt().solve(-h);
        double log_move = (a.transpose() * step).cwiseAbs().maxCoeff();
        if (log_move > 30.0) step *= 30.0 / log_move;  // keep exp in range
        // inside the quadratic basin the line search only measures rounding
        // noise; take plain Newton steps there
        if (hn <= 1e-6 * (1.0 + p.cwiseAbs().sum())) {
            w += step;
        } else {
            double phi0 = potential(w);
            double slope = h.dot(step);
            double alpha = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 60; ++bt) {
                Eigen::VectorXd wn = w + alpha * step;
                double phin = potential(wn);
                if (std::isfinite(phin) && phin <= phi0 + 1e-4 * alpha * slope) {
                    w = wn;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }
        x = (c + a.transpose() * w).array().exp();
    }
    Eigen::VectorXd h = a * (x - p);
    if (h.norm() <= gate) return x;
    throw no_convergence("birch point solve did not converge",
                         std::vector<double>(best_x.data(), best_x.data() + m), best_resid);
}

struct EquilibriumPoint {
    Eigen::VectorXd x;
    double residual = 0;            // ||f(x)|| / scale(x)
    bool complex_balanced = false;  // ||I_a K(x)|| small at the same gauge
};

struct EquilibriaAtlas {
    Eigen::VectorXd anchor;
    std::uint64_t seed = 0;
    int starts = 0;
    int failed_starts = 0;
    std::vector<EquilibriumPoint> points;  // deduplicated, deterministic order
};

struct FindOptions {
    int starts = 64;
    std::uint64_t seed = tol::default_seed;
};

// Multistart damped Newton for positive equilibria in the stoichiometric
// class of the anchor. The search runs in class coordinates x = p + B u with
// B an orthonormal basis of S, so every iterate stays in the class; a
// fraction-to-boundary cap keeps iterates strictly positive. Start points are
// log-uniform perturbations of the anchor projected back onto the class
// through their Birch points. Deterministic for a fixed seed.
inline EquilibriaAtlas find_equilibria(const ReactionNetwork& net, const PowerLawKinetics& kin,
                                       const Eigen::VectorXd& anchor,
                                       const FindOptions& opts = {}) {
    require_compatible(net, kin);
    if ((anchor.array() <= 0).any()) throw error("find_equilibria: anchor must be positive");
    EquilibriaAtlas atlas;
    atlas.anchor = anchor;
    atlas.seed = opts.seed;
    atlas.starts = opts.starts;

    Subspace s = stoichiometric_subspace(net);
    Eigen::MatrixXd b = s.orthonormal_columns();  // m x dim(S)
    const long sd = b.cols();
    const long m = anchor.size();

    std::vector<Eigen::VectorXd> found;
    auto try_accept = [&](const Eigen::VectorXd& x) {
        double resid = sfrf(net, kin, x).norm() / residual_scale(net, kin, x);
        if (resid > tol::eq) return false;
        found.push_back(x);
        return true;
    };

    auto newton_from = [&](Eigen::VectorXd x0) -> bool {
        Eigen::VectorXd u = b.transpose() * (x0 - anchor);
        Eigen::VectorXd x = anchor + b * u;
        if ((x.array() <= 0).any()) return false;
        for (int iter = 0; iter < tol::newton_cap; ++iter) {
            // iterates drifting to the boundary or to infinity are divergent;
            // underflowed monomials would otherwise fake a zero residual
            if ((x.array() / anchor.array()).log().abs().maxCoeff() > 60.0) return false;
            Eigen::VectorXd f = sfrf(net, kin, x);
            double scale = residual_scale(net, kin, x);
            double fn = f.norm();
            if (fn <= 1e-13 * scale) return try_accept(x);
            Eigen::VectorXd g = b.transpose() * f;
            Eigen::MatrixXd jg = b.transpose() * sfrf_jacobian(net, kin, x) * b;
            Eigen::VectorXd du = jg.colPivHouseholderQr().solve(-g);
            if (!du.allFinite()) return false;
            Eigen::VectorXd dx = b * du;
            double alpha = 1.0;
            for (long i = 0; i < m; ++i)
                if (dx(i) < 0) alpha = std::min(alpha, -0.99 * x(i) / dx(i));
            double g0 = g.squaredNorm();
            bool moved = false;
            if (fn <= 1e-7 * scale) {
                // endgame: the sufficient-decrease test is rounding noise here
                Eigen::VectorXd xn = x + alpha * dx;
                if (!(xn.array() > 0).all()) return fn <= tol::eq * scale && try_accept(x);
                x = xn;
                moved = true;
            }
            for (int bt = 0; !moved && bt < 40; ++bt) {
                Eigen::VectorXd xn = x + alpha * dx;
                if ((xn.array() > 0).all()) {
                    Eigen::VectorXd gn = b.transpose() * sfrf(net, kin, xn);
                    if (gn.squaredNorm() <= (1.0 - 1e-4 * alpha) * g0) {
                        x = xn;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            // a stall at an already-acceptable residual still counts
            if (!moved) return fn <= tol::eq * scale && try_accept(x);
        }
        return false;
    };

    if (!newton_from(anchor)) ++atlas.failed_starts;
    for (int start = 1; start < opts.starts; ++start) {
        std::mt19937_64 rng(opts.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(start)));
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        Eigen::VectorXd xi(sd);
        for (long i = 0; i < sd; ++i) xi(i) = u(rng);
        Eigen::VectorXd x_tilde = (anchor.array().log() + (b * xi).array()).exp();
        try {
            Eigen::VectorXd x0 = birch_point(anchor, x_tilde, s);
            if (!newton_from(x0)) ++atlas.failed_starts;
        } catch (const no_convergence&) {
            ++atlas.failed_starts;
        }
    }

    // deterministic merge: sort by log coordinates, then cluster
    std::sort(found.begin(), found.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& c) {
        for (long i = 0; i < a.size(); ++i)
            if (a(i) != c(i)) return a(i) < c(i);
        return false;
    });
    for (const auto& x : found) {
        bool dup = false;
        for (const auto& kept : atlas.points)
            if ((x.array().log() - kept.x.array().log()).abs().maxCoeff() <= tol::dedupe) {
                dup = true;
                break;
            }
        if (dup) continue;
        EquilibriumPoint pt;
        pt.x = x;
        pt.residual = sfrf(net, kin, x).norm() / residual_scale(net, kin, x);
        pt.complex_balanced = is_complex_balanced_at(net, kin, x);
        atlas.points.push_back(std::move(pt));
    }
    return atlas;
}

// Membership of x in the LP-set Q(x_ref) = {x > 0 : log x - log x_ref in V-perp},
// V the kinetic-order (flux) subspace.
inline bool lp_set_membership(const Eigen::VectorXd& x, const Eigen::VectorXd& x_ref,
                              const Subspace& flux, double rel_tol = tol::lin) {
    Eigen::VectorXd delta = x.array().log() - x_ref.array().log();
    return member(delta, orthogonal_complement(flux), rel_tol);
}

struct ReferenceSet {
    std::vector<int> references;                 // atlas indices, one per LP-set
    std::vector<int> lp_set_of;                  // atlas point -> index into references
    std::vector<std::pair<int, int>> collisions; // distinct points sharing one LP-set
};

// Greedy partition of the atlas points into LP-sets.
inline ReferenceSet reference_equilibria(const EquilibriaAtlas& atlas, const Subspace& flux) {
    ReferenceSet rs;
    rs.lp_set_of.assign(atlas.points.size(), -1);
    for (size_t i = 0; i < atlas.points.size(); ++i) {
        bool placed = false;
        for (size_t r = 0; r < rs.references.size(); ++r) {
            if (lp_set_membership(atlas.points[i].x, atlas.points[rs.references[r]].x, flux)) {
                rs.lp_set_of[i] = static_cast<int>(r);
                rs.collisions.push_back({rs.references[r], static_cast<int>(i)});
                placed = true;
                break;
            }
        }
        if (!placed) {
            rs.lp_set_of[i] = static_cast<int>(rs.references.size());
            rs.references.push_back(static_cast<int>(i));
        }
    }
    return rs;
}

// Per-linkage-class equilibrium flags: does x zero the formation rate of each
// class subnetwork (restricted reactions, same species space)?
inline std::vector<bool> per_linkage_equilibria(const ReactionNetwork& net,
                                                const PowerLawKinetics& kin,
                                                const Eigen::VectorXd& x,
                                                double rel_tol = tol::eq) {
    std::vector<bool> flags;
    for (const auto& sub : linkage_subnetworks(net)) {
        QMat f(sub.reaction_ids.size(), net.species_count());
        std::vector<double> k;
        for (size_t q = 0; q < sub.reaction_ids.size(); ++q) {
            f.set_row(q, kin.f.row(sub.reaction_ids[q]));
            k.push_back(kin.k[sub.reaction_ids[q]]);
        }
        PowerLawKinetics sub_kin(std::move(f), std::move(k));
        flags.push_back(is_equilibrium(sub.net, sub_kin, x, rel_tol));
    }
    return flags;
}

}  // namespace kinet
