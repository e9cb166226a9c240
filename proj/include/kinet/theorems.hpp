#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "kinet/equilibria.hpp"
#include "kinet/kinetics.hpp"
#include "kinet/network.hpp"
#include "kinet/verdict.hpp"

namespace kinet {

namespace detail {

inline Json eigen_to_json(const Eigen::VectorXd& v) {
    Json j = Json::array();
    for (long i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

inline std::string classification_witness(const KineticsClassification& c, const std::string& key,
                                          const std::string& ok_text) {
    auto it = c.witnesses.find(key);
    return it == c.witnesses.end() ? ok_text : it->second;
}

}  // namespace detail

// Log-parametrized equilibrium structure: under cycle-terminal factor-span
// kinetics with independent linkage classes, the positive equilibria in one
// stoichiometric class are pairwise non-equivalent modulo the kinetic flux
// subspace, so each one is the reference point of a distinct LP set.
inline Verdict poly_plp_verdict(const ReactionNetwork& net, const PowerLawKinetics& kin,
                                const EquilibriaAtlas& atlas) {
    require_compatible(net, kin);
    Verdict v;
    v.name = "poly_plp";

    bool ct = is_cycle_terminal(net);
    v.hypotheses.push_back({"cycle_terminal", ct,
                            ct ? "every complex is a reactant" : "some complex never reacts"});
    auto cls = classify(net, kin);
    v.hypotheses.push_back({"factor_span_kinetics", cls.is_fsk,
                            detail::classification_witness(cls, "is_fsk",
                                                           "branching reactant monomials coincide")});
    Verdict ilc = has_independent_linkage_classes(net);
    bool ilc_ok = ilc.conclusion == Conclusion::holds;
    v.hypotheses.push_back({"independent_linkage_classes", ilc_ok,
                            ilc_ok ? "deficiency splits across classes"
                                   : "deficiency exceeds the class sum"});
    bool have_points = !atlas.points.empty();
    v.hypotheses.push_back({"equilibria_found", have_points,
                            have_points ? std::to_string(atlas.points.size()) + " point(s) in the class"
                                        : "empty atlas"});
    if (!v.all_hypotheses_hold()) {
        v.conclusion = Conclusion::not_applicable;
        return v;
    }

    Subspace flux = kinetic_order_subspace(net, kin);
    v.payload["flux_subspace_dim"] = flux.dim();
    v.payload["lp_set_dim"] = flux.ambient() - flux.dim();
    v.payload["mu"] = atlas.points.size();
    Json refs = Json::array();
    for (const auto& pt : atlas.points) refs.push_back(detail::eigen_to_json(pt.x));
    v.payload["reference_points"] = refs;

    // distinct equilibria in one class must lie in distinct LP sets
    for (size_t i = 0; i < atlas.points.size(); ++i)
        for (size_t j = i + 1; j < atlas.points.size(); ++j)
            if (lp_set_membership(atlas.points[i].x, atlas.points[j].x, flux) ||
                lp_set_membership(atlas.points[j].x, atlas.points[i].x, flux)) {
                v.conclusion = Conclusion::fails;
                v.payload["violation"] = {{"first", detail::eigen_to_json(atlas.points[i].x)},
                                          {"second", detail::eigen_to_json(atlas.points[j].x)}};
                return v;
            }
    v.payload["pairwise_disjoint"] = true;
    v.conclusion = Conclusion::holds;
    return v;
}

struct StitchResult {
    Eigen::VectorXd x;              // reconstructed global equilibrium
    Eigen::VectorXd class_scalars;  // per-class log scaling of the monomial data
    double system_residual = 0;     // least-squares residual of the stacked system
};

// Assembles a global equilibrium from one positive equilibrium per linkage
// class subnetwork: stack the per-class reactant monomial values, solve
// T-hat' (u; w) = log v, and exponentiate the species block. Consistency of
// the stacked system is exactly what T-hat independence guarantees.
inline StitchResult stitch_global_equilibrium(const ReactionNetwork& net,
                                              const PowerLawKinetics& kin,
                                              const std::vector<Eigen::VectorXd>& per_class_x) {
    auto d = linkage_decomposition(net);
    size_t ell = d.linkage_classes.size();
    if (per_class_x.size() != ell)
        throw error("stitch_global_equilibrium: need one point per linkage class");
    size_t m = net.species_count();

    auto tm = t_matrix(net, kin);
    QMat th = t_hat(net, kin);
    Eigen::MatrixXd a = th.to_eigen().transpose();  // n_r x (m + ell)
    Eigen::VectorXd rhs(tm.reactant_cols.size());
    for (size_t j = 0; j < tm.reactant_cols.size(); ++j) {
        int y = tm.reactant_cols[j];
        int cls = d.linkage_class_of[y];
        double v = factor_map(net, kin, per_class_x[cls])(y);
        if (!(v > 0)) throw error("stitch_global_equilibrium: non-positive monomial value");
        rhs(j) = std::log(v);
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    Eigen::VectorXd z = cod.solve(rhs);
    double resid = (a * z - rhs).norm();
    if (resid > 1e-8 * (1.0 + rhs.norm()))
        throw inconsistent_system("stacked monomial system is inconsistent", resid);

    StitchResult r;
    r.x = z.head(m).array().exp();
    r.class_scalars = z.tail(ell);
    r.system_residual = resid;
    return r;
}

// Existence transfer: with reactant-determined kinetics, independent linkage
// classes, and T-hat independence, a global positive equilibrium exists iff
// every linkage class subnetwork has one. The verdict searches each class
// subnetwork from the anchor and, on success, reconstructs and verifies a
// global equilibrium.
inline Verdict t_hat_existence_verdict(const ReactionNetwork& net, const PowerLawKinetics& kin,
                                       const Eigen::VectorXd& anchor,
                                       const FindOptions& opts = {}) {
    require_compatible(net, kin);
    Verdict v;
    v.name = "t_hat_existence";

    auto cls = classify(net, kin);
    v.hypotheses.push_back({"reactant_determined", cls.is_rdk,
                            detail::classification_witness(cls, "is_rdk",
                                                           "one kinetic order row per reactant")});
    Verdict ilc = has_independent_linkage_classes(net);
    bool ilc_ok = ilc.conclusion == Conclusion::holds;
    v.hypotheses.push_back({"independent_linkage_classes", ilc_ok,
                            ilc_ok ? "deficiency splits across classes"
                                   : "deficiency exceeds the class sum"});
    bool th_ok = false;
    if (cls.is_rdk) {
        Verdict th = t_hat_independence(net, kin);
        th_ok = th.conclusion == Conclusion::holds;
    }
    v.hypotheses.push_back({"t_hat_independence", th_ok,
                            th_ok ? "class blocks span a direct sum" : "class block spans overlap"});
    if (!v.all_hypotheses_hold()) {
        v.conclusion = Conclusion::not_applicable;
        return v;
    }

    std::vector<Eigen::VectorXd> per_class;
    Json class_points = Json::array();
    for (const auto& sub : linkage_subnetworks(net)) {
        QMat f(sub.reaction_ids.size(), net.species_count());
        std::vector<double> k;
        for (size_t q = 0; q < sub.reaction_ids.size(); ++q) {
            f.set_row(q, kin.f.row(sub.reaction_ids[q]));
            k.push_back(kin.k[sub.reaction_ids[q]]);
        }
        PowerLawKinetics sub_kin(std::move(f), std::move(k));
        auto atlas = find_equilibria(sub.net, sub_kin, anchor, opts);
        if (atlas.points.empty()) {
            v.conclusion = Conclusion::evidence_only;
            v.payload["note"] = "no equilibrium found for linkage class " +
                                std::to_string(per_class.size()) + "; existence undecided";
            return v;
        }
        per_class.push_back(atlas.points.front().x);
        class_points.push_back(detail::eigen_to_json(per_class.back()));
    }
    v.payload["class_equilibria"] = class_points;

    StitchResult stitched;
    try {
        stitched = stitch_global_equilibrium(net, kin, per_class);
    } catch (const inconsistent_system& e) {
        v.conclusion = Conclusion::fails;
        v.payload["stacked_residual"] = e.residual;
        return v;
    }
    double resid = sfrf(net, kin, stitched.x).norm() / residual_scale(net, kin, stitched.x);
    auto flags = per_linkage_equilibria(net, kin, stitched.x);
    bool all_classes = std::all_of(flags.begin(), flags.end(), [](bool b) { return b; });

    v.payload["x"] = detail::eigen_to_json(stitched.x);
    v.payload["residual"] = resid;
    v.payload["stacked_residual"] = stitched.system_residual;
    v.payload["per_class_balanced"] = all_classes;
    v.conclusion = (resid <= tol::eq && all_classes) ? Conclusion::holds : Conclusion::fails;
    return v;
}

// Absolute complex balancing decision tree. The question applies to complex
// balanced systems (certified structurally by weak reversibility with zero
// kinetic deficiency, or evidenced by a balanced atlas point). Two verified
// equilibria in one class certify the negative; a single one with zero
// deficiency closes the positive via the classical deficiency-zero result;
// otherwise the atlas only provides monostationary evidence.
inline Verdict acb_verdict(const ReactionNetwork& net, const PowerLawKinetics& kin,
                           const EquilibriaAtlas& atlas) {
    Verdict v;
    v.name = "absolute_complex_balance";

    Verdict plp = poly_plp_verdict(net, kin, atlas);
    bool plp_ok = plp.conclusion == Conclusion::holds;
    v.hypotheses.push_back({"poly_plp", plp_ok,
                            plp_ok ? "log-parametrized equilibrium structure established"
                                   : "prerequisite verdict: " + std::string(to_string(plp.conclusion))});

    bool wr = is_weakly_reversible(net);
    bool certified_cb = false;
    long long kin_def = 0;
    if (is_cycle_terminal(net) && is_reactant_determined(net, kin)) {
        kin_def = kinetic_deficiency(net, kin).deficiency;
        certified_cb = wr && kin_def == 0;
    }
    bool evidenced_cb = std::any_of(atlas.points.begin(), atlas.points.end(),
                                    [](const EquilibriumPoint& p) { return p.complex_balanced; });
    std::string cb_note = certified_cb
                              ? "weakly reversible with zero kinetic deficiency"
                              : (evidenced_cb ? "balanced atlas point found"
                                              : "no certificate and no balanced point");
    v.hypotheses.push_back({"complex_balanced", certified_cb || evidenced_cb, cb_note});
    v.payload["complex_balance_certified"] = certified_cb;
    v.payload["complex_balance_evidenced"] = evidenced_cb;

    if (!v.all_hypotheses_hold()) {
        v.conclusion = Conclusion::not_applicable;
        return v;
    }

    size_t mu = atlas.points.size();
    v.payload["mu"] = mu;
    if (mu >= 2) {
        // two equilibria in one stoichiometric class: multistationarity is
        // certified, and with the LP structure that refutes absoluteness
        v.payload["witness"] = {{"first", detail::eigen_to_json(atlas.points[0].x)},
                                {"second", detail::eigen_to_json(atlas.points[1].x)}};
        v.conclusion = Conclusion::fails;
        return v;
    }
    if (deficiency(net).deficiency == 0) {
        v.payload["certificate"] = "complex balanced with zero deficiency";
        v.conclusion = Conclusion::holds;
        return v;
    }
    v.payload["note"] = "single equilibrium found; absoluteness not certified";
    v.conclusion = Conclusion::evidence_only;
    return v;
}

enum class AcrTransform { identity, log };

struct AcrReport {
    std::vector<bool> acr;  // per species: consistent with concentration robustness
    size_t span_dim = 0;    // dimension of the equilibrium difference span
    size_t bound = 0;       // upper bound on the number of robust species
};

// Difference-span criterion: species s is robustness-consistent when the span
// of pairwise differences of (transformed) equilibria lies in the hyperplane
// of zero s-coordinate.
inline AcrReport acr_general(const std::vector<Eigen::VectorXd>& points, AcrTransform transform) {
    if (points.empty()) throw error("acr_general: no equilibria given");
    const long m = points.front().size();
    AcrReport rep;
    Eigen::MatrixXd diffs(static_cast<long>(points.size()) - 1, m);
    for (size_t j = 1; j < points.size(); ++j) {
        Eigen::VectorXd d = transform == AcrTransform::log
                                ? Eigen::VectorXd((points[j].array().log() -
                                                   points[0].array().log()).matrix())
                                : Eigen::VectorXd(points[j] - points[0]);
        diffs.row(static_cast<long>(j) - 1) = d;
    }
    rep.acr.assign(m, true);
    if (diffs.rows() == 0) {
        rep.span_dim = 0;
        rep.bound = m;
        return rep;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeThinV);
    double sigma_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    long rank = 0;
    for (long i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol::lin * std::max(1.0, sigma_max)) ++rank;
    for (long s = 0; s < m; ++s)
        for (long i = 0; i < rank; ++i)
            if (std::abs(svd.matrixV()(s, i)) > tol::lin) rep.acr[s] = false;
    rep.span_dim = rank;
    rep.bound = m - rank;
    return rep;
}

// Robustness test for log-parametrized systems: species s is robust iff both
// the exact flux complement and the span of reference log-ratios lie in the
// zero-s hyperplane. The bound is dim of the intersection of the flux
// subspace with the reference flux subspace.
inline AcrReport acr_poly_plp(const Subspace& p_e,
                              const std::vector<Eigen::VectorXd>& reference_points) {
    if (reference_points.empty()) throw error("acr_poly_plp: no reference equilibria");
    const size_t m = p_e.ambient();
    Subspace perp = orthogonal_complement(p_e);
    AcrReport rep;
    rep.acr.assign(m, true);
    for (size_t i = 0; i < perp.dim(); ++i)
        for (size_t s = 0; s < m; ++s)
            if (perp.basis()(i, s) != 0) rep.acr[s] = false;

    std::vector<Eigen::VectorXd> log_diffs;
    for (size_t j = 1; j < reference_points.size(); ++j)
        log_diffs.push_back(reference_points[j].array().log() -
                            reference_points[0].array().log());
    for (const auto& d : log_diffs) {
        double norm = d.norm();
        for (size_t s = 0; s < m; ++s)
            if (std::abs(d(s)) > tol::lin * std::max(1.0, norm)) rep.acr[s] = false;
    }

    Eigen::MatrixXd stacked(perp.dim() + log_diffs.size(), m);
    if (perp.dim() > 0) stacked.topRows(perp.dim()) = perp.basis_eigen();
    for (size_t j = 0; j < log_diffs.size(); ++j)
        stacked.row(perp.dim() + j) = log_diffs[j];
    long rank = 0;
    if (stacked.rows() > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
        double sigma_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        for (long i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > tol::lin * std::max(1.0, sigma_max)) ++rank;
    }
    rep.span_dim = rank;
    rep.bound = m - rank;  // dim of the intersection of the two flux subspaces
    return rep;
}

// Positive-vector screen on the combined complement: a strictly positive
// vector in the span rules out robustness in every species. The exact flux
// complement is tried first for an exact certificate; reference log-ratios
// are rationalized and joined for an evidence-level answer.
inline Verdict positive_vector_screen(const Subspace& p_e_perp,
                                      const std::vector<Eigen::VectorXd>& log_diffs) {
    Verdict v;
    v.name = "positive_vector_screen";
    v.hypotheses.push_back({"spans_provided", true,
                            "complement dim " + std::to_string(p_e_perp.dim()) + ", " +
                                std::to_string(log_diffs.size()) + " reference ratio(s)"});

    if (auto w = contains_positive_vector(p_e_perp)) {
        Json jw = Json::array();
        for (const auto& c : *w) jw.push_back(rat_to_string(c));
        v.payload["witness"] = jw;
        v.payload["exact"] = true;
        v.conclusion = Conclusion::holds;
        return v;
    }
    if (!log_diffs.empty()) {
        QMat extra(log_diffs.size(), p_e_perp.ambient());
        for (size_t j = 0; j < log_diffs.size(); ++j)
            for (size_t s = 0; s < p_e_perp.ambient(); ++s)
                extra(j, s) = rat_approx(log_diffs[j](static_cast<long>(s)));
        Subspace combined = sum(p_e_perp, Subspace::row_space(extra));
        if (auto w = contains_positive_vector(combined)) {
            Json jw = Json::array();
            for (const auto& c : *w) jw.push_back(rat_to_string(c));
            v.payload["witness"] = jw;
            v.payload["exact"] = false;
            v.conclusion = Conclusion::evidence_only;
            return v;
        }
    }
    v.conclusion = Conclusion::fails;
    return v;
}

}  // namespace kinet
