#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kinet/theorems.hpp"

namespace kinet {

struct ReportOptions {
    std::string name;
    Eigen::VectorXd anchor;  // empty: all-ones
    int starts = 64;
    std::uint64_t seed = tol::default_seed;
};

namespace detail {

inline Json rat_vec_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rat_to_string(x));
    return a;
}

inline Json rat_mat_json(const QMat& q) {
    Json a = Json::array();
    for (size_t i = 0; i < q.rows(); ++i) a.push_back(rat_vec_json(q.row(i)));
    return a;
}

inline Json vec_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

}  // namespace detail

// Full machine-readable analysis: structure, classification, equilibrium
// atlas, and every theorem verdict, under one stable schema.
inline Json build_report(const ReactionNetwork& net, const PowerLawKinetics& kin,
                         const ReportOptions& opts = {}) {
    require_compatible(net, kin);
    const size_t m = net.species_count();

    Json j;
    j["schema"] = 1;
    j["name"] = opts.name;

    {
        Json nw;
        nw["species"] = net.species();
        Json cx = Json::array();
        for (const auto& c : net.complexes()) cx.push_back(detail::rat_vec_json(c));
        nw["complexes"] = cx;
        Json rx = Json::array();
        for (size_t q = 0; q < net.reaction_count(); ++q) {
            Json r;
            r["reactant"] = net.reactant_of(q);
            r["product"] = net.product_of(q);
            r["k"] = kin.k[q];
            r["f"] = detail::rat_vec_json(kin.f.row(q));
            rx.push_back(std::move(r));
        }
        nw["reactions"] = rx;
        j["network"] = std::move(nw);
    }

    auto dec = linkage_decomposition(net);
    auto def = deficiency(net);
    auto cons = is_conservative(net);
    Verdict ilc = has_independent_linkage_classes(net);
    {
        Json st;
        st["species"] = m;
        st["complexes"] = net.complex_count();
        st["reactions"] = net.reaction_count();
        st["reactant_complexes"] = dec.reactant_complex_count;
        st["linkage_classes"] = dec.linkage_classes.size();
        st["strong_classes"] = dec.strong_classes.size();
        st["terminal_strong_classes"] = dec.terminal_strong_classes.size();
        st["weakly_reversible"] = is_weakly_reversible(net);
        st["cycle_terminal"] = is_cycle_terminal(net);
        st["t_minimal"] = is_t_minimal(net);
        st["rank"] = def.rank;
        st["deficiency"] = def.deficiency;
        st["conservative"] = cons.conservative;
        st["conservation_witness"] =
            cons.witness ? detail::rat_vec_json(*cons.witness) : Json(nullptr);
        st["independent_linkage_classes"] = ilc.conclusion == Conclusion::holds;
        j["structure"] = std::move(st);
    }

    auto cls = classify(net, kin);
    {
        Json cj;
        cj["reactant_determined"] = cls.is_rdk;
        cj["factor_span"] = cls.is_fsk;
        cj["t_independent"] = cls.is_tik;
        cj["rate_linkage"] = cls.is_rlk;
        cj["mass_action"] = cls.is_mass_action;
        cj["t_rank"] = cls.t_rank;
        cj["t_hat_rank"] = cls.t_hat_rank;
        Json w = Json::object();
        for (const auto& [flag, why] : cls.witnesses) w[flag] = why;
        cj["witnesses"] = std::move(w);
        j["classification"] = std::move(cj);
    }

    {
        Json kj;
        if (cls.is_rdk) {
            auto kdef = kinetic_deficiency(net, kin);
            kj["kinetic_rank"] = kdef.rank;
            kj["kinetic_deficiency"] = kdef.deficiency;
            kj["t_hat"] = detail::rat_mat_json(t_hat(net, kin));
            kj["kinetic_order_subspace"] =
                detail::rat_mat_json(kinetic_order_subspace(net, kin).basis());
        } else {
            kj["kinetic_rank"] = nullptr;
            kj["kinetic_deficiency"] = nullptr;
            kj["note"] = "kinetic quantities need reactant-determined orders";
        }
        j["kinetics"] = std::move(kj);
    }

    Eigen::VectorXd anchor = opts.anchor.size()
                                 ? opts.anchor
                                 : Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
    FindOptions fopts;
    fopts.starts = opts.starts;
    fopts.seed = opts.seed;
    EquilibriaAtlas atlas = find_equilibria(net, kin, anchor, fopts);
    {
        Json ej;
        ej["anchor"] = detail::vec_json(atlas.anchor);
        ej["seed"] = atlas.seed;
        ej["starts"] = atlas.starts;
        ej["failed_starts"] = atlas.failed_starts;
        Json pts = Json::array();
        for (const auto& p : atlas.points) {
            Json pj;
            pj["x"] = detail::vec_json(p.x);
            pj["residual"] = p.residual;
            pj["complex_balanced"] = p.complex_balanced;
            pts.push_back(std::move(pj));
        }
        ej["points"] = std::move(pts);
        if (cls.is_rdk && !atlas.points.empty()) {
            auto rs = reference_equilibria(atlas, kinetic_order_subspace(net, kin));
            Json rj;
            rj["references"] = rs.references;
            rj["lp_set_of"] = rs.lp_set_of;
            Json col = Json::array();
            for (const auto& [a, b] : rs.collisions) col.push_back({a, b});
            rj["collisions"] = std::move(col);
            ej["lp_sets"] = std::move(rj);
        }
        j["equilibria"] = std::move(ej);
    }

    {
        Json vj;
        vj["independent_linkage_classes"] = ilc.to_json();
        if (cls.is_rdk) vj["t_hat_independence"] = t_hat_independence(net, kin).to_json();
        Verdict plp = poly_plp_verdict(net, kin, atlas);
        vj["poly_plp"] = plp.to_json();
        vj["absolute_complex_balance"] = acb_verdict(net, kin, atlas).to_json();
        vj["stacked_existence"] = t_hat_existence_verdict(net, kin, anchor, fopts).to_json();

        Json aj;
        if (plp.conclusion == Conclusion::holds && cls.is_rdk) {
            Subspace flux = kinetic_order_subspace(net, kin);
            auto rs = reference_equilibria(atlas, flux);
            std::vector<Eigen::VectorXd> refs;
            for (int idx : rs.references) refs.push_back(atlas.points[idx].x);
            auto rep = acr_poly_plp(flux, refs);
            aj["criterion"] = "log_parametrized";
            aj["acr"] = rep.acr;
            aj["span_dim"] = rep.span_dim;
            aj["bound"] = rep.bound;
            std::vector<Eigen::VectorXd> diffs;
            for (size_t i = 1; i < refs.size(); ++i)
                diffs.push_back((refs[i].array().log() - refs[0].array().log()).matrix());
            aj["screen"] = positive_vector_screen(orthogonal_complement(flux), diffs).to_json();
        } else if (atlas.points.size() >= 1) {
            std::vector<Eigen::VectorXd> pts;
            for (const auto& p : atlas.points) pts.push_back(p.x);
            auto rep = acr_general(pts, AcrTransform::log);
            aj["criterion"] = "log_difference";
            aj["acr"] = rep.acr;
            aj["span_dim"] = rep.span_dim;
            aj["bound"] = rep.bound;
        } else {
            aj["criterion"] = nullptr;
            aj["note"] = "no equilibria located";
        }
        vj["robustness"] = std::move(aj);
        j["verdicts"] = std::move(vj);
    }

    {
        Json tj;
        tj["lin"] = tol::lin;
        tj["eq"] = tol::eq;
        tj["dedupe"] = tol::dedupe;
        tj["newton_cap"] = tol::newton_cap;
        j["tolerances"] = std::move(tj);
    }
    return j;
}

}  // namespace kinet
