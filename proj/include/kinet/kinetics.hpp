#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "kinet/network.hpp"
#include "kinet/qmatrix.hpp"
#include "kinet/subspace.hpp"
#include "kinet/verdict.hpp"

namespace kinet {

// Power-law kinetics: exact rational kinetic-order rows (one per reaction)
// and positive float rate constants.
struct PowerLawKinetics {
    QMat f;                 // reactions x species
    std::vector<double> k;  // positive rates

    PowerLawKinetics(QMat f_, std::vector<double> k_) : f(std::move(f_)), k(std::move(k_)) {
        if (f.rows() != k.size()) throw error("kinetics: one rate per kinetic-order row required");
        for (double rate : k)
            if (!(rate > 0)) throw error("kinetics: rate constants must be positive");
    }
};

inline void require_compatible(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    if (kin.f.rows() != net.reaction_count() || kin.f.cols() != net.species_count())
        throw error("kinetics: F must be reactions x species");
}

// Mass action: kinetic-order rows equal the reactant stoichiometry.
inline PowerLawKinetics mass_action(const ReactionNetwork& net, std::vector<double> k) {
    QMat f(net.reaction_count(), net.species_count());
    for (size_t q = 0; q < net.reaction_count(); ++q)
        f.set_row(q, net.complexes()[net.reactant_of(q)]);
    return PowerLawKinetics(std::move(f), std::move(k));
}

inline bool is_reactant_determined(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    for (size_t q = 0; q < net.reaction_count(); ++q)
        for (size_t p = q + 1; p < net.reaction_count(); ++p)
            if (net.reactant_of(q) == net.reactant_of(p) && kin.f.row(q) != kin.f.row(p))
                return false;
    return true;
}

// Kinetic-order matrix: species x complexes; the column of a reactant complex
// is its shared kinetic-order row, non-reactant columns are zero.
inline QMat y_tilde(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    require_compatible(net, kin);
    if (!is_reactant_determined(net, kin))
        throw not_rdk("kinetic-order matrix requires reactant-determined kinetics");
    QMat yt(net.species_count(), net.complex_count());
    for (size_t q = 0; q < net.reaction_count(); ++q) yt.set_col(net.reactant_of(q), kin.f.row(q));
    return yt;
}

struct TMatrix {
    QMat t;                          // species x reactant complexes
    std::vector<int> reactant_cols;  // column -> complex index (increasing)
};

// Kinetic-order matrix truncated to reactant columns.
inline TMatrix t_matrix(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    QMat yt = y_tilde(net, kin);
    std::vector<int> reactants = net.reactant_complexes();
    QMat t(net.species_count(), reactants.size());
    for (size_t j = 0; j < reactants.size(); ++j) t.set_col(j, yt.col(reactants[j]));
    return {std::move(t), std::move(reactants)};
}

// T with linkage-class indicator rows appended: row m+i marks the reactant
// columns of linkage class i.
inline QMat t_hat(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    TMatrix tm = t_matrix(net, kin);
    auto d = linkage_decomposition(net);
    size_t m = net.species_count(), l = d.linkage_classes.size();
    QMat th(m + l, tm.reactant_cols.size());
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < tm.reactant_cols.size(); ++j) th(i, j) = tm.t(i, j);
    for (size_t j = 0; j < tm.reactant_cols.size(); ++j)
        th(m + d.linkage_class_of[tm.reactant_cols[j]], j) = 1;
    return th;
}

// Per-linkage-class blocks in Q^(m+1): the class's T columns with a single
// all-ones row appended.
inline std::vector<QMat> t_hat_blocks(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    TMatrix tm = t_matrix(net, kin);
    auto d = linkage_decomposition(net);
    size_t m = net.species_count();
    std::vector<QMat> blocks;
    for (size_t cls = 0; cls < d.linkage_classes.size(); ++cls) {
        std::vector<size_t> cols;
        for (size_t j = 0; j < tm.reactant_cols.size(); ++j)
            if (d.linkage_class_of[tm.reactant_cols[j]] == static_cast<int>(cls)) cols.push_back(j);
        QMat b(m + 1, cols.size());
        for (size_t jj = 0; jj < cols.size(); ++jj) {
            for (size_t i = 0; i < m; ++i) b(i, jj) = tm.t(i, cols[jj]);
            b(m, jj) = 1;
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

// Classification flags with witnesses for the false ones. Rank data is
// exposed so downgraded flags are auditable.
struct KineticsClassification {
    bool is_rdk = false;
    bool is_fsk = false;
    bool is_tik = false;
    bool is_rlk = false;
    bool is_mass_action = false;
    size_t n_r = 0;
    size_t t_rank = 0;
    size_t t_hat_rank = 0;
    std::map<std::string, std::string> witnesses;  // flag -> why it is false
};

inline KineticsClassification classify(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    require_compatible(net, kin);
    KineticsClassification c;
    c.n_r = net.reactant_complexes().size();

    c.is_rdk = true;
    for (size_t q = 0; q < net.reaction_count() && c.is_rdk; ++q)
        for (size_t p = q + 1; p < net.reaction_count(); ++p)
            if (net.reactant_of(q) == net.reactant_of(p) && kin.f.row(q) != kin.f.row(p)) {
                c.is_rdk = false;
                c.witnesses["is_rdk"] = "reactions " + std::to_string(q) + " and " +
                                        std::to_string(p) +
                                        " share a reactant but have different kinetic orders";
                break;
            }

    c.is_mass_action = true;
    for (size_t q = 0; q < net.reaction_count(); ++q)
        if (kin.f.row(q) != net.complexes()[net.reactant_of(q)]) {
            c.is_mass_action = false;
            c.witnesses["is_mass_action"] =
                "reaction " + std::to_string(q) + " kinetic order differs from reactant stoichiometry";
            break;
        }

    if (!c.is_rdk) {
        c.witnesses["is_fsk"] = "requires reactant-determined kinetics";
        c.witnesses["is_tik"] = "requires reactant-determined kinetics";
        c.witnesses["is_rlk"] = "requires reactant-determined kinetics";
        return c;
    }

    TMatrix tm = t_matrix(net, kin);
    c.is_fsk = true;
    for (size_t a = 0; a < tm.reactant_cols.size() && c.is_fsk; ++a)
        for (size_t b = a + 1; b < tm.reactant_cols.size(); ++b)
            if (tm.t.col(a) == tm.t.col(b)) {
                c.is_fsk = false;
                c.witnesses["is_fsk"] = "reactant complexes " + std::to_string(tm.reactant_cols[a]) +
                                        " and " + std::to_string(tm.reactant_cols[b]) +
                                        " share one kinetic complex";
                break;
            }

    c.t_rank = rank(tm.t);
    QMat th = t_hat(net, kin);
    c.t_hat_rank = rank(th);
    c.is_tik = (c.t_hat_rank == c.n_r);
    if (!c.is_tik)
        c.witnesses["is_tik"] = "rank of T-hat is " + std::to_string(c.t_hat_rank) + " < n_r = " +
                                std::to_string(c.n_r);

    // Reactant-set independence: T-hat rank maximal and each per-class block
    // T-hat^i of full column rank.
    c.is_rlk = c.is_tik;
    if (c.is_rlk) {
        auto blocks = t_hat_blocks(net, kin);
        for (size_t i = 0; i < blocks.size(); ++i)
            if (rank(blocks[i]) != blocks[i].cols()) {
                c.is_rlk = false;
                c.witnesses["is_rlk"] = "linkage class " + std::to_string(i) +
                                        " has dependent augmented kinetic columns";
                break;
            }
    } else {
        c.witnesses["is_rlk"] = "requires maximal T-hat rank";
    }
    return c;
}

// Direct-sum test for the per-class augmented column spaces in Q^(m+1).
inline Verdict t_hat_independence(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    Verdict v;
    v.name = "t_hat_independence";
    bool rdk = is_reactant_determined(net, kin);
    v.hypotheses.push_back({"reactant-determined kinetics", rdk,
                            rdk ? "" : "a branching reactant has two kinetic orders"});
    if (!rdk) {
        v.conclusion = Conclusion::not_applicable;
        return v;
    }
    auto blocks = t_hat_blocks(net, kin);
    std::vector<Subspace> spaces;
    Json dims = Json::array();
    size_t total = 0;
    for (const auto& b : blocks) {
        spaces.push_back(Subspace::column_space(b));
        dims.push_back(spaces.back().dim());
        total += spaces.back().dim();
    }
    bool direct = is_direct_sum(spaces);
    v.conclusion = direct ? Conclusion::holds : Conclusion::fails;
    v.payload["class_dims"] = dims;
    v.payload["dim_sum"] = total;
    QMat stacked(0, net.species_count() + 1);
    for (const auto& s : spaces) stacked = stacked.vstack(s.basis());
    v.payload["dim_join"] = rank(stacked);
    return v;
}

// The network induced on kinetic complexes.
struct KineticNetwork {
    ReactionNetwork net;
    std::vector<std::vector<int>> kinetic_of_complex;  // complex -> kinetic complex ids
};

// Builds (S, C-tilde, R-tilde): kinetic complexes are the distinct kinetic-order
// rows attached to each reactant complex; every reaction y -> y' induces all
// edges C-tilde(y) x C-tilde(y'). Requires every complex to be a reactant so
// products have kinetic images. Accepts non-RDK input (branching reactants
// then own several kinetic complexes).
inline KineticNetwork kinetic_network(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    require_compatible(net, kin);
    if (!is_cycle_terminal(net))
        throw not_cycle_terminal("kinetic network requires every complex to be a reactant");

    std::vector<QVec> kinetic_complexes;
    std::vector<std::vector<int>> of_complex(net.complex_count());
    auto intern = [&](const QVec& row) {
        for (size_t i = 0; i < kinetic_complexes.size(); ++i)
            if (kinetic_complexes[i] == row) return static_cast<int>(i);
        kinetic_complexes.push_back(row);
        return static_cast<int>(kinetic_complexes.size() - 1);
    };
    for (size_t y = 0; y < net.complex_count(); ++y)
        for (int q : net.reactions_from(static_cast<int>(y))) {
            int id = intern(kin.f.row(q));
            auto& ids = of_complex[y];
            if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
        }

    std::set<std::pair<int, int>> edges;
    for (size_t q = 0; q < net.reaction_count(); ++q)
        for (int a : of_complex[net.reactant_of(q)])
            for (int b : of_complex[net.product_of(q)]) {
                if (a == b)
                    throw invalid_network(
                        "induced kinetic structure has a self-loop; it is not a reaction network");
                edges.insert({a, b});
            }
    std::vector<std::pair<int, int>> edge_list(edges.begin(), edges.end());
    return {ReactionNetwork(net.species(), std::move(kinetic_complexes), std::move(edge_list),
                            ComplexSign::any),
            std::move(of_complex)};
}

// For cycle-terminal PL-FSK systems the complex -> kinetic-complex map is a
// digraph isomorphism; verified by exact incidence comparison under the
// induced ordering.
inline bool check_digraph_isomorphism(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    auto cls = classify(net, kin);
    if (!is_cycle_terminal(net))
        throw not_cycle_terminal("digraph comparison requires a cycle-terminal network");
    if (!cls.is_fsk) throw error("digraph comparison requires PL-FSK kinetics");
    KineticNetwork kn = kinetic_network(net, kin);
    if (kn.net.complex_count() != net.complex_count()) return false;
    std::vector<int> phi(net.complex_count());
    for (size_t y = 0; y < net.complex_count(); ++y) {
        if (kn.kinetic_of_complex[y].size() != 1) return false;
        phi[y] = kn.kinetic_of_complex[y][0];
    }
    // edge sets must correspond under phi
    std::set<std::pair<int, int>> mapped, actual;
    for (size_t q = 0; q < net.reaction_count(); ++q)
        mapped.insert({phi[net.reactant_of(q)], phi[net.product_of(q)]});
    for (size_t q = 0; q < kn.net.reaction_count(); ++q)
        actual.insert({kn.net.reactant_of(q), kn.net.product_of(q)});
    if (mapped != actual) return false;
    // incidence matrices agree entry-for-entry once columns follow the source
    // reaction order and rows are pulled back through phi
    QMat ia = incidence_matrix(net);
    QMat ia_tilde = incidence_matrix(kn.net);
    std::map<std::pair<int, int>, int> edge_index;
    for (size_t q = 0; q < kn.net.reaction_count(); ++q)
        edge_index[{kn.net.reactant_of(q), kn.net.product_of(q)}] = static_cast<int>(q);
    for (size_t q = 0; q < net.reaction_count(); ++q) {
        int qt = edge_index.at({phi[net.reactant_of(q)], phi[net.product_of(q)]});
        for (size_t i = 0; i < net.complex_count(); ++i)
            if (ia(i, q) != ia_tilde(phi[i], qt)) return false;
    }
    return true;
}

// Kinetic-order span of the reaction vectors y-tilde' - y-tilde.
inline Subspace kinetic_order_subspace(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    if (!is_cycle_terminal(net))
        throw not_cycle_terminal("kinetic-order subspace requires a cycle-terminal network");
    QMat yt = y_tilde(net, kin);
    QMat diffs(net.reaction_count(), net.species_count());
    for (size_t q = 0; q < net.reaction_count(); ++q) {
        QVec a = yt.col(net.reactant_of(q)), b = yt.col(net.product_of(q));
        for (size_t i = 0; i < net.species_count(); ++i) diffs(q, i) = b[i] - a[i];
    }
    return Subspace::row_space(diffs);
}

struct KineticDeficiencyReport {
    size_t rank = 0;            // s-tilde
    long long deficiency = 0;   // n - l - s-tilde
};

inline KineticDeficiencyReport kinetic_deficiency(const ReactionNetwork& net,
                                                  const PowerLawKinetics& kin) {
    auto d = linkage_decomposition(net);
    KineticDeficiencyReport r;
    r.rank = kinetic_order_subspace(net, kin).dim();
    r.deficiency = static_cast<long long>(net.complex_count()) -
                   static_cast<long long>(d.linkage_classes.size()) -
                   static_cast<long long>(r.rank);
    return r;
}

inline double pow_rat(double base, const Rat& e) { return std::pow(base, to_double(e)); }

// Monomial rate vector K(x): K_q = k_q * x^{F_q}. Requires x > 0.
inline Eigen::VectorXd monomial_rates(const ReactionNetwork& net, const PowerLawKinetics& kin,
                                      const Eigen::VectorXd& x) {
    require_compatible(net, kin);
    Eigen::VectorXd k(net.reaction_count());
    for (size_t q = 0; q < net.reaction_count(); ++q) {
        double v = kin.k[q];
        for (size_t i = 0; i < net.species_count(); ++i)
            if (kin.f(q, i) != 0) v *= pow_rat(x(i), kin.f(q, i));
        k(q) = v;
    }
    return k;
}

// Factor map on complexes: psi_y(x) = x^{y-tilde} for reactant complexes,
// zero for non-reactants.
inline Eigen::VectorXd factor_map(const ReactionNetwork& net, const PowerLawKinetics& kin,
                                  const Eigen::VectorXd& x) {
    QMat yt = y_tilde(net, kin);
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(net.complex_count());
    for (int y : net.reactant_complexes()) {
        double v = 1;
        for (size_t i = 0; i < net.species_count(); ++i)
            if (yt(i, y) != 0) v *= pow_rat(x(i), yt(i, y));
        psi(y) = v;
    }
    return psi;
}

// Laplacian A_k: complexes x complexes; off-diagonal (i,j) holds the rate of
// j -> i, the diagonal makes each column sum exactly zero.
inline Eigen::MatrixXd laplacian(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    require_compatible(net, kin);
    size_t n = net.complex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (size_t q = 0; q < net.reaction_count(); ++q)
        a(net.product_of(q), net.reactant_of(q)) += kin.k[q];
    for (size_t j = 0; j < n; ++j) {
        double out = 0;
        for (size_t i = 0; i < n; ++i)
            if (i != j) out += a(i, j);
        a(j, j) = -out;
    }
    return a;
}

// Ratio pi_y(x, x') = prod_s (x_s / x'_s)^{Y-tilde_sy}. Requires RDK and
// strictly positive x, x'.
inline double pi_ratio(const ReactionNetwork& net, const PowerLawKinetics& kin, int complex_index,
                       const Eigen::VectorXd& x, const Eigen::VectorXd& xp) {
    QMat yt = y_tilde(net, kin);
    double v = 1;
    for (size_t i = 0; i < net.species_count(); ++i)
        if (yt(i, complex_index) != 0) v *= pow_rat(x(i) / xp(i), yt(i, complex_index));
    return v;
}

}  // namespace kinet
