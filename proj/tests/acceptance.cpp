// Acceptance gate: ten end-to-end checks over the shipped network files.
// Each criterion prints exactly one PASS/FAIL line and enforces its own
// runtime budget; run with a criterion name to execute just that one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kinet/parser.hpp"
#include "kinet/report.hpp"

using namespace kinet;

namespace {

std::vector<std::string> failures;

void fail(const std::string& why) { failures.push_back(why); }

#define REQUIRE_OR_FAIL(cond, why) \
    do {                           \
        if (!(cond)) {             \
            fail(why);             \
            return;                \
        }                          \
    } while (0)

#define CHECK_OR_NOTE(cond, why) \
    do {                         \
        if (!(cond)) fail(why);  \
    } while (0)

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) {
        fail("cannot open " + path);
        return {};
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CompiledModel load(const std::string& name) {
    auto r = compile_network(slurp(std::string(KINET_DATA_DIR) + "/" + name));
    if (!r.model) {
        for (const auto& d : r.diagnostics) fail(name + ": " + d.render());
        throw error("cannot load " + name);
    }
    return *r.model;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double t : v) x(i++) = t;
    return x;
}

// ---------------------------------------------------------------------------
// 1. Structure and classification of the flagship cycle, exact, from its file.

void c01_structure_end_to_end() {
    auto [net, kin] = load("inhibitor_cycle.crn");
    auto dec = linkage_decomposition(net);
    auto def = deficiency(net);
    auto kdef = kinetic_deficiency(net, kin);
    auto cls = classify(net, kin);

    CHECK_OR_NOTE(net.complex_count() == 4, "n != 4");
    CHECK_OR_NOTE(dec.linkage_classes.size() == 1, "l != 1");
    CHECK_OR_NOTE(dec.strong_classes.size() == 1, "sl != 1");
    CHECK_OR_NOTE(dec.terminal_strong_classes.size() == 1, "t != 1");
    CHECK_OR_NOTE(dec.reactant_complex_count == 4, "n_r != 4");
    CHECK_OR_NOTE(is_weakly_reversible(net), "not weakly reversible");
    CHECK_OR_NOTE(is_cycle_terminal(net), "not cycle terminal");
    CHECK_OR_NOTE(def.rank == 1, "rank != 1");
    CHECK_OR_NOTE(def.deficiency == 2, "deficiency != 2");
    CHECK_OR_NOTE(kdef.rank == 3, "kinetic rank != 3");
    CHECK_OR_NOTE(kdef.deficiency == 0, "kinetic deficiency != 0");
    CHECK_OR_NOTE(cls.is_rdk, "not reactant determined");
    CHECK_OR_NOTE(cls.is_fsk, "not factor span");
    CHECK_OR_NOTE(cls.is_rlk, "not rate-linkage");
    CHECK_OR_NOTE(cls.is_tik, "not T-independent");
    CHECK_OR_NOTE(!cls.is_mass_action, "unexpectedly mass action");
    CHECK_OR_NOTE(has_independent_linkage_classes(net).conclusion == Conclusion::holds,
                  "linkage classes not independent");

    QMat expected{{Rat(0), Rat(-1), Rat(0), Rat(0)},
                  {Rat(-1), Rat(-1), Rat(-2), Rat(0)},
                  {Rat(1), Rat(1), Rat(0), Rat(-2)},
                  {Rat(1), Rat(1), Rat(1), Rat(1)}};
    CHECK_OR_NOTE(t_hat(net, kin) == expected, "T-hat differs from the expected matrix");
}

// ---------------------------------------------------------------------------
// 2. The induced network on kinetic complexes is digraph-isomorphic to the
//    original with identical incidence matrices.

void c02_digraph_isomorphism() {
    auto [net, kin] = load("inhibitor_cycle.crn");
    CHECK_OR_NOTE(check_digraph_isomorphism(net, kin), "digraph isomorphism rejected");
    auto kn = kinetic_network(net, kin);
    CHECK_OR_NOTE(incidence_matrix(kn.net) == incidence_matrix(net),
                  "incidence matrices differ after the induced ordering");
}

// ---------------------------------------------------------------------------
// 3. Translating an equilibrium along the kinetic-order complement keeps it
//    an equilibrium: trivially on the flagship (complement is zero), and for
//    100 random translations on the reversible pair whose complement is the
//    diagonal.

void c03_log_translation() {
    constexpr double rel = 1e-8;
    auto [net, kin] = load("inhibitor_cycle.crn");
    auto atlas = find_equilibria(net, kin, Eigen::VectorXd::Ones(3));
    REQUIRE_OR_FAIL(!atlas.points.empty(), "no equilibrium on the flagship ones class");
    Eigen::VectorXd xs = atlas.points[0].x;
    CHECK_OR_NOTE(is_equilibrium(net, kin, xs, rel), "flagship equilibrium fails the gate");
    CHECK_OR_NOTE(orthogonal_complement(kinetic_order_subspace(net, kin)).dim() == 0,
                  "flagship kinetic-order complement is not zero");

    auto [pnet, pkin] = load("reversible_pair.crn");
    Subspace comp = orthogonal_complement(kinetic_order_subspace(pnet, pkin));
    REQUIRE_OR_FAIL(comp.dim() == 1, "pair complement dimension != 1");
    CHECK_OR_NOTE(member(QVec{Rat(1), Rat(1)}, comp), "pair complement is not the diagonal");

    auto patlas = find_equilibria(pnet, pkin, Eigen::VectorXd::Ones(2));
    REQUIRE_OR_FAIL(!patlas.points.empty(), "no equilibrium on the pair ones class");
    Eigen::VectorXd px = patlas.points[0].x;
    Eigen::MatrixXd basis = comp.orthonormal_columns();
    std::mt19937_64 rng(7041);
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        Eigen::VectorXd v = basis * Eigen::VectorXd::NullaryExpr(basis.cols(),
                                                                 [&](Eigen::Index) { return amp(rng); });
        Eigen::VectorXd moved = log_translate(px, v);
        double fn = sfrf(pnet, pkin, moved).norm();
        if (!(fn <= rel * residual_scale(pnet, pkin, moved))) {
            fail("translated point left the equilibrium set at trial " + std::to_string(i));
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// 4. Birch point solve on 200 random instances against a projected-gradient
//    oracle for the convex potential sum_i x_i (log(x_i / x*_i) - 1).

Eigen::VectorXd birch_oracle(const Eigen::VectorXd& p, const Eigen::VectorXd& x_star,
                             const Subspace& v) {
    Eigen::MatrixXd b = v.orthonormal_columns();
    if (b.cols() == 0) return p;
    auto grad = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return b * (b.transpose() * (x.array().log() - x_star.array().log()).matrix());
    };
    auto value = [&](const Eigen::VectorXd& x) {
        return (x.array() * ((x.array() / x_star.array()).log() - 1)).sum();
    };
    Eigen::VectorXd x = p;
    Eigen::VectorXd g = grad(x);
    double eta = 0.1;
    for (int iter = 0; iter < 200000; ++iter) {
        if (g.norm() <= 1e-13 * (1.0 + x.cwiseAbs().maxCoeff())) break;
        Eigen::VectorXd d = -g;
        double alpha = eta;
        for (long i = 0; i < x.size(); ++i)
            if (d(i) < 0) alpha = std::min(alpha, -0.9 * x(i) / d(i));
        double f0 = value(x);
        Eigen::VectorXd xn;
        for (int bt = 0; bt < 80; ++bt) {
            xn = x + alpha * d;
            if ((xn.array() > 0).all() && value(xn) <= f0 - 1e-4 * alpha * g.squaredNorm()) break;
            alpha *= 0.5;
        }
        Eigen::VectorXd gn = grad(xn);
        Eigen::VectorXd sx = xn - x;
        Eigen::VectorXd sg = gn - g;
        double denom = sx.dot(sg);
        eta = denom > 0 ? std::min(1e6, sx.squaredNorm() / denom) : 1.0;
        x = xn;
        g = gn;
    }
    return x;
}

void c04_birch_point() {
    constexpr double resid_tol = 1e-10;
    constexpr double oracle_tol = 1e-6;
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> m_dist(2, 6);
    std::uniform_int_distribution<int> coef_dist(-3, 3);
    std::uniform_real_distribution<double> pos(0.2, 4.0);

    for (int trial = 0; trial < 200; ++trial) {
        int m = m_dist(rng);
        int k = std::uniform_int_distribution<int>(1, m - 1)(rng);
        QMat raw(static_cast<size_t>(k), static_cast<size_t>(m));
        for (size_t i = 0; i < raw.rows(); ++i)
            for (size_t j = 0; j < raw.cols(); ++j) raw(i, j) = coef_dist(rng);
        Subspace v = Subspace::row_space(raw);
        Eigen::VectorXd p(m), xs(m);
        for (int i = 0; i < m; ++i) {
            p(i) = pos(rng);
            xs(i) = pos(rng);
        }

        Eigen::VectorXd b;
        try {
            b = birch_point(p, xs, v);
        } catch (const no_convergence&) {
            fail("no convergence at trial " + std::to_string(trial));
            return;
        }
        Eigen::MatrixXd vb = v.orthonormal_columns();
        Eigen::MatrixXd cb = orthogonal_complement(v).orthonormal_columns();
        Eigen::VectorXd d = b - p;
        Eigen::VectorXd logdiff = b.array().log() - xs.array().log();
        double member_resid = (d - vb * (vb.transpose() * d)).norm();
        double ortho_resid = (logdiff - cb * (cb.transpose() * logdiff)).norm();
        if (!(member_resid <= resid_tol * (1.0 + p.norm()) &&
              ortho_resid <= resid_tol * (1.0 + logdiff.norm()))) {
            fail("residuals too large at trial " + std::to_string(trial));
            return;
        }
        Eigen::VectorXd o = birch_oracle(p, xs, v);
        if (!((b - o).cwiseAbs().maxCoeff() <= oracle_tol * (1.0 + b.cwiseAbs().maxCoeff()))) {
            fail("oracle disagreement at trial " + std::to_string(trial));
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// 5. The factor ratio pi_y(x)/pi_y(x') equals exp <y~, log x - log x'> on
//    1000 random triples across the shipped examples, both directions.

void c05_factor_ratio_equivalence() {
    constexpr double rel = 1e-12;
    std::vector<CompiledModel> models;
    for (const char* f : {"inhibitor_cycle.crn", "horn_jackson.crn", "robust_triangle.crn",
                          "reversible_pair.crn", "two_cell_composite.crn"})
        models.push_back(load(f));

    std::mt19937_64 rng(909090);
    std::uniform_real_distribution<double> pos(0.5, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& [net, kin] = models[trial % models.size()];
        const int m = static_cast<int>(net.species_count());
        Eigen::VectorXd x(m), xp(m);
        for (int i = 0; i < m; ++i) {
            x(i) = pos(rng);
            xp(i) = pos(rng);
        }
        auto reactants = net.reactant_complexes();
        int y = reactants[std::uniform_int_distribution<size_t>(0, reactants.size() - 1)(rng)];

        QMat yt = y_tilde(net, kin);
        double dot = 0;
        for (int i = 0; i < m; ++i) dot += to_double(yt(i, y)) * (std::log(x(i)) - std::log(xp(i)));
        double forward = pi_ratio(net, kin, y, x, xp);
        double backward = pi_ratio(net, kin, y, xp, x);
        bool ok = std::abs(forward - std::exp(dot)) <= rel * std::max(1.0, std::abs(forward)) &&
                  std::abs(backward - std::exp(-dot)) <= rel * std::max(1.0, std::abs(backward));
        if (!ok) {
            fail("ratio mismatch at trial " + std::to_string(trial));
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// 6. Stacked existence on the two-cell composite: per-class equilibria stitch
//    into a global equilibrium that every linkage class certifies.

void c06_stacked_existence() {
    constexpr double rel = 1e-8;
    auto [net, kin] = load("two_cell_composite.crn");
    Eigen::VectorXd anchor = vec({1.0, 3.0, 2.0, 1.0});
    Verdict v = t_hat_existence_verdict(net, kin, anchor);
    REQUIRE_OR_FAIL(v.conclusion == Conclusion::holds, "existence verdict did not hold");

    const auto& jx = v.payload.at("x");
    Eigen::VectorXd x(static_cast<Eigen::Index>(jx.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = jx[static_cast<size_t>(i)].get<double>();
    CHECK_OR_NOTE((x.array() > 0).all(), "reconstructed point is not positive");
    CHECK_OR_NOTE(sfrf(net, kin, x).norm() <= rel * residual_scale(net, kin, x),
                  "reconstructed point misses the residual gate");
    auto flags = per_linkage_equilibria(net, kin, x);
    CHECK_OR_NOTE(flags.size() == 2, "expected two linkage classes");
    for (size_t i = 0; i < flags.size(); ++i)
        CHECK_OR_NOTE(flags[i], "linkage class " + std::to_string(i) + " rejects the point");
}

// ---------------------------------------------------------------------------
// 7. Multistationarity transition on the planar cycle: three equilibria in
//    one class at eps = 0.10, one at eps = 0.25, each with 500 starts; the
//    positive vector screen fires on the diagonal and no species is robust.

void c07_multistationarity_transition() {
    auto [net, kin10] = load("horn_jackson.crn");
    auto def = deficiency(net);
    CHECK_OR_NOTE(def.deficiency == 2, "deficiency != 2");

    FindOptions opts;
    opts.starts = 500;
    Eigen::VectorXd anchor = Eigen::VectorXd::Ones(2);
    auto atlas10 = find_equilibria(net, kin10, anchor, opts);
    CHECK_OR_NOTE(atlas10.points.size() == 3,
                  "expected 3 equilibria at eps=0.10, found " +
                      std::to_string(atlas10.points.size()));

    auto kin25 = mass_action(net, {0.25, 1.0, 0.25, 1.0});
    auto atlas25 = find_equilibria(net, kin25, anchor, opts);
    CHECK_OR_NOTE(atlas25.points.size() == 1,
                  "expected 1 equilibrium at eps=0.25, found " +
                      std::to_string(atlas25.points.size()));

    Subspace flux = kinetic_order_subspace(net, kin10);
    std::vector<Eigen::VectorXd> refs;
    for (const auto& p : atlas10.points) refs.push_back(p.x);
    std::vector<Eigen::VectorXd> diffs;
    for (size_t i = 1; i < refs.size(); ++i)
        diffs.push_back((refs[i].array().log() - refs[0].array().log()).matrix());
    Verdict screen = positive_vector_screen(orthogonal_complement(flux), diffs);
    REQUIRE_OR_FAIL(screen.conclusion == Conclusion::holds, "screen did not fire");
    const auto& w = screen.payload.at("witness");
    REQUIRE_OR_FAIL(w.size() == 2, "witness dimension != 2");
    CHECK_OR_NOTE(w[0].get<std::string>() == w[1].get<std::string>(),
                  "witness is not on the diagonal");

    auto rep = acr_poly_plp(flux, refs);
    CHECK_OR_NOTE(rep.acr == std::vector<bool>({false, false}), "a species claims robustness");
}

// ---------------------------------------------------------------------------
// 8. Robustness positive case: the triangle's flux complement is (0,1,-1), the
//    first species is robust, every equilibrium shares its value, and the
//    general log criterion agrees with the parametrized one.

void c08_acr_positive() {
    constexpr double share_tol = 1e-6;
    auto [net, kin] = load("robust_triangle.crn");
    Subspace flux = kinetic_order_subspace(net, kin);
    Subspace comp = orthogonal_complement(flux);
    REQUIRE_OR_FAIL(comp.dim() == 1, "complement dimension != 1");
    CHECK_OR_NOTE(member(QVec{Rat(0), Rat(1), Rat(-1)}, comp), "complement is not (0,1,-1)");

    auto atlas1 = find_equilibria(net, kin, vec({3.0, 1.0, 1.0}));
    auto atlas2 = find_equilibria(net, kin, vec({1.0, 2.0, 1.0}));
    REQUIRE_OR_FAIL(atlas1.points.size() == 2, "first class should carry two equilibria");
    REQUIRE_OR_FAIL(atlas2.points.size() == 2, "second class should carry two equilibria");

    std::vector<Eigen::VectorXd> refs;
    for (const auto& p : atlas1.points) refs.push_back(p.x);
    auto rep = acr_poly_plp(flux, refs);
    CHECK_OR_NOTE(rep.acr == std::vector<bool>({true, false, false}),
                  "robustness should name exactly the first species");

    std::vector<Eigen::VectorXd> cloud = refs;
    for (const auto& p : atlas2.points) cloud.push_back(p.x);
    for (const auto& x : cloud)
        CHECK_OR_NOTE(std::abs(x(0) - 1.0) <= share_tol,
                      "an equilibrium moved the robust coordinate");
    auto general = acr_general(cloud, AcrTransform::log);
    CHECK_OR_NOTE(general.acr == rep.acr, "general criterion disagrees with the parametrized one");
}

// ---------------------------------------------------------------------------
// 9. Exact subspace arithmetic property suite on 500 random instances.

void c09_exact_linalg_properties() {
    std::mt19937_64 rng(171717);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);

    auto random_subspace = [&](int ambient) {
        int rows = std::uniform_int_distribution<int>(0, ambient)(rng);
        QMat raw(static_cast<size_t>(rows), static_cast<size_t>(ambient));
        for (size_t i = 0; i < raw.rows(); ++i)
            for (size_t j = 0; j < raw.cols(); ++j) raw(i, j) = Rat(num(rng), den(rng));
        return Subspace::row_space(raw);
    };

    for (int trial = 0; trial < 500; ++trial) {
        int ambient = std::uniform_int_distribution<int>(1, 8)(rng);
        Subspace v = random_subspace(ambient);
        Subspace w = random_subspace(ambient);

        bool ok = orthogonal_complement(orthogonal_complement(v)) == v;
        ok = ok && v.dim() + orthogonal_complement(v).dim() == static_cast<size_t>(ambient);
        ok = ok && sum(v, w).dim() + intersect(v, w).dim() == v.dim() + w.dim();
        ok = ok && orthogonal_complement(intersect(v, w)) ==
                       sum(orthogonal_complement(v), orthogonal_complement(w));
        if (!ok) {
            fail("subspace identity failed at trial " + std::to_string(trial));
            return;
        }

        if (ambient <= 3) {
            auto witness = contains_positive_vector(v);
            if (witness) {
                bool positive = true;
                for (const auto& c : *witness) positive = positive && c > 0;
                if (!positive || !member(*witness, v)) {
                    fail("positive witness invalid at trial " + std::to_string(trial));
                    return;
                }
            } else {
                // brute force: no small integer combination of basis rows is positive
                const auto& basis = v.basis();
                int k = static_cast<int>(basis.rows());
                std::vector<int> lambda(static_cast<size_t>(k), -6);
                bool found = false;
                while (k > 0 && !found) {
                    QVec cand(static_cast<size_t>(ambient), Rat(0));
                    for (int i = 0; i < k; ++i)
                        for (int j = 0; j < ambient; ++j)
                            cand[static_cast<size_t>(j)] +=
                                Rat(lambda[static_cast<size_t>(i)]) * basis(i, j);
                    bool positive = true;
                    for (const auto& c : cand) positive = positive && c > 0;
                    found = positive;
                    int idx = 0;
                    while (idx < k && ++lambda[static_cast<size_t>(idx)] > 6) {
                        lambda[static_cast<size_t>(idx)] = -6;
                        ++idx;
                    }
                    if (idx == k) break;
                }
                if (found) {
                    fail("positive vector missed by the exact test at trial " +
                         std::to_string(trial));
                    return;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 10. Parser golden files round-trip and the semantic errors carry spans.

void c10_parser_golden() {
    for (const char* name : {"inhibitor_cycle", "horn_jackson"}) {
        std::string source = slurp(std::string(KINET_DATA_DIR) + "/" + name + ".crn");
        auto first = parse_network(source);
        REQUIRE_OR_FAIL(first.doc.has_value(), std::string(name) + ": parse failed");
        std::string printed = print_network(*first.doc);
        std::string golden =
            slurp(std::string(KINET_GOLDEN_DIR) + "/" + name + ".crn.golden");
        CHECK_OR_NOTE(printed == golden, std::string(name) + ": canonical form drifted");
        auto second = parse_network(printed);
        REQUIRE_OR_FAIL(second.doc.has_value(), std::string(name) + ": reparse failed");
        CHECK_OR_NOTE(*first.doc == *second.doc, std::string(name) + ": round trip changed");
    }

    struct Case {
        const char* text;
        const char* fragment;
        int line;
        int col;
    };
    for (const Case& c : {Case{"species A B\n-2 A -> B ; k=1 ; F=[1,0]\n", "negative", 2, 1},
                          Case{"species A B\nA -> B ; k=0 ; F=[1,0]\n", "positive", 2, 10},
                          Case{"species A B\nA -> B ; k=1 ; F=[1,0,2]\n", "row has 3", 2, 16}}) {
        auto r = compile_network(c.text);
        REQUIRE_OR_FAIL(r.diagnostics.size() == 1, "expected one diagnostic");
        const auto& d = r.diagnostics[0];
        bool ok = d.kind == Diagnostic::Kind::semantic &&
                  d.message.find(c.fragment) != std::string::npos && d.span.line == c.line &&
                  d.span.col == c.col;
        CHECK_OR_NOTE(ok, std::string("diagnostic mismatch for: ") + c.text);
    }
}

struct Criterion {
    const char* name;
    void (*run)();
    double limit_seconds;
};

const Criterion criteria[] = {
    {"c01_structure_end_to_end", c01_structure_end_to_end, 1.0},
    {"c02_digraph_isomorphism", c02_digraph_isomorphism, 1.0},
    {"c03_log_translation", c03_log_translation, 5.0},
    {"c04_birch_point", c04_birch_point, 30.0},
    {"c05_factor_ratio_equivalence", c05_factor_ratio_equivalence, 5.0},
    {"c06_stacked_existence", c06_stacked_existence, 5.0},
    {"c07_multistationarity_transition", c07_multistationarity_transition, 60.0},
    {"c08_acr_positive", c08_acr_positive, 30.0},
    {"c09_exact_linalg_properties", c09_exact_linalg_properties, 30.0},
    {"c10_parser_golden", c10_parser_golden, 5.0},
};

}  // namespace

int main(int argc, char** argv) {
    int failed = 0;
    bool matched = false;
    for (const auto& c : criteria) {
        if (argc > 1 && c.name != std::string(argv[1])) continue;
        matched = true;
        failures.clear();
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run();
        } catch (const std::exception& e) {
            fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds)
            fail("runtime " + std::to_string(secs) + "s exceeds " +
                 std::to_string(c.limit_seconds) + "s");
        if (failures.empty()) {
            std::printf("%s: PASS (%.2fs)\n", c.name, secs);
        } else {
            ++failed;
            std::printf("%s: FAIL (%.2fs)\n", c.name, secs);
            for (const auto& f : failures) std::fprintf(stderr, "  %s: %s\n", c.name, f.c_str());
        }
    }
    if (argc > 1 && !matched) {
        std::fprintf(stderr, "unknown criterion '%s'\n", argv[1]);
        return 2;
    }
    return failed == 0 ? 0 : 1;
}
