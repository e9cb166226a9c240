// Command line driver: analyze, equilibria, acr, report over reaction
// network files. Exit codes: 0 clean, 2 input diagnostics, 3 numeric failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "kinet/parser.hpp"
#include "kinet/report.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_diagnostics = 2;
constexpr int exit_numeric = 3;

struct Loaded {
    kinet::CompiledModel model;
    std::string name;
};

Loaded load_or_exit(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(exit_diagnostics);
    }
    std::ostringstream os;
    os << in.rdbuf();

    auto parsed = kinet::parse_network(os.str());
    std::string name;
    if (parsed.doc) name = parsed.doc->name;
    auto compiled = parsed.doc ? kinet::to_model(*parsed.doc)
                               : kinet::CompileResult{std::nullopt, std::move(parsed.diagnostics)};
    if (!compiled.model) {
        for (const auto& d : compiled.diagnostics) std::cerr << path << ": " << d.render() << "\n";
        std::exit(exit_diagnostics);
    }
    if (name.empty()) name = path;
    return {std::move(*compiled.model), std::move(name)};
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
    if (const char* env = std::getenv("CRN_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        std::cerr << "ignoring malformed CRN_SEED '" << env << "'\n";
    }
    return fallback;
}

Eigen::VectorXd parse_anchor(const std::string& text, size_t m) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(m));
    std::istringstream is(text);
    std::string tok;
    Eigen::Index i = 0;
    while (std::getline(is, tok, ',')) {
        if (i >= v.size()) {
            std::cerr << "anchor has more than " << m << " coordinates\n";
            std::exit(exit_diagnostics);
        }
        try {
            v(i++) = std::stod(tok);
        } catch (const std::exception&) {
            std::cerr << "malformed anchor coordinate '" << tok << "'\n";
            std::exit(exit_diagnostics);
        }
    }
    if (i != v.size()) {
        std::cerr << "anchor has " << i << " coordinates, species count is " << m << "\n";
        std::exit(exit_diagnostics);
    }
    return v;
}

const char* mark(bool b) { return b ? "yes" : "no"; }

int run_analyze(const std::string& path) {
    auto [model, name] = load_or_exit(path);
    const auto& net = model.net;
    const auto& kin = model.kin;

    auto dec = kinet::linkage_decomposition(net);
    auto def = kinet::deficiency(net);
    auto cls = kinet::classify(net, kin);
    auto cons = kinet::is_conservative(net);
    auto ilc = kinet::has_independent_linkage_classes(net);

    std::cout << "network " << name << "\n"
              << "  species " << net.species_count() << ", complexes " << net.complex_count()
              << ", reactions " << net.reaction_count() << "\n"
              << "  linkage classes " << dec.linkage_classes.size() << ", strong "
              << dec.strong_classes.size() << ", terminal " << dec.terminal_strong_classes.size()
              << ", reactant complexes " << dec.reactant_complex_count << "\n"
              << "  weakly reversible " << mark(kinet::is_weakly_reversible(net))
              << ", cycle terminal " << mark(kinet::is_cycle_terminal(net)) << ", t-minimal "
              << mark(kinet::is_t_minimal(net)) << "\n"
              << "  rank " << def.rank << ", deficiency " << def.deficiency << "\n"
              << "  conservative " << mark(cons.conservative) << ", independent linkage classes "
              << mark(ilc.conclusion == kinet::Conclusion::holds) << "\n"
              << "kinetics\n"
              << "  reactant determined " << mark(cls.is_rdk) << ", factor span "
              << mark(cls.is_fsk) << ", T-independent " << mark(cls.is_tik) << ", rate-linkage "
              << mark(cls.is_rlk) << ", mass action " << mark(cls.is_mass_action) << "\n";
    if (cls.is_rdk) {
        auto kdef = kinet::kinetic_deficiency(net, kin);
        std::cout << "  kinetic rank " << kdef.rank << ", kinetic deficiency " << kdef.deficiency
                  << "\n";
        auto th = kinet::t_hat(net, kin);
        std::cout << "  T-hat (" << th.rows() << "x" << th.cols() << ")\n";
        for (size_t i = 0; i < th.rows(); ++i) {
            std::cout << "   ";
            for (size_t j = 0; j < th.cols(); ++j)
                std::cout << " " << kinet::rat_to_string(th(i, j));
            std::cout << "\n";
        }
    }
    for (const auto& [flag, why] : cls.witnesses) std::cout << "  " << flag << ": " << why << "\n";
    return exit_ok;
}

int run_equilibria(const std::string& path, const std::string& anchor_text, int starts,
                   std::uint64_t seed) {
    auto [model, name] = load_or_exit(path);
    const size_t m = model.net.species_count();
    Eigen::VectorXd anchor = anchor_text.empty()
                                 ? Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m))
                                 : parse_anchor(anchor_text, m);
    kinet::FindOptions opts;
    opts.starts = starts;
    opts.seed = seed;
    auto atlas = kinet::find_equilibria(model.net, model.kin, anchor, opts);
    std::cout << "anchor";
    for (Eigen::Index i = 0; i < anchor.size(); ++i) std::cout << " " << anchor(i);
    std::cout << "\nstarts " << atlas.starts << ", failed " << atlas.failed_starts << ", seed "
              << atlas.seed << "\n";
    if (atlas.points.empty()) {
        std::cout << "no positive equilibria located in this class\n";
        return exit_numeric;
    }
    std::cout.precision(17);
    for (size_t i = 0; i < atlas.points.size(); ++i) {
        const auto& p = atlas.points[i];
        std::cout << "x" << i << " =";
        for (Eigen::Index j = 0; j < p.x.size(); ++j) std::cout << " " << p.x(j);
        std::cout << "  (residual " << p.residual << ", complex balanced "
                  << mark(p.complex_balanced) << ")\n";
    }
    return exit_ok;
}

int run_acr(const std::string& path, int starts, std::uint64_t seed) {
    auto [model, name] = load_or_exit(path);
    const auto& net = model.net;
    const auto& kin = model.kin;
    kinet::ReportOptions opts;
    opts.starts = starts;
    opts.seed = seed;
    auto j = kinet::build_report(net, kin, opts);
    const auto& rb = j["verdicts"]["robustness"];
    if (rb["criterion"].is_null()) {
        std::cout << "no equilibria located; robustness undetermined\n";
        return exit_numeric;
    }
    std::cout << "criterion " << rb["criterion"].get<std::string>() << "\n";
    const auto& acr = rb["acr"];
    for (size_t s = 0; s < net.species_count(); ++s)
        std::cout << "  " << net.species()[s] << ": "
                  << (acr[s].get<bool>() ? "robust" : "not robust") << "\n";
    std::cout << "dimension bound " << rb["bound"].get<int>() << "\n";
    if (rb.contains("screen"))
        std::cout << "positive vector screen: " << rb["screen"]["conclusion"].get<std::string>()
                  << "\n";
    return exit_ok;
}

int run_report(const std::string& path, const std::string& out_path, const std::string& anchor_text,
               int starts, std::uint64_t seed) {
    auto [model, name] = load_or_exit(path);
    kinet::ReportOptions opts;
    opts.name = name;
    opts.starts = starts;
    opts.seed = seed;
    if (!anchor_text.empty()) opts.anchor = parse_anchor(anchor_text, model.net.species_count());
    auto j = kinet::build_report(model.net, model.kin, opts);
    std::string text = j.dump(2);
    text.push_back('\n');
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out.good()) {
            std::cerr << "cannot write " << out_path << "\n";
            return exit_diagnostics;
        }
        out << text;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reaction network analysis"};
    app.require_subcommand(1);

    std::string path, anchor_text, out_path;
    int starts = 64;
    std::uint64_t seed = seed_from_env(kinet::tol::default_seed);

    auto* analyze = app.add_subcommand("analyze", "structure and kinetics classification");
    analyze->add_option("file", path, "network file")->required();

    auto* eq = app.add_subcommand("equilibria", "positive equilibria in one class");
    eq->add_option("file", path, "network file")->required();
    eq->add_option("--anchor", anchor_text, "comma separated class anchor");
    eq->add_option("--starts", starts, "multistart count");
    eq->add_option("--seed", seed, "RNG seed");

    auto* acr = app.add_subcommand("acr", "absolute concentration robustness check");
    acr->add_option("file", path, "network file")->required();
    acr->add_option("--starts", starts, "multistart count");
    acr->add_option("--seed", seed, "RNG seed");

    auto* report = app.add_subcommand("report", "full JSON report");
    report->add_option("file", path, "network file")->required();
    report->add_option("--json", out_path, "output path ('-' for stdout)");
    report->add_option("--anchor", anchor_text, "comma separated class anchor");
    report->add_option("--starts", starts, "multistart count");
    report->add_option("--seed", seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(path);
        if (eq->parsed()) return run_equilibria(path, anchor_text, starts, seed);
        if (acr->parsed()) return run_acr(path, starts, seed);
        if (report->parsed()) return run_report(path, out_path, anchor_text, starts, seed);
    } catch (const kinet::no_convergence& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const kinet::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_diagnostics;
    }
    return exit_ok;
}
