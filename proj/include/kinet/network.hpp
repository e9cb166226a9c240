#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kinet/qmatrix.hpp"
#include "kinet/subspace.hpp"
#include "kinet/verdict.hpp"

namespace kinet {

// Complex coordinate domain. Stoichiometric complexes are nonnegative;
// induced kinetic complexes are arbitrary real (rational) vectors.
enum class ComplexSign { nonnegative, any };

// Chemical reaction network (S, C, R): species labels, complexes as exact
// rational combinations of species, reactions as (reactant, product) index
// pairs. Construction enforces the network axioms:
//   - complexes are pairwise distinct (nonnegative unless sign is relaxed)
//   - no reaction is a self-loop
//   - no duplicate reaction pair
//   - every complex participates in at least one reaction
class ReactionNetwork {
  public:
    ReactionNetwork(std::vector<std::string> species, std::vector<QVec> complexes,
                    std::vector<std::pair<int, int>> reactions,
                    ComplexSign sign = ComplexSign::nonnegative)
        : species_(std::move(species)),
          complexes_(std::move(complexes)),
          reactions_(std::move(reactions)) {
        validate(sign);
    }

    size_t species_count() const { return species_.size(); }
    size_t complex_count() const { return complexes_.size(); }
    size_t reaction_count() const { return reactions_.size(); }

    const std::vector<std::string>& species() const { return species_; }
    const std::vector<QVec>& complexes() const { return complexes_; }
    const std::vector<std::pair<int, int>>& reactions() const { return reactions_; }

    int reactant_of(size_t q) const { return reactions_[q].first; }
    int product_of(size_t q) const { return reactions_[q].second; }

    // Distinct reactant complex indices, increasing.
    std::vector<int> reactant_complexes() const {
        std::set<int> s;
        for (const auto& [y, yp] : reactions_) s.insert(y);
        return {s.begin(), s.end()};
    }

    bool is_reactant(int complex_index) const {
        for (const auto& [y, yp] : reactions_)
            if (y == complex_index) return true;
        return false;
    }

    // Reactions with the given reactant complex.
    std::vector<int> reactions_from(int complex_index) const {
        std::vector<int> out;
        for (size_t q = 0; q < reactions_.size(); ++q)
            if (reactions_[q].first == complex_index) out.push_back(static_cast<int>(q));
        return out;
    }

  private:
    void validate(ComplexSign sign) const {
        size_t m = species_.size();
        for (const auto& c : complexes_) {
            if (c.size() != m) throw invalid_network("complex dimension != species count");
            if (sign == ComplexSign::nonnegative)
                for (const auto& x : c)
                    if (x < 0) throw invalid_network("complex has a negative coordinate");
        }
        for (size_t i = 0; i < complexes_.size(); ++i)
            for (size_t j = i + 1; j < complexes_.size(); ++j)
                if (complexes_[i] == complexes_[j])
                    throw invalid_network("duplicate complex at indices " + std::to_string(i) +
                                          "," + std::to_string(j));
        std::set<std::pair<int, int>> seen;
        std::vector<bool> used(complexes_.size(), false);
        for (const auto& [y, yp] : reactions_) {
            if (y < 0 || yp < 0 || static_cast<size_t>(y) >= complexes_.size() ||
                static_cast<size_t>(yp) >= complexes_.size())
                throw invalid_network("reaction references a missing complex");
            if (y == yp) throw invalid_network("self-loop reaction");
            if (!seen.insert({y, yp}).second) throw invalid_network("duplicate reaction");
            used[y] = used[yp] = true;
        }
        for (size_t i = 0; i < complexes_.size(); ++i)
            if (!used[i])
                throw invalid_network("complex " + std::to_string(i) +
                                      " participates in no reaction");
    }

    std::vector<std::string> species_;
    std::vector<QVec> complexes_;
    std::vector<std::pair<int, int>> reactions_;
};

// Connectivity decomposition of the reaction graph.
struct LinkageDecomposition {
    std::vector<std::vector<int>> linkage_classes;         // undirected components
    std::vector<std::vector<int>> strong_classes;          // strong components
    std::vector<std::vector<int>> terminal_strong_classes; // out-degree-0 strong comps
    std::vector<int> linkage_class_of;                     // complex -> linkage class
    std::vector<int> strong_class_of;                      // complex -> strong class
    size_t reactant_complex_count = 0;                     // n_r
};

namespace detail {

// Tarjan strong components, iterative.
inline std::vector<int> strong_components(size_t n,
                                          const std::vector<std::vector<int>>& adj,
                                          size_t& count) {
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    count = 0;
    struct Frame {
        int v;
        size_t child;
    };
    for (size_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{static_cast<int>(root), 0}};
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (child < adj[v].size()) {
                int w = adj[v][child++];
                if (index[w] == -1)
                    frames.push_back({w, 0});
                else if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
            } else {
                if (low[v] == index[v]) {
                    for (;;) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = static_cast<int>(count);
                        if (w == v) break;
                    }
                    ++count;
                }
                int v_done = v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v_done]);
            }
        }
    }
    return comp;
}

}  // namespace detail

inline LinkageDecomposition linkage_decomposition(const ReactionNetwork& net) {
    size_t n = net.complex_count();
    std::vector<std::vector<int>> adj(n), undirected(n);
    for (const auto& [y, yp] : net.reactions()) {
        adj[y].push_back(yp);
        undirected[y].push_back(yp);
        undirected[yp].push_back(y);
    }

    LinkageDecomposition d;
    d.linkage_class_of.assign(n, -1);
    for (size_t s = 0; s < n; ++s) {
        if (d.linkage_class_of[s] != -1) continue;
        int id = static_cast<int>(d.linkage_classes.size());
        std::vector<int> members, queue{static_cast<int>(s)};
        d.linkage_class_of[s] = id;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            members.push_back(v);
            for (int w : undirected[v])
                if (d.linkage_class_of[w] == -1) {
                    d.linkage_class_of[w] = id;
                    queue.push_back(w);
                }
        }
        std::sort(members.begin(), members.end());
        d.linkage_classes.push_back(std::move(members));
    }

    size_t scc_count = 0;
    d.strong_class_of = detail::strong_components(n, adj, scc_count);
    d.strong_classes.assign(scc_count, {});
    for (size_t v = 0; v < n; ++v) d.strong_classes[d.strong_class_of[v]].push_back(static_cast<int>(v));

    std::vector<bool> has_exit(scc_count, false);
    for (const auto& [y, yp] : net.reactions())
        if (d.strong_class_of[y] != d.strong_class_of[yp]) has_exit[d.strong_class_of[y]] = true;
    for (size_t c = 0; c < scc_count; ++c)
        if (!has_exit[c]) d.terminal_strong_classes.push_back(d.strong_classes[c]);

    d.reactant_complex_count = net.reactant_complexes().size();
    return d;
}

// Weakly reversible: every linkage class is a single strong class.
inline bool is_weakly_reversible(const ReactionNetwork& net) {
    auto d = linkage_decomposition(net);
    return d.strong_classes.size() == d.linkage_classes.size();
}

// Cycle terminal: every complex is a reactant (n - n_r = 0).
inline bool is_cycle_terminal(const ReactionNetwork& net) {
    return net.reactant_complexes().size() == net.complex_count();
}

// t-minimal: one terminal strong class per linkage class.
inline bool is_t_minimal(const ReactionNetwork& net) {
    auto d = linkage_decomposition(net);
    return d.terminal_strong_classes.size() == d.linkage_classes.size();
}

// Molecularity matrix Y: species x complexes, column j = complex j.
inline QMat molecularity_matrix(const ReactionNetwork& net) {
    QMat y(net.species_count(), net.complex_count());
    for (size_t j = 0; j < net.complex_count(); ++j) y.set_col(j, net.complexes()[j]);
    return y;
}

// Incidence matrix I_a: complexes x reactions, column q = e_product - e_reactant.
inline QMat incidence_matrix(const ReactionNetwork& net) {
    QMat ia(net.complex_count(), net.reaction_count());
    for (size_t q = 0; q < net.reaction_count(); ++q) {
        ia(net.reactant_of(q), q) = -1;
        ia(net.product_of(q), q) += 1;
    }
    return ia;
}

// Stoichiometric matrix N = Y * I_a, column q = y' - y.
inline QMat stoichiometric_matrix(const ReactionNetwork& net) {
    return molecularity_matrix(net) * incidence_matrix(net);
}

inline Subspace stoichiometric_subspace(const ReactionNetwork& net) {
    return Subspace::column_space(stoichiometric_matrix(net));
}

struct DeficiencyReport {
    size_t complexes = 0;       // n
    size_t linkage_classes = 0; // l
    size_t rank = 0;            // s
    long long deficiency = 0;   // n - l - s
};

inline DeficiencyReport deficiency(const ReactionNetwork& net) {
    auto d = linkage_decomposition(net);
    DeficiencyReport r;
    r.complexes = net.complex_count();
    r.linkage_classes = d.linkage_classes.size();
    r.rank = stoichiometric_subspace(net).dim();
    r.deficiency = static_cast<long long>(r.complexes) -
                   static_cast<long long>(r.linkage_classes) - static_cast<long long>(r.rank);
    return r;
}

// One linkage class viewed as a network over the full species list, with maps
// back to the parent's complex and reaction indices.
struct Subnetwork {
    ReactionNetwork net;
    std::vector<int> complex_ids;   // subnetwork complex -> parent complex
    std::vector<int> reaction_ids;  // subnetwork reaction -> parent reaction
};

inline std::vector<Subnetwork> linkage_subnetworks(const ReactionNetwork& net) {
    auto d = linkage_decomposition(net);
    std::vector<Subnetwork> out;
    for (const auto& members : d.linkage_classes) {
        std::map<int, int> local;
        std::vector<QVec> complexes;
        std::vector<int> complex_ids;
        for (int c : members) {
            local[c] = static_cast<int>(complexes.size());
            complexes.push_back(net.complexes()[c]);
            complex_ids.push_back(c);
        }
        std::vector<std::pair<int, int>> reactions;
        std::vector<int> reaction_ids;
        for (size_t q = 0; q < net.reaction_count(); ++q) {
            int y = net.reactant_of(q);
            if (d.linkage_class_of[y] != d.linkage_class_of[members[0]]) continue;
            reactions.emplace_back(local[y], local[net.product_of(q)]);
            reaction_ids.push_back(static_cast<int>(q));
        }
        out.push_back({ReactionNetwork(net.species(), std::move(complexes), std::move(reactions)),
                       std::move(complex_ids), std::move(reaction_ids)});
    }
    return out;
}

// Independent linkage classes: delta = sum of class deficiencies, equivalently
// S is the direct sum of the class stoichiometric subspaces. Both routes are
// computed and must agree.
inline Verdict has_independent_linkage_classes(const ReactionNetwork& net) {
    Verdict v;
    v.name = "independent_linkage_classes";
    auto subs = linkage_subnetworks(net);
    auto global = deficiency(net);
    long long sum_def = 0;
    std::vector<Subspace> spaces;
    Json per_class = Json::array();
    for (size_t i = 0; i < subs.size(); ++i) {
        auto di = deficiency(subs[i].net);
        sum_def += di.deficiency;
        spaces.push_back(stoichiometric_subspace(subs[i].net));
        per_class.push_back({{"complexes", di.complexes},
                             {"rank", di.rank},
                             {"deficiency", di.deficiency}});
    }
    bool def_route = (sum_def == global.deficiency);
    bool sum_route = is_direct_sum(spaces);
    if (def_route != sum_route)
        throw std::logic_error("deficiency-sum and direct-sum ILC routes disagree");
    v.hypotheses.push_back({"deficiency equals sum of class deficiencies", def_route,
                            std::to_string(global.deficiency) + " vs " + std::to_string(sum_def)});
    v.hypotheses.push_back({"stoichiometric subspace is the direct sum of class subspaces",
                            sum_route, ""});
    v.conclusion = def_route ? Conclusion::holds : Conclusion::fails;
    v.payload["deficiency"] = global.deficiency;
    v.payload["class_deficiency_sum"] = sum_def;
    v.payload["classes"] = per_class;
    return v;
}

struct ConservativityResult {
    bool conservative = false;
    std::optional<QVec> witness;  // strictly positive vector in S-perp
};

inline ConservativityResult is_conservative(const ReactionNetwork& net) {
    auto perp = orthogonal_complement(stoichiometric_subspace(net));
    auto w = contains_positive_vector(perp);
    return {w.has_value(), w};
}

}  // namespace kinet
