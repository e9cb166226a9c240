#pragma once

// Shared fixture networks for the test suites. Numeric fingerprints asserted
// in the tests were derived by hand from the definitions and double-checked
// with the independent oracles next to each use.

#include <utility>

#include "kinet/kinetics.hpp"
#include "kinet/network.hpp"

namespace fixtures {

using kinet::PowerLawKinetics;
using kinet::QMat;
using kinet::QVec;
using kinet::Rat;
using kinet::ReactionNetwork;

// Weakly reversible 4-complex cycle on 3 species with one branching complex.
// C1 = 2A1+2A2+2A3, C2 = 3A2+3A3, C3 = 4A1+A2+A3, C4 = 6A1.
// Reactions: C1->C2, C2->C1, C2->C3, C3->C4, C4->C1.
inline ReactionNetwork inhibitor_cycle_network() {
    return ReactionNetwork(
        {"A1", "A2", "A3"},
        {{Rat(2), Rat(2), Rat(2)}, {Rat(0), Rat(3), Rat(3)}, {Rat(4), Rat(1), Rat(1)}, {Rat(6), Rat(0), Rat(0)}},
        {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 0}});
}

// Classical mass-action cycle on complexes 3A, A+2B, 3B, 2A+B.
inline ReactionNetwork horn_jackson_network() {
    return ReactionNetwork(
        {"A", "B"},
        {{Rat(3), Rat(0)}, {Rat(1), Rat(2)}, {Rat(0), Rat(3)}, {Rat(2), Rat(1)}},
        {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

// Monomolecular triangle A -> B -> C -> A.
inline ReactionNetwork robust_triangle_network() {
    return ReactionNetwork(
        {"A", "B", "C"},
        {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}},
        {{0, 1}, {1, 2}, {2, 0}});
}

// A <-> B.
inline ReactionNetwork reversible_pair_network() {
    return ReactionNetwork({"A", "B"}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}},
                           {{0, 1}, {1, 0}});
}

// A <-> B and C <-> D over disjoint species.
inline ReactionNetwork two_cell_composite_network() {
    return ReactionNetwork(
        {"A", "B", "C", "D"},
        {{Rat(1), Rat(0), Rat(0), Rat(0)},
         {Rat(0), Rat(1), Rat(0), Rat(0)},
         {Rat(0), Rat(0), Rat(1), Rat(0)},
         {Rat(0), Rat(0), Rat(0), Rat(1)}},
        {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
}

// A <-> B and 2A <-> 2B: two linkage classes with the same stoichiometric line.
inline ReactionNetwork parallel_lines_network() {
    return ReactionNetwork(
        {"A", "B"},
        {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(2), Rat(0)}, {Rat(0), Rat(2)}},
        {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
}

// Single irreversible step A -> B.
inline ReactionNetwork single_step_network() {
    return ReactionNetwork({"A", "B"}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {{0, 1}});
}

// Fork A -> B, A -> C: one linkage class, two terminal strong classes.
inline ReactionNetwork fork_network() {
    return ReactionNetwork(
        {"A", "B", "C"},
        {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}},
        {{0, 1}, {0, 2}});
}

// Kinetic orders for the 4-complex cycle; the two reactions leaving C2 share
// one row. Rates are per reaction: (k1, k2, k2, k3, k4).
inline PowerLawKinetics inhibitor_cycle_kinetics(std::vector<double> k = {1, 1, 1, 1, 1}) {
    QMat f{{Rat(0), Rat(-1), Rat(1)},
           {Rat(-1), Rat(-1), Rat(1)},
           {Rat(-1), Rat(-1), Rat(1)},
           {Rat(0), Rat(-2), Rat(0)},
           {Rat(0), Rat(0), Rat(-2)}};
    return PowerLawKinetics(std::move(f), std::move(k));
}

// Mass action with rates (eps, 1, eps, 1); tri-stationary iff eps < 1/6.
inline PowerLawKinetics horn_jackson_kinetics(double eps) {
    return kinet::mass_action(horn_jackson_network(), {eps, 1.0, eps, 1.0});
}

// Power-law orders on the triangle giving x1 robust at k1/k2.
inline PowerLawKinetics robust_triangle_kinetics() {
    QMat f{{Rat(1), Rat(0), Rat(0)}, {Rat(2), Rat(0), Rat(0)}, {Rat(2), Rat(1), Rat(1)}};
    return PowerLawKinetics(std::move(f), {1, 1, 1});
}

inline PowerLawKinetics reversible_pair_kinetics() {
    return kinet::mass_action(reversible_pair_network(), {1, 1});
}

// Non-mass-action orders on the disjoint pair of reversible cells.
inline PowerLawKinetics two_cell_composite_kinetics() {
    QMat f{{Rat(2), Rat(0), Rat(0), Rat(0)},
           {Rat(0), Rat(1), Rat(0), Rat(0)},
           {Rat(0), Rat(0), Rat(1), Rat(0)},
           {Rat(0), Rat(0), Rat(0), Rat(3)}};
    return PowerLawKinetics(std::move(f), {1, 1, 1, 1});
}

// Cycle-terminal network whose branching complex A carries two distinct
// kinetic orders (non-RDK).
inline ReactionNetwork ndk_star_network() {
    return ReactionNetwork(
        {"A", "B", "C"},
        {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}},
        {{0, 1}, {0, 2}, {1, 0}, {2, 0}});
}

inline PowerLawKinetics ndk_star_kinetics() {
    QMat f{{Rat(1), Rat(0), Rat(0)},
           {Rat(2), Rat(0), Rat(0)},
           {Rat(0), Rat(1), Rat(0)},
           {Rat(0), Rat(0), Rat(1)}};
    return PowerLawKinetics(std::move(f), {1, 1, 1, 1});
}

}  // namespace fixtures
