#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kinet {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Construction-time violation of the network axioms (self-loop, duplicate
// complex, unused complex, dimension mismatch).
struct invalid_network : error {
    using error::error;
};

// Operation requires reactant-determined kinetics.
struct not_rdk : error {
    using error::error;
};

// Operation requires every complex to be a reactant.
struct not_cycle_terminal : error {
    using error::error;
};

// Iterative solve exceeded its iteration cap. Carries the best iterate.
struct no_convergence : error {
    std::vector<double> best;
    double residual;
    no_convergence(std::string msg, std::vector<double> best_, double residual_)
        : error(std::move(msg)), best(std::move(best_)), residual(residual_) {}
};

// A linear system that should be consistent under the hypotheses was not.
struct inconsistent_system : error {
    double residual;
    inconsistent_system(std::string msg, double residual_)
        : error(std::move(msg)), residual(residual_) {}
};

}  // namespace kinet
