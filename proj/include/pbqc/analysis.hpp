// Quantitative layer: Monte Carlo and quadrature success rates for the
// modified protocol, the measurement-basis search, and the two/three-level
// resource searches with their constraint residuals.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbqc/attacks.hpp"

namespace pbqc {

struct RateReport {
    std::string strategy;
    double rate = 0.0;
    double std_error = 0.0;
    long samples = 0;
    std::optional<double> quadrature;
};

RateReport rate_monte_carlo(ModifiedStrategy strategy, long samples, std::uint64_t seed);

// (1/4) integral of [1 + sum_D max(...)] over the sphere, refined until the
// grid-doubling change drops below tol
double rate_quadrature_teleport(double tol = 1e-6);

double measure_hold_success_prob(double theta);
double measure_hold_rate_quadrature(int grid = 4096);

struct BasisSearchResult {
    double best_rate = 0.0;
    std::array<double, 3> params{}; // rotation generator coefficients
    double identity_rate = 0.0;
    int restarts = 0;
};
// best teleport rate over B2 bases {R|psi>, R|psibar>} with constant R
BasisSearchResult optimal_b2_basis_search(int restarts, std::uint64_t seed);
double rate_for_b2_rotation(const std::array<double, 3>& params, int theta_cells = 48);

struct EncodingGrid {
    std::vector<BlochAngles> points;

    // poles map to single points, other thetas to the four cardinal phis
    static EncodingGrid from_thetas(const std::vector<double>& thetas);
    static EncodingGrid fibonacci(int n);
    static EncodingGrid pauli_eigenstates(); // X/Y/Z directions, 6 points
    void append_ring(double theta);
    std::vector<double> theta_values() const;
};

struct ResourceSearchResult {
    int resource_dim = 2;
    std::vector<double> thetas;
    double best_success = 0.0;
    std::vector<double> best_params; // leading entry tags the start basis
    int restarts = 0;
    std::vector<double> residual_even;  // |mass(0-associated) - 1/2| per outcome
    std::vector<double> residual_cross; // mass violating the no-mixing condition
};

ResourceSearchResult two_qubit_cheat_search(const std::vector<double>& thetas, int restarts,
                                            std::uint64_t seed);
ResourceSearchResult qutrit_cheat_search(const EncodingGrid& grid, int restarts, std::uint64_t seed);

struct QutritResiduals {
    std::vector<double> even;
    std::vector<double> cross;
};
// M-basis on a 2x3 register, partition rows select the |0>-associated
// resource components of each outcome
QutritResiduals qutrit_constraint_check(const CodeSpace& m_basis,
                                        const std::vector<std::array<int, 3>>& partition);
std::vector<std::array<int, 3>> qutrit_default_partition(const CodeSpace& m_basis);

} // namespace pbqc
