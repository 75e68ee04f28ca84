#pragma once
// Brute-force numerical quantum discord for two-qubit states — the ground
// truth the analytic detector is validated against.
//
// For a projective measurement {Π_j = ½(I + (−1)ʲ w·σ)} on one side, the
// classical correlation is
//     J(w) = S(unmeasured side) − Σ_j P_j · S(ρ_{|j}),
// and the discord in that direction is D = I(A:B) − max_w J(w). The maximum
// is located on a deterministic (θ, φ) half-sphere grid and polished with a
// Nelder–Mead simplex; since the maximization is inner, any under-maximization
// makes the returned value an UPPER bound on the true projective-measurement
// discord. Everything here is deterministic: identical inputs give identical
// estimates bit for bit.

#include "discordkit/qstate.hpp"

#include <array>

namespace discordkit {

// Which qubit the projective measurement acts on. D(B/A) measures A.
enum class Side { A, B };

struct ConditionalState {
    double probability = 0.0;
    DensityMatrix state;        // I/2 placeholder when negligible
    bool negligible = false;    // probability ≤ 1e-12
};

// Post-measurement branch ensemble for outcome j ∈ {0,1}. Probabilities sum
// to 1 within 1e-10; each non-negligible conditional state is a valid qubit
// state on the unmeasured side.
std::array<ConditionalState, 2> conditional_states(const DensityMatrix& rho, Side side,
                                                   const MeasurementDirection& w);

// J(w) in bits for one measurement direction.
double classical_correlation_at(const DensityMatrix& rho, Side side,
                                const MeasurementDirection& w);

struct DiscordEstimate {
    double value = 0.0;                  // I(A:B) − j_value, bits
    MeasurementDirection best_direction;
    int grid_points = 0;                 // grid_n²
    int refine_iterations = 0;           // simplex iterations executed
    double j_value = 0.0;                // maximized classical correlation
};

// Numerical discord with measurement on `side`. The grid covers θ ∈ [0,π]
// (midpoints) × φ ∈ [0,π) with grid_n × grid_n points (w and −w induce the
// same projector pair, so half the sphere suffices); ties resolve to the
// lexicographically first (θ, φ). Refinement runs a Nelder–Mead simplex from
// the best grid point until the improvement per iteration drops below 1e-10
// or 200 iterations, keeping the running maximum, so
// value(refine = true) ≤ value(refine = false) always.
DiscordEstimate discord_numeric(const DensityMatrix& rho, Side side, int grid_n = 64,
                                bool refine = true);

}  // namespace discordkit
