#pragma once
// Entanglement measures and the state-merging bookkeeping built on them:
//
//   • concurrence / entanglement of formation for two-qubit states
//   • canonical pure three-qubit families (GHZ-like, W-like, biseparable)
//   • merging_report — for a pure tripartite state and a (sender, receiver,
//     purifier) assignment, the identity
//         D(sender/purifier) = E_F(sender:receiver) + S(sender|receiver)
//     ties the discord seen by the purifier to the entanglement cost and the
//     conditional entropy of merging; S(sender|receiver) ≤ 0 makes merging
//     feasible by LOCC with −S e-bits left over.

#include "discordkit/oracle.hpp"
#include "discordkit/qstate.hpp"

namespace discordkit {

// Wootters concurrence C(ρ) ∈ [0,1]. The spectrum of ρρ̃ (with
// ρ̃ = (σ₂⊗σ₂)ρ*(σ₂⊗σ₂)) is obtained from the Hermitian PSD form √ρ·ρ̃·√ρ.
double concurrence(const DensityMatrix& rho);

// Entanglement of formation E_F = h((1 + √(1−C²))/2) in bits.
double eof(const DensityMatrix& rho);

// cos ζ·|000⟩ + sin ζ·|111⟩, ζ ∈ [0, π/4].
DensityMatrix ghz_state(double zeta);

// cos ζ₁·|001⟩ + sin ζ₁ sin ζ₂·|010⟩ + sin ζ₁ cos ζ₂·|100⟩, ζ ∈ [0, π/2]².
DensityMatrix w_state(double zeta1, double zeta2);

// (s11·|00⟩ + s12·|11⟩)_{AB} ⊗ (f1·|0⟩ + f2·|1⟩)_C; both pairs normalized.
DensityMatrix biseparable_state(double s11, double s12, double f1, double f2);

struct MergingReport {
    int sender = 0, receiver = 1, purifier = 2;   // qubit indices
    double s_cond = 0.0;             // S(sender | receiver), bits
    double eof_sr = 0.0;             // E_F(sender : receiver), bits
    double discord_sp = 0.0;         // D(sender/purifier), measurement on purifier
    double identity_residual = 0.0;  // discord_sp − eof_sr − s_cond
    bool locc_feasible = false;      // s_cond ≤ 1e-9
    double ebit_gain = 0.0;          // max(0, −s_cond)
};

// Requires a pure three-qubit input (largest eigenvalue ≥ 1 − 1e-9; otherwise
// a domain error) and distinct qubit indices (otherwise an input error).
MergingReport merging_report(const DensityMatrix& pure3, int sender, int receiver,
                             int purifier);

}  // namespace discordkit
