#pragma once
// Analytic zero-discord detection for two-qubit states.
//
// A state has D(B/A) = 0 (is classical-quantum) exactly when it can be written
// Σ_j P_j Π_j ⊗ ρ_j with orthogonal projectors Π_j on A. In Bloch language the
// detection pivots on the correlation tensor T:
//
//   • T null  → zero discord for any local vector;
//   • T rank one → the A-side Bloch vector m must satisfy one of a small set of
//     linear conditions tied to T's row pattern (two zero rows / one zero row /
//     proportional rows, with least-squares row multipliers p, p12, p13);
//   • rank(T) ≥ 2 → positive discord.
//
// Two independent routes are provided and kept in exact agreement:
//   check_cq        — enumerated row-pattern conditions;
//   check_cq_spectral — eigenvector route on the Gram matrix Γ = TTᵗ
//                       (zero iff Γ ≈ 0, or Γ rank one with m ⊥ u or m ∥ u).
// The B-side mirror (quantum-classical detection) uses columns, Ω = TᵗT and n.
//
// Also here: the X-state fast path, constructors for every zero-condition row
// pattern, random genuinely classical-quantum samplers, and local-unitary
// canonicalization of the correlation tensor.

#include "discordkit/qstate.hpp"

#include <string>
#include <vector>

namespace discordkit {

struct Thresholds {
    // A singular value counts as zero iff |s_i| ≤ rank_rel·max(1, |s₁|).
    double rank_rel = 1e-9;
    // Linear (dot-product) conditions fire iff |expr| ≤ condition·(1+‖m‖);
    // proportionality (cross-product norm) conditions iff ≤ condition.
    double condition = 1e-8;
};

enum class RankClass { Null, RankOne, Higher };
enum class LinePattern { AllZero, TwoZero, OneZero, NoneZero };

// Row (or column) structure of a 3×3 tensor. `order` lists the line indices by
// role: TwoZero → {zero i, zero j, nonzero k}; OneZero → {zero i, nonzero j,
// nonzero k} with j < k and line_j ≈ p·line_k; NoneZero → {0,1,2} with
// line₁ ≈ p12·line₂ and line₁ ≈ p13·line₃ (multipliers defined for rank-one
// tensors).
struct AxisPattern {
    LinePattern pattern = LinePattern::AllZero;
    std::array<int, 3> order{0, 1, 2};
    double p = 0.0;
    double p12 = 0.0;
    double p13 = 0.0;
};

struct TensorStructure {
    RankClass rank_class = RankClass::Null;
    Vec3 singular_values{};        // signed, descending magnitude
    Vec3 left_vector{};            // unit u with T ≈ s₁·u·vᵗ (rank one)
    Vec3 right_vector{};           // unit v (rank one)
    AxisPattern rows;
    AxisPattern cols;
};

TensorStructure analyze_tensor(const Mat3& t, const Vec3& m, const Vec3& n,
                               const Thresholds& tol = {});
TensorStructure analyze_tensor(const BlochForm& b, const Thresholds& tol = {});

struct BranchResidual {
    std::string condition;
    double residual = 0.0;
    double threshold = 0.0;
};

struct DirectionVerdict {
    bool zero = false;
    std::string condition;                  // fired branch, or "positive"
    // Signed distance to the verdict boundary (> 0 means robust): for a fired
    // branch, threshold − residual; for a positive verdict on rank ≤ 1 the
    // smallest branch clearance; for rank ≥ 2 the second singular value's
    // clearance above the rank threshold.
    double margin = 0.0;
    std::vector<BranchResidual> residuals;  // every branch evaluated
};

// Enumerated zero-discord conditions in the B/A direction (rows of T, vector m).
DirectionVerdict check_cq(const BlochForm& b, const Thresholds& tol = {});
// Independent spectral route: Γ = TTᵗ rank/eigenvector conditions.
bool check_cq_spectral(const BlochForm& b, const Thresholds& tol = {});
// A/B direction mirrors (columns of T, Ω = TᵗT, vector n).
DirectionVerdict check_qc(const BlochForm& b, const Thresholds& tol = {});
bool check_qc_spectral(const BlochForm& b, const Thresholds& tol = {});

struct DiscordClass {
    DirectionVerdict b_given_a;      // measurement on A
    DirectionVerdict a_given_b;      // measurement on B
    bool a_sender_usable = false;    // unilocal broadcasting with A as sender
    bool b_sender_usable = false;
};

DiscordClass classify(const DensityMatrix& rho, const Thresholds& tol = {});

// ———————————————————————————————————————————————————————————————————————————
// X states: nonzero entries only on the diagonal (x₁..x₄) and anti-diagonal
// (y₁ between |00⟩,|11⟩; y₂ between |01⟩,|10⟩), all parameters real here.
// ———————————————————————————————————————————————————————————————————————————

struct XStateParams {
    double x1 = 0, x2 = 0, x3 = 0, x4 = 0;
    double y1 = 0, y2 = 0;
};

CMat xstate_matrix(const XStateParams& p);            // raw matrix
DensityMatrix xstate_compose(const XStateParams& p);  // checked (PSD etc.)
// Closed-form verdicts: D(B/A) = 0 iff y₁=y₂=0, or |y₁|=|y₂| with x₁=x₃ and
// x₂=x₄; D(A/B) = 0 iff y₁=y₂=0, or |y₁|=|y₂| with x₁=x₂ and x₃=x₄.
DiscordClass xstate_classify(const XStateParams& p, const Thresholds& tol = {});

// ———————————————————————————————————————————————————————————————————————————
// Constructors for the canonical zero-condition families.
// ———————————————————————————————————————————————————————————————————————————

// Row patterns: 1 = null T; 2 = single nonzero row α at index k;
// 3 = zero row i, rows (j,k) = (p·α, α); 4 = rows (α, α/p12, α/p13).
struct CqBuildSpec {
    int row = 1;
    int i = 0, j = 1, k = 2;   // role indices for rows 2–3 (permutation of 0,1,2)
    Vec3 alpha{};              // the free row vector (rows 2–4)
    double p = 1.0;            // row 3 multiplier
    double p12 = 1.0, p13 = 1.0;   // row 4 multipliers
    Vec3 m{};                  // must satisfy one of the row's branch conditions
    Vec3 n{};
};
DensityMatrix build_cq(const CqBuildSpec& spec);

// Column-side mirror: beta is the free column, s/s12/s13 the column
// multipliers, and n must satisfy the branch conditions.
struct QcBuildSpec {
    int row = 1;
    int i = 0, j = 1, k = 2;
    Vec3 beta{};
    double s = 1.0;
    double s12 = 1.0, s13 = 1.0;
    Vec3 m{};
    Vec3 n{};
};
DensityMatrix build_qc(const QcBuildSpec& spec);

// Random genuinely classical-quantum states ρ = Σ_j P_j Π_j ⊗ ρ_j whose
// measurement axis realizes the requested row pattern (1–4); discord D(B/A) is
// zero by construction. sample_qc mirrors with projectors on B.
DensityMatrix sample_cq(int row, Gaussian& g);
DensityMatrix sample_qc(int row, Gaussian& g);

// ———————————————————————————————————————————————————————————————————————————
// Local-unitary canonicalization: rotate both sides so the correlation tensor
// becomes diag(r) with |r₁| ≥ |r₂| ≥ |r₃| (svd3 sign convention).
// ———————————————————————————————————————————————————————————————————————————

struct CanonicalForm {
    DensityMatrix rho_prime;
    CMat u_a, u_b;     // applied local unitaries
    Vec3 r{};          // diagonal of the rotated tensor
};

CanonicalForm canonicalize(const DensityMatrix& rho);

const char* to_string(RankClass c);
const char* to_string(LinePattern p);

}  // namespace discordkit
