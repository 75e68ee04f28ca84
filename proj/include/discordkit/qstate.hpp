#pragma once
// Density-matrix domain layer for one, two and three qubits:
//
//   • DensityMatrix + validation (Hermitian, unit trace, PSD within tolerance)
//   • Bloch/Pauli decomposition of two-qubit states:
//       ρ = ¼ (I⊗I + m·σ⊗I + I⊗n·σ + Σ_{ij} t_ij σ_i⊗σ_j)
//     with m_i = Tr[ρ(σ_i⊗I)], n_j = Tr[ρ(I⊗σ_j)], t_ij = Tr[ρ(σ_i⊗σ_j)].
//   • partial trace over arbitrary qubit subsets (qubit 0 most significant:
//     basis index of |ab⟩ is 2a+b, of |abc⟩ is 4a+2b+c)
//   • von Neumann entropy, mutual information, conditional entropy (bits)
//   • local unitaries and deterministic random-state sampling
//
// Error conventions: malformed arguments raise std::invalid_argument; inputs
// that are well-formed but outside an operation's domain raise
// std::domain_error.

#include "discordkit/smalllin.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace discordkit {

// Pauli matrices; pauli(1..3) = σx, σy, σz.
const CMat& pauli(int k);
const CMat& id2();

struct DensityMatrix {
    CMat mat;

    int dim() const { return mat.dim(); }
    int qubits() const;
};

struct ValidationReport {
    double hermitian_deviation = 0.0;   // max |ρ_ij − conj(ρ_ji)|
    double trace_deviation = 0.0;       // |Tr ρ − 1|
    double min_eigenvalue = 0.0;
    bool hermitian_ok = false;
    bool trace_ok = false;
    bool psd_ok = false;

    bool pass() const { return hermitian_ok && trace_ok && psd_ok; }
};

// Tolerances for state validity: Hermitian within 1e-9, trace within 1e-9,
// eigenvalues ≥ −1e-9.
ValidationReport validate(const CMat& rho);
inline ValidationReport validate(const DensityMatrix& rho) { return validate(rho.mat); }

// Checked constructor: throws std::domain_error naming the violated invariant.
DensityMatrix make_state(const CMat& rho);
// For internal compositions whose validity is guaranteed by construction.
DensityMatrix make_state_unchecked(CMat rho);

// Two-qubit Bloch form. `t` rows are indexed by the A-side Pauli label,
// columns by the B-side label.
struct BlochForm {
    Vec3 m{};
    Vec3 n{};
    Mat3 t;
};

// A projective measurement direction on the Bloch sphere (unit vector w;
// projectors Π_j = ½(I + (−1)^j w·σ), j ∈ {0,1}).
struct MeasurementDirection {
    Vec3 w{0.0, 0.0, 1.0};
};
MeasurementDirection make_direction(const Vec3& w);   // normalizes; rejects ~0

BlochForm bloch_decompose(const DensityMatrix& rho);  // two-qubit, validated
CMat bloch_compose(const BlochForm& b);               // raw 4×4; caller validates

// Keep the listed qubits (ascending original order) and trace out the rest.
// `keep` must be a nonempty proper subset of {0..n_qubits−1}.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Two-qubit reduction of a three-qubit state with explicit slot order:
// qubit `first` becomes the A slot even if first > second.
DensityMatrix reduce_ordered_pair(const DensityMatrix& rho, int first, int second);

// Exchange the two qubits of a two-qubit state (|ab⟩ → |ba⟩).
DensityMatrix swap_qubits(const DensityMatrix& rho);

double binary_entropy(double p);                    // h(p) in bits
double vn_entropy(const DensityMatrix& rho);        // S(ρ) in bits
double mutual_info(const DensityMatrix& rho);       // I(A:B), two-qubit
double cond_entropy(const DensityMatrix& rho);      // S(A|B) = S(AB) − S(B)

// (U_A ⊗ U_B) ρ (U_A ⊗ U_B)†; factors must be unitary within 1e-9.
DensityMatrix apply_local_unitary(const DensityMatrix& rho, const CMat& ua, const CMat& ub);

// ———————————————————————————————————————————————————————————————————————————
// Deterministic sampling. Standard normals come from a hand-rolled Box–Muller
// transform over std::mt19937_64 so that sampled states are byte-identical
// across platforms (std::normal_distribution is implementation-defined).
// ———————————————————————————————————————————————————————————————————————————

class Gaussian {
public:
    explicit Gaussian(uint64_t seed) : eng_(seed) {}

    double operator()();              // standard normal
    double uniform();                 // uniform in (0,1)
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

enum class SampleKind { Pure2q, Ginibre2q, Pure3q };

DensityMatrix sample_random(SampleKind kind, Gaussian& g);
DensityMatrix sample_random(SampleKind kind, uint64_t seed);

// Haar-distributed SU(2) element (unit quaternion from four normals).
CMat random_su2(Gaussian& g);

}  // namespace discordkit
