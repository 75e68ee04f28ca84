#pragma once
// Small fixed-size numerical kernels shared by the whole library:
//
//   • CMat        — dense complex matrix, row-major, dimensions 2..8
//   • Vec3 / Mat3 — real 3-vector / 3×3 matrix helpers
//   • herm_eigen  — complex Hermitian eigensolver (cyclic Jacobi), d ∈ {2,3,4,8}
//   • svd3        — real 3×3 SVD with proper-rotation convention:
//                   M = U·diag(s)·Vᵗ, det U = det V = +1, signs carried by s,
//                   |s₁| ≥ |s₂| ≥ |s₃| (only s₃ can be negative)
//   • rotation_to_unitary — SO(3) → SU(2) lift (adjoint action reproduces R)
//   • psd_sqrt    — Hermitian PSD square root
//
// Self-contained on purpose: the matrices here are at most 8×8 and the rest of
// the library depends on deterministic, inspectable numerics.

#include <array>
#include <complex>
#include <cmath>
#include <vector>

namespace discordkit {

using Cx = std::complex<double>;

// ———————————————————————————————————————————————————————————————————————————
// Complex matrix (row-major, square, tiny).
// ———————————————————————————————————————————————————————————————————————————

class CMat {
public:
    CMat() = default;
    explicit CMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, Cx{0.0, 0.0}) {}

    static CMat identity(int n);

    int dim() const { return n_; }

    Cx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const Cx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    const std::vector<Cx>& data() const { return a_; }
    std::vector<Cx>& data() { return a_; }

private:
    int n_ = 0;
    std::vector<Cx> a_;
};

CMat operator+(const CMat& a, const CMat& b);
CMat operator-(const CMat& a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);
CMat operator*(Cx s, const CMat& a);
CMat operator*(double s, const CMat& a);

CMat adjoint(const CMat& a);        // conjugate transpose
CMat transpose(const CMat& a);
CMat conjugate(const CMat& a);      // element-wise conjugate
CMat kron(const CMat& a, const CMat& b);

Cx trace(const CMat& a);
double frob_norm(const CMat& a);
double max_abs_entry(const CMat& a);
double max_abs_diff(const CMat& a, const CMat& b);
double hermitian_deviation(const CMat& a);   // max |a(i,j) − conj(a(j,i))|
bool is_finite(const CMat& a);

// ———————————————————————————————————————————————————————————————————————————
// Real 3-vector / 3×3 helpers.
// ———————————————————————————————————————————————————————————————————————————

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
    return {s * a[0], s * a[1], s * a[2]};
}

struct Mat3 {
    // Row-major.
    std::array<double, 9> a{};

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * 3 + j]; }
    const double& operator()(int i, int j) const { return a[static_cast<size_t>(i) * 3 + j]; }

    static Mat3 identity();
    static Mat3 zero() { return {}; }
    static Mat3 diag(const Vec3& d);
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2);
    static Mat3 from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2);
    static Mat3 outer(const Vec3& a, const Vec3& b);   // a·bᵗ

    Vec3 row(int i) const { return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}; }
    Vec3 col(int j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j)}; }
};

Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 operator*(double s, const Mat3& a);
Vec3 operator*(const Mat3& a, const Vec3& v);

Mat3 transpose(const Mat3& a);
double det(const Mat3& a);
double frob_norm(const Mat3& a);
double max_abs_diff(const Mat3& a, const Mat3& b);
bool is_finite(const Mat3& a);

// ———————————————————————————————————————————————————————————————————————————
// Kernels.
// ———————————————————————————————————————————————————————————————————————————

// Eigendecomposition of a Hermitian matrix, d ∈ {2,3,4,8}.
// The input is symmetrized as (H + H†)/2 before iteration, so mild
// non-Hermiticity is tolerated. Eigenvalues are returned in descending order;
// `vectors` holds the matching orthonormal eigenvectors as columns.
// Throws std::invalid_argument on unsupported dimension or non-finite input.
struct HermEigenResult {
    std::vector<double> values;   // descending
    CMat vectors;                 // column k ↔ values[k]
};
HermEigenResult herm_eigen(const CMat& h);

// Signed SVD of a real 3×3 matrix. Both factors are proper rotations
// (det = +1); any reflection is carried as a sign on s[2], so
// |s[0]| ≥ |s[1]| ≥ |s[2]| and only s[2] may be negative.
// Reconstruction: m = u · diag(s) · vᵗ.
struct Svd3Result {
    Mat3 u;
    Vec3 s;
    Mat3 v;
};
Svd3Result svd3(const Mat3& m);

// Lift a proper rotation R ∈ SO(3) to U ∈ SU(2) with
//   U (r·σ) U† = (R r)·σ    i.e.   R_ij = ½ Tr(σ_i U σ_j U†).
// The lift is double-valued; this returns the branch with quaternion scalar
// part ≥ 0. Throws std::invalid_argument if R is not orthogonal within 1e-8,
// std::domain_error if det R ≈ −1 (reflections have no SU(2) lift).
CMat rotation_to_unitary(const Mat3& r);

// Hermitian PSD square root. Eigenvalues in [−1e-8·max(1, λ_max), 0) are
// clamped to zero; anything more negative raises std::domain_error.
CMat psd_sqrt(const CMat& h);

}  // namespace discordkit
