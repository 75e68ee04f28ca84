#include "discordkit/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace discordkit {

namespace {

constexpr double kHermTol = 1e-9;
constexpr double kTraceTol = 1e-9;
constexpr double kEigTol = 1e-9;
constexpr double kUnitaryTol = 1e-9;

int log2_dim(int dim) {
    switch (dim) {
        case 2: return 1;
        case 4: return 2;
        case 8: return 3;
        default:
            throw std::invalid_argument("expected a 2-, 4- or 8-dimensional matrix, got dim " +
                                        std::to_string(dim));
    }
}

}  // namespace

const CMat& pauli(int k) {
    static const CMat sx = [] {
        CMat m(2);
        m(0, 1) = m(1, 0) = Cx{1.0, 0.0};
        return m;
    }();
    static const CMat sy = [] {
        CMat m(2);
        m(0, 1) = Cx{0.0, -1.0};
        m(1, 0) = Cx{0.0, 1.0};
        return m;
    }();
    static const CMat sz = [] {
        CMat m(2);
        m(0, 0) = Cx{1.0, 0.0};
        m(1, 1) = Cx{-1.0, 0.0};
        return m;
    }();
    switch (k) {
        case 1: return sx;
        case 2: return sy;
        case 3: return sz;
        default: throw std::invalid_argument("pauli index must be 1, 2 or 3");
    }
}

const CMat& id2() {
    static const CMat i2 = CMat::identity(2);
    return i2;
}

int DensityMatrix::qubits() const { return log2_dim(dim()); }

ValidationReport validate(const CMat& rho) {
    log2_dim(rho.dim());
    if (!is_finite(rho))
        throw std::invalid_argument("validate: non-finite entry");

    ValidationReport rep;
    rep.hermitian_deviation = hermitian_deviation(rho);
    rep.trace_deviation = std::abs(trace(rho) - Cx{1.0, 0.0});
    const HermEigenResult eig = herm_eigen(rho);
    rep.min_eigenvalue = eig.values.back();
    rep.hermitian_ok = rep.hermitian_deviation <= kHermTol;
    rep.trace_ok = rep.trace_deviation <= kTraceTol;
    rep.psd_ok = rep.min_eigenvalue >= -kEigTol;
    return rep;
}

DensityMatrix make_state(const CMat& rho) {
    const ValidationReport rep = validate(rho);
    if (!rep.pass()) {
        std::string what = "make_state: matrix is not a density matrix:";
        if (!rep.hermitian_ok)
            what += " hermitian deviation " + std::to_string(rep.hermitian_deviation) + ";";
        if (!rep.trace_ok)
            what += " trace deviation " + std::to_string(rep.trace_deviation) + ";";
        if (!rep.psd_ok)
            what += " min eigenvalue " + std::to_string(rep.min_eigenvalue) + ";";
        throw std::domain_error(what);
    }
    return DensityMatrix{rho};
}

DensityMatrix make_state_unchecked(CMat rho) { return DensityMatrix{std::move(rho)}; }

MeasurementDirection make_direction(const Vec3& w) {
    const double n = norm(w);
    if (!(n > 1e-12) || !std::isfinite(n))
        throw std::invalid_argument("make_direction: direction vector is (near) zero");
    return MeasurementDirection{(1.0 / n) * w};
}

namespace {

// σ_i ⊗ σ_j with σ_0 = I; lazily built 4×4 Pauli basis.
const CMat& pauli_pair(int i, int j) {
    static const std::array<CMat, 16> basis = [] {
        std::array<CMat, 16> b;
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
                const CMat& a = (p == 0) ? id2() : pauli(p);
                const CMat& c = (q == 0) ? id2() : pauli(q);
                b[static_cast<size_t>(p * 4 + q)] = kron(a, c);
            }
        return b;
    }();
    return basis[static_cast<size_t>(i * 4 + j)];
}

double pauli_coeff(const CMat& rho, int i, int j) {
    const CMat& g = pauli_pair(i, j);
    Cx t{0.0, 0.0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) t += rho(r, c) * g(c, r);
    return t.real();
}

}  // namespace

BlochForm bloch_decompose(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("bloch_decompose: expected a two-qubit state");
    const ValidationReport rep = validate(rho);
    if (!rep.pass())
        throw std::domain_error("bloch_decompose: input is not a valid density matrix"
                                " (hermitian dev " + std::to_string(rep.hermitian_deviation) +
                                ", trace dev " + std::to_string(rep.trace_deviation) +
                                ", min eigenvalue " + std::to_string(rep.min_eigenvalue) + ")");

    BlochForm b;
    for (int i = 1; i <= 3; ++i) b.m[static_cast<size_t>(i - 1)] = pauli_coeff(rho.mat, i, 0);
    for (int j = 1; j <= 3; ++j) b.n[static_cast<size_t>(j - 1)] = pauli_coeff(rho.mat, 0, j);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) b.t(i - 1, j - 1) = pauli_coeff(rho.mat, i, j);
    return b;
}

CMat bloch_compose(const BlochForm& b) {
    CMat rho = CMat::identity(4);
    for (int i = 1; i <= 3; ++i)
        rho = rho + b.m[static_cast<size_t>(i - 1)] * pauli_pair(i, 0);
    for (int j = 1; j <= 3; ++j)
        rho = rho + b.n[static_cast<size_t>(j - 1)] * pauli_pair(0, j);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            rho = rho + b.t(i - 1, j - 1) * pauli_pair(i, j);
    return 0.25 * rho;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const int nq = rho.qubits();
    std::vector<int> k = keep;
    std::sort(k.begin(), k.end());
    if (k.empty() || static_cast<int>(k.size()) >= nq)
        throw std::invalid_argument("partial_trace: keep set must be a nonempty proper subset");
    if (std::adjacent_find(k.begin(), k.end()) != k.end())
        throw std::invalid_argument("partial_trace: duplicate qubit index");
    if (k.front() < 0 || k.back() >= nq)
        throw std::invalid_argument("partial_trace: qubit index out of range");

    std::vector<int> traced;
    for (int q = 0; q < nq; ++q)
        if (!std::binary_search(k.begin(), k.end(), q)) traced.push_back(q);

    const int nk = static_cast<int>(k.size());
    const int nt = static_cast<int>(traced.size());
    const int out_dim = 1 << nk;
    const int tr_dim = 1 << nt;

    // Qubit 0 is the most significant bit of a basis index.
    auto assemble = [&](int kept_bits, int traced_bits) {
        int full = 0;
        for (int b = 0; b < nk; ++b) {
            const int bit = (kept_bits >> (nk - 1 - b)) & 1;
            full |= bit << (nq - 1 - k[static_cast<size_t>(b)]);
        }
        for (int b = 0; b < nt; ++b) {
            const int bit = (traced_bits >> (nt - 1 - b)) & 1;
            full |= bit << (nq - 1 - traced[static_cast<size_t>(b)]);
        }
        return full;
    };

    CMat out(out_dim);
    for (int r = 0; r < out_dim; ++r)
        for (int c = 0; c < out_dim; ++c) {
            Cx s{0.0, 0.0};
            for (int t = 0; t < tr_dim; ++t)
                s += rho.mat(assemble(r, t), assemble(c, t));
            out(r, c) = s;
        }
    return make_state_unchecked(std::move(out));
}

DensityMatrix reduce_ordered_pair(const DensityMatrix& rho, int first, int second) {
    if (first == second)
        throw std::invalid_argument("reduce_ordered_pair: qubits must differ");
    DensityMatrix red = partial_trace(rho, {std::min(first, second), std::max(first, second)});
    if (first > second) red = swap_qubits(red);
    return red;
}

DensityMatrix swap_qubits(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("swap_qubits: expected a two-qubit state");
    static const int perm[4] = {0, 2, 1, 3};   // |ab⟩ → |ba⟩
    CMat out(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(perm[i], perm[j]) = rho.mat(i, j);
    return make_state_unchecked(std::move(out));
}

double binary_entropy(double p) {
    p = std::clamp(p, 0.0, 1.0);
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double vn_entropy(const DensityMatrix& rho) {
    const HermEigenResult eig = herm_eigen(rho.mat);
    double s = 0.0;
    for (double lam : eig.values) {
        lam = std::clamp(lam, 0.0, 1.0);
        if (lam > 0.0) s -= lam * std::log2(lam);
    }
    return s;
}

double mutual_info(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("mutual_info: expected a two-qubit state");
    const double sa = vn_entropy(partial_trace(rho, {0}));
    const double sb = vn_entropy(partial_trace(rho, {1}));
    return sa + sb - vn_entropy(rho);
}

double cond_entropy(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("cond_entropy: expected a two-qubit state");
    return vn_entropy(rho) - vn_entropy(partial_trace(rho, {1}));
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const CMat& ua, const CMat& ub) {
    if (rho.dim() != 4 || ua.dim() != 2 || ub.dim() != 2)
        throw std::invalid_argument("apply_local_unitary: expected a two-qubit state and 2×2 factors");
    for (const CMat* u : {&ua, &ub}) {
        const double dev = max_abs_diff(adjoint(*u) * (*u), CMat::identity(2));
        if (dev > kUnitaryTol)
            throw std::domain_error("apply_local_unitary: factor is not unitary (deviation " +
                                    std::to_string(dev) + ")");
    }
    const CMat u = kron(ua, ub);
    return make_state_unchecked(u * rho.mat * adjoint(u));
}

// ———————————————————————————————————————————————————————————————————————————
// Sampling
// ———————————————————————————————————————————————————————————————————————————

double Gaussian::uniform() {
    // 53-bit mantissa, strictly inside (0,1).
    while (true) {
        const double u = (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
        if (u > 0.0 && u < 1.0) return u;
    }
}

double Gaussian::operator()() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

namespace {

DensityMatrix pure_from_amplitudes(const std::vector<Cx>& amp) {
    double n2 = 0.0;
    for (const Cx& a : amp) n2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(n2);
    const int d = static_cast<int>(amp.size());
    CMat rho(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            rho(i, j) = inv * amp[static_cast<size_t>(i)] * std::conj(inv * amp[static_cast<size_t>(j)]);
    return make_state_unchecked(std::move(rho));
}

DensityMatrix sample_pure(int dim, Gaussian& g) {
    std::vector<Cx> amp(static_cast<size_t>(dim));
    for (Cx& a : amp) {
        const double re = g();
        const double im = g();
        a = Cx{re, im};
    }
    return pure_from_amplitudes(amp);
}

}  // namespace

DensityMatrix sample_random(SampleKind kind, Gaussian& g) {
    switch (kind) {
        case SampleKind::Pure2q: return sample_pure(4, g);
        case SampleKind::Pure3q: return sample_pure(8, g);
        case SampleKind::Ginibre2q: {
            CMat gm(4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const double re = g();
                    const double im = g();
                    gm(i, j) = Cx{re, im};
                }
            CMat rho = gm * adjoint(gm);
            const double tr = trace(rho).real();
            rho = (1.0 / tr) * rho;
            return make_state_unchecked(std::move(rho));
        }
    }
    throw std::invalid_argument("sample_random: unknown kind");
}

DensityMatrix sample_random(SampleKind kind, uint64_t seed) {
    Gaussian g(seed);
    return sample_random(kind, g);
}

CMat random_su2(Gaussian& g) {
    double w, x, y, z, n2;
    do {
        w = g();
        x = g();
        y = g();
        z = g();
        n2 = w * w + x * x + y * y + z * z;
    } while (n2 < 1e-12);
    const double inv = 1.0 / std::sqrt(n2);
    w *= inv;
    x *= inv;
    y *= inv;
    z *= inv;
    CMat u(2);
    u(0, 0) = Cx{w, -z};
    u(0, 1) = Cx{-y, -x};
    u(1, 0) = Cx{y, -x};
    u(1, 1) = Cx{w, z};
    return u;
}

}  // namespace discordkit
