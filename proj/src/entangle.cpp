#include "discordkit/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace discordkit {

namespace {

DensityMatrix pure_from_amplitudes(const std::vector<Cx>& amps) {
    const int d = static_cast<int>(amps.size());
    CMat rho(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            rho(i, j) = amps[static_cast<size_t>(i)] * std::conj(amps[static_cast<size_t>(j)]);
    return make_state_unchecked(std::move(rho));
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("concurrence: need a two-qubit state");
    const CMat yy = kron(pauli(2), pauli(2));
    const CMat rho_tilde = yy * conjugate(rho.mat) * yy;
    const CMat root = psd_sqrt(rho.mat);
    const HermEigenResult eig = herm_eigen(root * rho_tilde * root);

    // Genuinely-zero eigenvalues of the PSD form surface as O(ε·λ₁) noise whose
    // square roots would otherwise pollute the subtraction at ~√ε·√λ₁.
    const double floor = 1e-13 * std::max(eig.values[0], 0.0);
    double c = 0.0;
    for (size_t i = 0; i < 4; ++i) {
        const double lam = (eig.values[i] > floor) ? eig.values[i] : 0.0;
        c += ((i == 0) ? 1.0 : -1.0) * std::sqrt(lam);
    }
    return std::clamp(c, 0.0, 1.0);
}

double eof(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

DensityMatrix ghz_state(double zeta) {
    if (!(zeta >= 0.0 && zeta <= 0.25 * 3.14159265358979323846 + 1e-12))
        throw std::invalid_argument("ghz_state: zeta must lie in [0, pi/4]");
    std::vector<Cx> amps(8, Cx{0, 0});
    amps[0] = Cx{std::cos(zeta), 0};
    amps[7] = Cx{std::sin(zeta), 0};
    return pure_from_amplitudes(amps);
}

DensityMatrix w_state(double zeta1, double zeta2) {
    const double half_pi = 0.5 * 3.14159265358979323846;
    if (!(zeta1 >= 0.0 && zeta1 <= half_pi + 1e-12) ||
        !(zeta2 >= 0.0 && zeta2 <= half_pi + 1e-12))
        throw std::invalid_argument("w_state: angles must lie in [0, pi/2]");
    std::vector<Cx> amps(8, Cx{0, 0});
    amps[1] = Cx{std::cos(zeta1), 0};                          // |001⟩
    amps[2] = Cx{std::sin(zeta1) * std::sin(zeta2), 0};        // |010⟩
    amps[4] = Cx{std::sin(zeta1) * std::cos(zeta2), 0};        // |100⟩
    return pure_from_amplitudes(amps);
}

DensityMatrix biseparable_state(double s11, double s12, double f1, double f2) {
    if (std::abs(s11 * s11 + s12 * s12 - 1.0) > 1e-9 ||
        std::abs(f1 * f1 + f2 * f2 - 1.0) > 1e-9)
        throw std::invalid_argument("biseparable_state: coefficient pairs must be normalized");
    std::vector<Cx> amps(8, Cx{0, 0});
    amps[0] = Cx{s11 * f1, 0};   // |000⟩
    amps[1] = Cx{s11 * f2, 0};   // |001⟩
    amps[6] = Cx{s12 * f1, 0};   // |110⟩
    amps[7] = Cx{s12 * f2, 0};   // |111⟩
    return pure_from_amplitudes(amps);
}

MergingReport merging_report(const DensityMatrix& pure3, int sender, int receiver,
                             int purifier) {
    if (pure3.dim() != 8)
        throw std::invalid_argument("merging_report: need a three-qubit state");
    const int bits = (1 << sender) | (1 << receiver) | (1 << purifier);
    if (sender < 0 || receiver < 0 || purifier < 0 || bits != 0b111)
        throw std::invalid_argument(
            "merging_report: sender/receiver/purifier must be distinct qubits 0..2");

    const HermEigenResult eig = herm_eigen(pure3.mat);
    if (eig.values[0] < 1.0 - 1e-9)
        throw std::domain_error(
            "merging_report: input must be pure (largest eigenvalue " +
            std::to_string(eig.values[0]) + ")");

    MergingReport rep;
    rep.sender = sender;
    rep.receiver = receiver;
    rep.purifier = purifier;

    const DensityMatrix rho_sr = reduce_ordered_pair(pure3, sender, receiver);
    rep.s_cond = cond_entropy(rho_sr);
    rep.eof_sr = eof(rho_sr);

    const DensityMatrix rho_sp = reduce_ordered_pair(pure3, sender, purifier);
    rep.discord_sp = discord_numeric(rho_sp, Side::B).value;

    rep.identity_residual = rep.discord_sp - rep.eof_sr - rep.s_cond;
    rep.locc_feasible = rep.s_cond <= 1e-9;
    rep.ebit_gain = std::max(0.0, -rep.s_cond);
    return rep;
}

}  // namespace discordkit
