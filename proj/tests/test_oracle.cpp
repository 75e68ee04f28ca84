#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "discordkit/criteria.hpp"
#include "discordkit/oracle.hpp"

#include <cmath>
#include <stdexcept>

using namespace discordkit;

namespace {

DensityMatrix compose_state(const Vec3& m, const Vec3& n, const Mat3& t) {
    BlochForm b;
    b.m = m;
    b.n = n;
    b.t = t;
    return make_state(bloch_compose(b));
}

DensityMatrix product_state(const Vec3& m, const Vec3& n) {
    return compose_state(m, n, Mat3::outer(m, n));
}

DensityMatrix werner(double p) {
    return compose_state({0, 0, 0}, {0, 0, 0}, Mat3::diag({-p, -p, -p}));
}

DensityMatrix bell_phi_plus() {
    return compose_state({0, 0, 0}, {0, 0, 0}, Mat3::diag({1, -1, 1}));
}

CMat qubit(const Vec3& v) {
    CMat m(2);
    m(0, 0) = Cx{0.5 * (1 + v[2]), 0};
    m(1, 1) = Cx{0.5 * (1 - v[2]), 0};
    m(0, 1) = Cx{0.5 * v[0], -0.5 * v[1]};
    m(1, 0) = std::conj(m(0, 1));
    return m;
}

// Σ_j P_j · Π_j(w) ⊗ ½(I + u_j·σ): classical on A along w by construction.
DensityMatrix cq_mixture(const Vec3& w, double p0, const Vec3& u0, const Vec3& u1) {
    const Vec3 wn = (1.0 / norm(w)) * w;
    const CMat rho = kron(Cx{p0, 0} * qubit(wn), qubit(u0)) +
                     kron(Cx{1 - p0, 0} * qubit(-1.0 * wn), qubit(u1));
    return make_state(rho);
}

// Closed-form discord of a Werner state: J is direction-independent with
// conditional Bloch length p, so D = I − (1 − h((1+p)/2)).
double werner_discord(double p) {
    const double lam0 = (1 + 3 * p) / 4, lam = (1 - p) / 4;
    const double s_ab = -(lam0 * std::log2(lam0) + 3 * lam * std::log2(lam));
    const double j = 1.0 - binary_entropy(0.5 * (1 + p));
    return 2.0 - s_ab - j;
}

}  // namespace

TEST_CASE("conditional_states: frozen ensembles") {
    const MeasurementDirection ez = make_direction({0, 0, 1});
    const MeasurementDirection skew = make_direction({1, 1, 1});

    const DensityMatrix mm = make_state(0.25 * CMat::identity(4));
    for (const auto& dir : {ez, skew}) {
        const auto br = conditional_states(mm, Side::A, dir);
        CHECK(br[0].probability == doctest::Approx(0.5));
        CHECK(br[1].probability == doctest::Approx(0.5));
        CHECK(max_abs_diff(br[0].state.mat, 0.5 * CMat::identity(2)) <= 1e-12);
        CHECK_FALSE(br[0].negligible);
    }

    const auto bell = conditional_states(bell_phi_plus(), Side::A, ez);
    CHECK(bell[0].probability == doctest::Approx(0.5));
    CHECK(bell[0].state.mat(0, 0).real() == doctest::Approx(1.0));   // |0⟩⟨0|
    CHECK(bell[1].state.mat(1, 1).real() == doctest::Approx(1.0));   // |1⟩⟨1|

    // A measurement along the defining axis recovers the construction inputs.
    const Vec3 w{0.6, 0, 0.8}, u0{0, 0, 0.5}, u1{0.2, 0.3, 0};
    const auto cq = conditional_states(cq_mixture(w, 0.3, u0, u1), Side::A,
                                       make_direction(w));
    CHECK(cq[0].probability == doctest::Approx(0.3));
    CHECK(cq[1].probability == doctest::Approx(0.7));
    CHECK(max_abs_diff(cq[0].state.mat, qubit(u0)) <= 1e-12);
    CHECK(max_abs_diff(cq[1].state.mat, qubit(u1)) <= 1e-12);
}

TEST_CASE("conditional_states: probability normalization and validity") {
    Gaussian g(2024);
    for (int i = 0; i < 200; ++i) {
        const DensityMatrix rho = sample_random(SampleKind::Ginibre2q, g);
        const MeasurementDirection dir = make_direction({g(), g(), g()});
        for (Side side : {Side::A, Side::B}) {
            const auto br = conditional_states(rho, side, dir);
            REQUIRE(std::abs(br[0].probability + br[1].probability - 1.0) <= 1e-10);
            for (const auto& b : br)
                if (!b.negligible) REQUIRE(validate(b.state).pass());
        }
    }

    // Deterministic outcome: the losing branch is flagged, not divided by ~0.
    const DensityMatrix pure_a = product_state({0, 0, 1}, {0.3, 0, 0.1});
    const auto br = conditional_states(pure_a, Side::A, make_direction({0, 0, 1}));
    CHECK(br[0].probability == doctest::Approx(1.0));
    CHECK(br[1].negligible);
}

TEST_CASE("classical_correlation_at: frozen values") {
    const MeasurementDirection ez = make_direction({0, 0, 1});
    const MeasurementDirection ex = make_direction({1, 0, 0});

    const DensityMatrix prod = product_state({0.3, 0, 0.4}, {0.1, 0.5, 0});
    CHECK(std::abs(classical_correlation_at(prod, Side::A, ez)) <= 1e-12);
    CHECK(std::abs(classical_correlation_at(prod, Side::A, ex)) <= 1e-12);
    CHECK(std::abs(classical_correlation_at(prod, Side::B, ez)) <= 1e-12);

    CHECK(classical_correlation_at(bell_phi_plus(), Side::A, ez) == doctest::Approx(1.0));

    const DensityMatrix mm = make_state(0.25 * CMat::identity(4));
    CHECK(std::abs(classical_correlation_at(mm, Side::A, ex)) <= 1e-12);

    // Mixture measured along its axis: J = S(B) − Σ P_j h((1+|u_j|)/2).
    const Vec3 w{0, 1, 0}, u0{0, 0, 0.6}, u1{0.4, 0, 0};
    const DensityMatrix cq = cq_mixture(w, 0.4, u0, u1);
    const double sb = vn_entropy(partial_trace(cq, {1}));
    const double expected = sb - 0.4 * binary_entropy(0.8) - 0.6 * binary_entropy(0.7);
    CHECK(classical_correlation_at(cq, Side::A, make_direction(w)) ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("discord_numeric: frozen values") {
    const DiscordEstimate bell = discord_numeric(bell_phi_plus(), Side::A);
    CHECK(bell.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(bell.j_value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(bell.grid_points == 64 * 64);

    for (double p : {0.3, 0.5, 0.8})
        CHECK(discord_numeric(werner(p), Side::A).value ==
              doctest::Approx(werner_discord(p)).epsilon(1e-9));

    CHECK(discord_numeric(product_state({0.3, 0, 0.4}, {0.1, 0.5, 0}), Side::A).value <= 1e-6);
    CHECK(std::abs(discord_numeric(make_state(0.25 * CMat::identity(4)), Side::A).value) <=
          1e-12);

    CHECK_THROWS_AS(discord_numeric(bell_phi_plus(), Side::A, 0), std::invalid_argument);
}

TEST_CASE("discord_numeric: estimate invariants on random states") {
    Gaussian g(808);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho = sample_random(SampleKind::Ginibre2q, g);
        const Side side = (i % 2 == 0) ? Side::A : Side::B;
        const DiscordEstimate est = discord_numeric(rho, side, 32);
        REQUIRE(std::abs(est.value - (mutual_info(rho) - est.j_value)) <= 1e-12);
        REQUIRE(est.value >= -1e-6);
        REQUIRE(est.grid_points == 32 * 32);
        REQUIRE(norm(est.best_direction.w) == doctest::Approx(1.0));
        REQUIRE(std::isfinite(est.j_value));
    }
}

TEST_CASE("discord_numeric: refinement is monotone and deterministic") {
    Gaussian g(515);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = sample_random(SampleKind::Ginibre2q, g);
        const DiscordEstimate coarse = discord_numeric(rho, Side::A, 24, false);
        const DiscordEstimate fine = discord_numeric(rho, Side::A, 24, true);
        REQUIRE(fine.value <= coarse.value + 1e-15);
        REQUIRE(fine.j_value >= coarse.j_value - 1e-15);

        const DiscordEstimate again = discord_numeric(rho, Side::A, 24, true);
        REQUIRE(again.value == fine.value);
        REQUIRE(again.j_value == fine.j_value);
        REQUIRE(again.best_direction.w == fine.best_direction.w);
    }
}

TEST_CASE("discord_numeric: swap symmetry between sides") {
    Gaussian g(616);
    for (int i = 0; i < 10; ++i) {
        const DensityMatrix rho = sample_random(SampleKind::Ginibre2q, g);
        const double swapped_a = discord_numeric(swap_qubits(rho), Side::A).value;
        const double direct_b = discord_numeric(rho, Side::B).value;
        REQUIRE(std::abs(swapped_a - direct_b) <= 1e-6);
    }
}

TEST_CASE("discord_numeric: local-unitary invariance") {
    Gaussian g(717);
    for (int i = 0; i < 8; ++i) {
        const DensityMatrix rho = sample_random(SampleKind::Ginibre2q, g);
        const double base = discord_numeric(rho, Side::A).value;
        for (int rep = 0; rep < 3; ++rep) {
            const DensityMatrix turned = apply_local_unitary(rho, random_su2(g), random_su2(g));
            REQUIRE(std::abs(discord_numeric(turned, Side::A).value - base) <= 2e-3);
        }
    }
}

TEST_CASE("oracle agrees with the analytic detector") {
    Gaussian g(929);

    // Genuinely classical constructions: discord at numerical zero.
    for (int row = 1; row <= 4; ++row)
        for (int i = 0; i < 25; ++i) {
            REQUIRE(discord_numeric(sample_cq(row, g), Side::A).value <= 1e-3);
            REQUIRE(discord_numeric(sample_qc(row, g), Side::B).value <= 1e-3);
        }

    // Detector-positive random states carry measurable discord.
    int positives = 0, missed = 0;
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = sample_random(SampleKind::Ginibre2q, g);
        if (check_cq(bloch_decompose(rho)).zero) continue;
        ++positives;
        if (discord_numeric(rho, Side::A).value <= 1e-4) ++missed;
    }
    REQUIRE(positives > 900);
    CHECK(missed * 100 <= positives);   // ≥ 99% beyond the floor
}

TEST_CASE("discord is asymmetric: one-way classical witness") {
    CqBuildSpec spec;
    spec.row = 2;
    spec.alpha = Vec3{0, 0, 0.5};
    spec.m = Vec3{0, 0, 0.4};      // aligned with the tensor axis: genuinely classical
    spec.n = Vec3{0.4, 0, 0.3};
    const DensityMatrix rho = build_cq(spec);

    CHECK(discord_numeric(rho, Side::A).value <= 1e-3);
    CHECK(discord_numeric(rho, Side::B).value > 1e-2);

    const DiscordClass dc = classify(rho);
    CHECK(dc.b_given_a.zero);
    CHECK_FALSE(dc.a_given_b.zero);
}
