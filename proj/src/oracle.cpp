#include "discordkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace discordkit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNegligibleP = 1e-12;

// Measurement geometry reduced to Bloch data. With the measured side's Bloch
// vector a, the other side's b and the tensor column action c(w):
//   P_j  = ½ (1 + (−1)ʲ a·w)
//   v_j  = (b + (−1)ʲ c(w)) / (2 P_j)     (conditional Bloch vector)
// For measurement on A: a = m, b = n, c(w) = Tᵗw; on B: a = n, b = m,
// c(w) = Tw.
struct MeasuredForm {
    Vec3 a{};
    Vec3 b{};
    Mat3 t_action;     // multiplies w
    double s_other = 0.0;

    explicit MeasuredForm(const DensityMatrix& rho, Side side) {
        const BlochForm bf = bloch_decompose(rho);
        if (side == Side::A) {
            a = bf.m;
            b = bf.n;
            t_action = transpose(bf.t);
        } else {
            a = bf.n;
            b = bf.m;
            t_action = bf.t;
        }
        s_other = binary_entropy(0.5 * (1.0 + norm(b)));
    }

    double branch_probability(const Vec3& w, int j) const {
        return 0.5 * (1.0 + (j == 0 ? 1.0 : -1.0) * dot(a, w));
    }

    Vec3 branch_vector(const Vec3& w, int j, double pj) const {
        const Vec3 c = t_action * w;
        return (0.5 / pj) * (j == 0 ? b + c : b - c);
    }

    // J(w) = S_other − Σ_j P_j · h((1 + |v_j|)/2); P_j ≤ 1e-12 contributes 0.
    double classical_correlation(const Vec3& w) const {
        double cond = 0.0;
        const Vec3 c = t_action * w;
        for (int j = 0; j < 2; ++j) {
            const double pj = branch_probability(w, j);
            if (pj <= kNegligibleP) continue;
            const Vec3 v = (0.5 / pj) * (j == 0 ? b + c : b - c);
            cond += pj * binary_entropy(0.5 * (1.0 + std::min(1.0, norm(v))));
        }
        return s_other - cond;
    }
};

Vec3 direction_from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

CMat qubit_from_bloch(const Vec3& v) {
    CMat m(2);
    m(0, 0) = Cx{0.5 * (1.0 + v[2]), 0};
    m(1, 1) = Cx{0.5 * (1.0 - v[2]), 0};
    m(0, 1) = Cx{0.5 * v[0], -0.5 * v[1]};
    m(1, 0) = std::conj(m(0, 1));
    return m;
}

}  // namespace

std::array<ConditionalState, 2> conditional_states(const DensityMatrix& rho, Side side,
                                                   const MeasurementDirection& w) {
    const MeasuredForm f(rho, side);
    std::array<ConditionalState, 2> out;
    for (int j = 0; j < 2; ++j) {
        ConditionalState& cs = out[static_cast<size_t>(j)];
        cs.probability = f.branch_probability(w.w, j);
        cs.negligible = cs.probability <= kNegligibleP;
        if (cs.negligible) {
            cs.state = make_state_unchecked(0.5 * CMat::identity(2));
        } else {
            Vec3 v = f.branch_vector(w.w, j, cs.probability);
            const double nv = norm(v);
            if (nv > 1.0) v = (1.0 / nv) * v;   // clip rounding overshoot
            cs.state = make_state_unchecked(qubit_from_bloch(v));
        }
    }
    return out;
}

double classical_correlation_at(const DensityMatrix& rho, Side side,
                                const MeasurementDirection& w) {
    return MeasuredForm(rho, side).classical_correlation(w.w);
}

DiscordEstimate discord_numeric(const DensityMatrix& rho, Side side, int grid_n, bool refine) {
    if (grid_n < 1) throw std::invalid_argument("discord_numeric: grid_n must be positive");
    const MeasuredForm f(rho, side);
    const double mi = mutual_info(rho);

    // Half-sphere grid, row-major over (θ index, φ index); a strict > keeps
    // the lexicographically first maximizer on ties.
    double best_j = -1e300;
    double best_theta = 0.0, best_phi = 0.0;
    for (int it = 0; it < grid_n; ++it) {
        const double theta = (it + 0.5) * kPi / grid_n;
        for (int ip = 0; ip < grid_n; ++ip) {
            const double phi = ip * kPi / grid_n;
            const double value = f.classical_correlation(direction_from_angles(theta, phi));
            if (value > best_j) {
                best_j = value;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    int iterations = 0;
    if (refine) {
        // Nelder–Mead on (θ, φ), maximizing; angles may wander freely since
        // any (θ, φ) still names a unit direction.
        struct Vertex {
            double x[2];
            double value;
        };
        const auto eval = [&](const double x[2]) {
            return f.classical_correlation(direction_from_angles(x[0], x[1]));
        };
        const double step = 0.5 * kPi / grid_n;
        Vertex simplex[3] = {{{best_theta, best_phi}, best_j},
                             {{best_theta + step, best_phi}, 0},
                             {{best_theta, best_phi + step}, 0}};
        simplex[1].value = eval(simplex[1].x);
        simplex[2].value = eval(simplex[2].x);

        const auto record = [&](const Vertex& v) {
            if (v.value > best_j) {
                best_j = v.value;
                best_theta = v.x[0];
                best_phi = v.x[1];
            }
        };
        record(simplex[1]);
        record(simplex[2]);

        while (iterations < 200) {
            std::sort(simplex, simplex + 3,
                      [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
            // The simplex value spread bounds what one more step can gain.
            if (simplex[0].value - simplex[2].value < 1e-10) break;
            Vertex& worst = simplex[2];
            const double cx = 0.5 * (simplex[0].x[0] + simplex[1].x[0]);
            const double cy = 0.5 * (simplex[0].x[1] + simplex[1].x[1]);

            const auto make_vertex = [&](double scale) {
                Vertex v;
                v.x[0] = cx + scale * (cx - worst.x[0]);
                v.x[1] = cy + scale * (cy - worst.x[1]);
                v.value = eval(v.x);
                record(v);
                return v;
            };

            const Vertex reflected = make_vertex(1.0);
            if (reflected.value > simplex[0].value) {
                const Vertex expanded = make_vertex(2.0);
                worst = expanded.value > reflected.value ? expanded : reflected;
            } else if (reflected.value > simplex[1].value) {
                worst = reflected;
            } else {
                const Vertex contracted =
                    make_vertex(reflected.value > worst.value ? 0.5 : -0.5);
                if (contracted.value > std::max(reflected.value, worst.value)) {
                    worst = contracted;
                } else {
                    // Shrink toward the best vertex.
                    for (int i = 1; i < 3; ++i) {
                        simplex[i].x[0] = 0.5 * (simplex[i].x[0] + simplex[0].x[0]);
                        simplex[i].x[1] = 0.5 * (simplex[i].x[1] + simplex[0].x[1]);
                        simplex[i].value = eval(simplex[i].x);
                        record(simplex[i]);
                    }
                }
            }

            ++iterations;
        }
    }

    DiscordEstimate est;
    est.j_value = best_j;
    est.value = mi - best_j;
    est.grid_points = grid_n * grid_n;
    est.refine_iterations = iterations;
    est.best_direction = make_direction(direction_from_angles(best_theta, best_phi));
    return est;
}

}  // namespace discordkit
