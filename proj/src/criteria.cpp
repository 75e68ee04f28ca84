#include "discordkit/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace discordkit {

const char* to_string(RankClass c) {
    switch (c) {
        case RankClass::Null: return "null";
        case RankClass::RankOne: return "rank-one";
        case RankClass::Higher: return "higher";
    }
    return "?";
}

const char* to_string(LinePattern p) {
    switch (p) {
        case LinePattern::AllZero: return "all-zero";
        case LinePattern::TwoZero: return "two-zero";
        case LinePattern::OneZero: return "one-zero";
        case LinePattern::NoneZero: return "none-zero";
    }
    return "?";
}

namespace {

Vec3 line(const Mat3& t, int i) { return t.row(i); }

// Row structure of `t` under the zero-line threshold `tau`. Multipliers are
// meaningful (and populated) only for rank-one tensors. If every row falls
// below `tau` yet the tensor is rank one (possible only in a thin threshold
// corridor), the largest row is promoted so the rank-one case split stays
// total.
AxisPattern analyze_lines(const Mat3& t, double tau, bool rank_one) {
    AxisPattern ap;
    std::vector<int> zero, nonzero;
    for (int i = 0; i < 3; ++i)
        (norm(line(t, i)) <= tau ? zero : nonzero).push_back(i);

    if (zero.size() == 3 && rank_one) {
        int k = 0;
        for (int i = 1; i < 3; ++i)
            if (norm(line(t, i)) > norm(line(t, k))) k = i;
        zero.clear();
        nonzero.clear();
        for (int i = 0; i < 3; ++i)
            (i == k ? nonzero : zero).push_back(i);
    }

    switch (zero.size()) {
        case 3:
            ap.pattern = LinePattern::AllZero;
            break;
        case 2:
            ap.pattern = LinePattern::TwoZero;
            ap.order = {zero[0], zero[1], nonzero[0]};
            break;
        case 1: {
            ap.pattern = LinePattern::OneZero;
            ap.order = {zero[0], nonzero[0], nonzero[1]};
            if (rank_one) {
                const Vec3 aj = line(t, nonzero[0]), ak = line(t, nonzero[1]);
                ap.p = dot(aj, ak) / dot(ak, ak);
            }
            break;
        }
        case 0:
            ap.pattern = LinePattern::NoneZero;
            ap.order = {0, 1, 2};
            if (rank_one) {
                const Vec3 a1 = line(t, 0), a2 = line(t, 1), a3 = line(t, 2);
                ap.p12 = dot(a1, a2) / dot(a2, a2);
                ap.p13 = dot(a1, a3) / dot(a3, a3);
            }
            break;
    }
    return ap;
}

struct BranchNames {
    const char* two_zero_orth;
    const char* two_zero_par;
    const char* one_zero_par;
    const char* one_zero_orth;
    const char* none_zero_orth;
    const char* none_zero_par;
};

constexpr BranchNames kRowNames{"two-zero-rows-mk",        "two-zero-rows-mimj",
                                "one-zero-row-parallel",   "one-zero-row-antiparallel",
                                "all-rows-orthogonal-combination", "all-rows-proportional"};
constexpr BranchNames kColNames{"two-zero-cols-nk",        "two-zero-cols-ninj",
                                "one-zero-col-parallel",   "one-zero-col-antiparallel",
                                "all-cols-orthogonal-combination", "all-cols-proportional"};

// Enumerated zero-discord conditions for one direction: `t` holds the tensor
// with the relevant lines as ROWS (pass Tᵗ for the column side), `m` the Bloch
// vector constrained by the zero-discord conditions on that side.
DirectionVerdict check_direction(const Mat3& t, const Vec3& m, const Thresholds& tol,
                                 const BranchNames& names) {
    const Svd3Result svd = svd3(t);
    const double a1 = std::abs(svd.s[0]);
    const double a2 = std::abs(svd.s[1]);
    const double a3 = std::abs(svd.s[2]);
    const double tau = tol.rank_rel * std::max(1.0, a1);
    const int significant = (a1 > tau) + (a2 > tau) + (a3 > tau);

    DirectionVerdict v;
    if (significant == 0) {
        v.zero = true;
        v.condition = "null-T";
        v.margin = tau - a1;
        v.residuals.push_back({"null-T", a1, tau});
        return v;
    }
    if (significant >= 2) {
        v.zero = false;
        v.condition = "positive";
        v.margin = a2 - tau;
        v.residuals.push_back({"rank-second-singular", a2, tau});
        return v;
    }

    // Rank one: evaluate the branch pair for the row pattern, in the order the
    // conditions are stated; the smallest fired residual names the verdict.
    const AxisPattern ap = analyze_lines(t, tau, true);
    const double tol_lin = tol.condition * (1.0 + norm(m));
    const double tol_cross = tol.condition;

    const auto mi = [&](int role) { return m[static_cast<size_t>(ap.order[static_cast<size_t>(role)])]; };

    switch (ap.pattern) {
        case LinePattern::TwoZero:
            v.residuals.push_back({names.two_zero_orth, std::abs(mi(2)), tol_lin});
            v.residuals.push_back({names.two_zero_par, std::hypot(mi(0), mi(1)), tol_cross});
            break;
        case LinePattern::OneZero: {
            const double denom = std::sqrt(1.0 + ap.p * ap.p);
            v.residuals.push_back(
                {names.one_zero_par, std::hypot(mi(0), (mi(1) - ap.p * mi(2)) / denom), tol_cross});
            v.residuals.push_back(
                {names.one_zero_orth, std::abs(ap.p * mi(1) + mi(2)) / denom, tol_lin});
            break;
        }
        case LinePattern::NoneZero: {
            const Vec3 w{ap.p12 * ap.p13, ap.p13, ap.p12};
            const Vec3 wh = (1.0 / norm(w)) * w;
            v.residuals.push_back({names.none_zero_orth, std::abs(dot(m, wh)), tol_lin});
            v.residuals.push_back({names.none_zero_par, norm(cross(m, wh)), tol_cross});
            break;
        }
        case LinePattern::AllZero:
            break;   // unreachable: analyze_lines promotes a row for rank one
    }

    int best = -1;
    for (size_t idx = 0; idx < v.residuals.size(); ++idx) {
        const BranchResidual& br = v.residuals[idx];
        if (br.residual <= br.threshold &&
            (best < 0 || br.residual < v.residuals[static_cast<size_t>(best)].residual))
            best = static_cast<int>(idx);
    }
    if (best >= 0) {
        const BranchResidual& br = v.residuals[static_cast<size_t>(best)];
        v.zero = true;
        v.condition = br.condition;
        v.margin = br.threshold - br.residual;
    } else {
        v.zero = false;
        v.condition = "positive";
        v.margin = 0.0;
        bool first = true;
        for (const BranchResidual& br : v.residuals) {
            const double clearance = br.residual - br.threshold;
            if (first || clearance < v.margin) v.margin = clearance;
            first = false;
        }
    }
    return v;
}

// Spectral route: the zero/positive split follows the dominant eigenvector u
// of the Gram matrix (Γ = TTᵗ for the row side, Ω = TᵗT for the column side):
// zero iff the tensor vanishes, or is rank one with m ⊥ u or m ∥ u.
//
// The rank count itself is taken from T's singular values, shared with the
// enumerated route: eigenvalues of Γ carry O(ε)·λ₁ rounding noise, so a
// √eigenvalue estimate of s₂ bottoms out near 1e-8·s₁ — above the 1e-9 rank
// threshold — while the one-sided svd3 resolves s₂ down to O(ε)·s₁.
bool check_gram_spectral(const Mat3& t, const Vec3& m, const Thresholds& tol, bool column_side) {
    const Svd3Result svd = svd3(t);
    const double tau = tol.rank_rel * std::max(1.0, std::abs(svd.s[0]));
    const int significant =
        (std::abs(svd.s[0]) > tau) + (std::abs(svd.s[1]) > tau) + (std::abs(svd.s[2]) > tau);

    if (significant == 0) return true;
    if (significant >= 2) return false;

    const Mat3 gram = column_side ? transpose(t) * t : t * transpose(t);
    CMat gc(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gc(i, j) = Cx{gram(i, j), 0.0};
    const HermEigenResult eig = herm_eigen(gc);

    Vec3 u{eig.vectors(0, 0).real(), eig.vectors(1, 0).real(), eig.vectors(2, 0).real()};
    u = (1.0 / norm(u)) * u;
    const double tol_lin = tol.condition * (1.0 + norm(m));
    const double tol_cross = tol.condition;
    return std::abs(dot(m, u)) <= tol_lin || norm(cross(m, u)) <= tol_cross;
}

void require_finite(const Mat3& t, const Vec3& m, const Vec3& n, const char* who) {
    if (!is_finite(t) || !std::isfinite(norm(m)) || !std::isfinite(norm(n)))
        throw std::invalid_argument(std::string(who) + ": non-finite entry");
}

}  // namespace

TensorStructure analyze_tensor(const Mat3& t, const Vec3& m, const Vec3& n,
                               const Thresholds& tol) {
    require_finite(t, m, n, "analyze_tensor");
    const Svd3Result svd = svd3(t);
    const double a1 = std::abs(svd.s[0]);
    const double tau = tol.rank_rel * std::max(1.0, a1);
    const int significant =
        (a1 > tau) + (std::abs(svd.s[1]) > tau) + (std::abs(svd.s[2]) > tau);

    TensorStructure ts;
    ts.singular_values = svd.s;
    ts.rank_class = significant == 0   ? RankClass::Null
                    : significant == 1 ? RankClass::RankOne
                                       : RankClass::Higher;
    if (ts.rank_class == RankClass::RankOne) {
        ts.left_vector = svd.u.col(0);
        ts.right_vector = svd.v.col(0);
    }
    const bool rank_one = ts.rank_class == RankClass::RankOne;
    ts.rows = analyze_lines(t, tau, rank_one);
    ts.cols = analyze_lines(transpose(t), tau, rank_one);
    return ts;
}

TensorStructure analyze_tensor(const BlochForm& b, const Thresholds& tol) {
    return analyze_tensor(b.t, b.m, b.n, tol);
}

DirectionVerdict check_cq(const BlochForm& b, const Thresholds& tol) {
    return check_direction(b.t, b.m, tol, kRowNames);
}

DirectionVerdict check_qc(const BlochForm& b, const Thresholds& tol) {
    return check_direction(transpose(b.t), b.n, tol, kColNames);
}

bool check_cq_spectral(const BlochForm& b, const Thresholds& tol) {
    return check_gram_spectral(b.t, b.m, tol, false);
}

bool check_qc_spectral(const BlochForm& b, const Thresholds& tol) {
    return check_gram_spectral(b.t, b.n, tol, true);
}

DiscordClass classify(const DensityMatrix& rho, const Thresholds& tol) {
    const BlochForm b = bloch_decompose(rho);   // validates
    DiscordClass dc;
    dc.b_given_a = check_cq(b, tol);
    dc.a_given_b = check_qc(b, tol);
    dc.a_sender_usable = dc.b_given_a.zero;
    dc.b_sender_usable = dc.a_given_b.zero;
    return dc;
}

// ———————————————————————————————————————————————————————————————————————————
// X states
// ———————————————————————————————————————————————————————————————————————————

CMat xstate_matrix(const XStateParams& p) {
    CMat rho(4);
    rho(0, 0) = Cx{p.x1, 0};
    rho(1, 1) = Cx{p.x2, 0};
    rho(2, 2) = Cx{p.x3, 0};
    rho(3, 3) = Cx{p.x4, 0};
    rho(0, 3) = rho(3, 0) = Cx{p.y1, 0};
    rho(1, 2) = rho(2, 1) = Cx{p.y2, 0};
    return rho;
}

namespace {

void xstate_check_domain(const XStateParams& p) {
    for (double v : {p.x1, p.x2, p.x3, p.x4, p.y1, p.y2})
        if (!std::isfinite(v)) throw std::invalid_argument("x-state: non-finite parameter");
    const double sum = p.x1 + p.x2 + p.x3 + p.x4;
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::domain_error("x-state: diagonal must sum to 1 (got " + std::to_string(sum) + ")");
    if (p.x1 < -1e-12 || p.x2 < -1e-12 || p.x3 < -1e-12 || p.x4 < -1e-12)
        throw std::domain_error("x-state: negative diagonal entry");
    if (p.y1 * p.y1 > p.x1 * p.x4 + 1e-12)
        throw std::domain_error("x-state: PSD violated, y1^2 > x1*x4");
    if (p.y2 * p.y2 > p.x2 * p.x3 + 1e-12)
        throw std::domain_error("x-state: PSD violated, y2^2 > x2*x3");
}

}  // namespace

DensityMatrix xstate_compose(const XStateParams& p) {
    xstate_check_domain(p);
    return make_state(xstate_matrix(p));
}

DiscordClass xstate_classify(const XStateParams& p, const Thresholds& tol) {
    xstate_check_domain(p);
    const double tau = tol.condition;

    const double res_y = std::max(std::abs(p.y1), std::abs(p.y2));
    const double res_bal = std::abs(std::abs(p.y1) - std::abs(p.y2));
    const double res_cq = std::max({res_bal, std::abs(p.x1 - p.x3), std::abs(p.x2 - p.x4)});
    const double res_qc = std::max({res_bal, std::abs(p.x1 - p.x2), std::abs(p.x3 - p.x4)});

    const auto direction = [&](double res_cond2, const char* name2) {
        DirectionVerdict v;
        v.residuals.push_back({"xstate-1-y-zero", res_y, tau});
        v.residuals.push_back({name2, res_cond2, tau});
        if (res_y <= tau || res_cond2 <= tau) {
            v.zero = true;
            if (res_y <= res_cond2) {
                v.condition = "xstate-1-y-zero";
                v.margin = tau - res_y;
            } else {
                v.condition = name2;
                v.margin = tau - res_cond2;
            }
        } else {
            v.zero = false;
            v.condition = "positive";
            v.margin = std::min(res_y, res_cond2) - tau;
        }
        return v;
    };

    DiscordClass dc;
    dc.b_given_a = direction(res_cq, "xstate-2-balanced-rows");
    dc.a_given_b = direction(res_qc, "xstate-2-balanced-cols");
    dc.a_sender_usable = dc.b_given_a.zero;
    dc.b_sender_usable = dc.a_given_b.zero;
    return dc;
}

// ———————————————————————————————————————————————————————————————————————————
// Constructors
// ———————————————————————————————————————————————————————————————————————————

namespace {

void require_perm(int i, int j, int k, const char* who) {
    const int bits = (1 << i) | (1 << j) | (1 << k);
    if (i < 0 || j < 0 || k < 0 || bits != 0b111)
        throw std::invalid_argument(std::string(who) + ": (i,j,k) must be a permutation of (0,1,2)");
}

Mat3 build_pattern_rows(int row, int i, int j, int k, const Vec3& alpha, double p,
                        double p12, double p13, const char* who) {
    Mat3 t;
    switch (row) {
        case 1:
            break;
        case 2:
            require_perm(i, j, k, who);
            for (int c = 0; c < 3; ++c) t(k, c) = alpha[static_cast<size_t>(c)];
            break;
        case 3:
            require_perm(i, j, k, who);
            for (int c = 0; c < 3; ++c) {
                t(j, c) = p * alpha[static_cast<size_t>(c)];
                t(k, c) = alpha[static_cast<size_t>(c)];
            }
            break;
        case 4:
            if (std::abs(p12) < 1e-12 || std::abs(p13) < 1e-12)
                throw std::invalid_argument(std::string(who) + ": p12/p13 must be nonzero for row 4");
            for (int c = 0; c < 3; ++c) {
                t(0, c) = alpha[static_cast<size_t>(c)];
                t(1, c) = alpha[static_cast<size_t>(c)] / p12;
                t(2, c) = alpha[static_cast<size_t>(c)] / p13;
            }
            break;
        default:
            throw std::invalid_argument(std::string(who) + ": row id must be 1..4");
    }
    return t;
}

DensityMatrix compose_checked(const BlochForm& b, const char* who) {
    const CMat raw = bloch_compose(b);
    const ValidationReport rep = validate(raw);
    if (!rep.pass())
        throw std::domain_error(std::string(who) + ": composed matrix is not a state (min eigenvalue " +
                                std::to_string(rep.min_eigenvalue) + ")");
    return make_state_unchecked(raw);
}

}  // namespace

DensityMatrix build_cq(const CqBuildSpec& spec) {
    BlochForm b;
    b.m = spec.m;
    b.n = spec.n;
    b.t = build_pattern_rows(spec.row, spec.i, spec.j, spec.k, spec.alpha, spec.p, spec.p12,
                             spec.p13, "build_cq");
    const DirectionVerdict v = check_cq(b);
    if (!v.zero)
        throw std::invalid_argument(
            "build_cq: m fails every branch condition for this row pattern (closest clearance " +
            std::to_string(v.margin) + ")");
    return compose_checked(b, "build_cq");
}

DensityMatrix build_qc(const QcBuildSpec& spec) {
    BlochForm b;
    b.m = spec.m;
    b.n = spec.n;
    b.t = transpose(build_pattern_rows(spec.row, spec.i, spec.j, spec.k, spec.beta, spec.s,
                                       spec.s12, spec.s13, "build_qc"));
    const DirectionVerdict v = check_qc(b);
    if (!v.zero)
        throw std::invalid_argument(
            "build_qc: n fails every branch condition for this column pattern (closest clearance " +
            std::to_string(v.margin) + ")");
    return compose_checked(b, "build_qc");
}

// ———————————————————————————————————————————————————————————————————————————
// Genuinely classical-quantum sampling: ρ = Σ_j P_j Π_j ⊗ ρ_j. The projector
// axis w fixes the row pattern of T = w·(P₀u₀ − P₁u₁)ᵗ:
//   axis-aligned w → one nonzero row; w ∝ p·e_j + e_k → one zero row;
//   generic w (∝ (p12·p13, p13, p12)) → no zero row; and P₀u₀ = P₁u₁ → T = 0.
// ———————————————————————————————————————————————————————————————————————————

namespace {

CMat qubit_op(const Vec3& v, double weight) {
    // weight·½(I + v·σ)
    CMat m(2);
    m(0, 0) = Cx{0.5 * weight * (1.0 + v[2]), 0};
    m(1, 1) = Cx{0.5 * weight * (1.0 - v[2]), 0};
    m(0, 1) = Cx{0.5 * weight * v[0], -0.5 * weight * v[1]};
    m(1, 0) = std::conj(m(0, 1));
    return m;
}

Vec3 ball_point(Gaussian& g, double radius) {
    while (true) {
        const Vec3 v{2.0 * g.uniform() - 1.0, 2.0 * g.uniform() - 1.0, 2.0 * g.uniform() - 1.0};
        if (dot(v, v) <= 1.0) return radius * v;
    }
}

Vec3 unit_vector(Gaussian& g) {
    while (true) {
        const Vec3 v{g(), g(), g()};
        const double n = norm(v);
        if (n > 1e-6) return (1.0 / n) * v;
    }
}

double signed_multiplier(Gaussian& g) {
    const double mag = 0.25 + 2.25 * g.uniform();
    return g.uniform() < 0.5 ? -mag : mag;
}

struct ProjectiveMix {
    Vec3 w;
    double p0;
    Vec3 u0, u1;
};

ProjectiveMix draw_mix(int row, Gaussian& g) {
    ProjectiveMix mix;
    switch (row) {
        case 1:
        default:
            mix.w = unit_vector(g);
            break;
        case 2: {
            const int k = std::min(2, static_cast<int>(g.uniform() * 3.0));
            mix.w = Vec3{0, 0, 0};
            mix.w[static_cast<size_t>(k)] = 1.0;
            break;
        }
        case 3: {
            const int i = std::min(2, static_cast<int>(g.uniform() * 3.0));
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            Vec3 w{0, 0, 0};
            w[static_cast<size_t>(j)] = signed_multiplier(g);
            w[static_cast<size_t>(k)] = 1.0;
            mix.w = (1.0 / norm(w)) * w;
            break;
        }
        case 4: {
            const double p12 = signed_multiplier(g), p13 = signed_multiplier(g);
            Vec3 w{p12 * p13, p13, p12};
            mix.w = (1.0 / norm(w)) * w;
            break;
        }
    }
    mix.p0 = 0.2 + 0.6 * g.uniform();
    const double p1 = 1.0 - mix.p0;
    if (row == 1) {
        // T = w·(P₀u₀ − P₁u₁)ᵗ vanishes iff P₀u₀ = P₁u₁.
        const double cap = std::min(1.0, p1 / mix.p0) * 0.9;
        mix.u0 = ball_point(g, cap);
        mix.u1 = (mix.p0 / p1) * mix.u0;
    } else {
        do {
            mix.u0 = ball_point(g, 0.95);
            mix.u1 = ball_point(g, 0.95);
        } while (norm(mix.p0 * mix.u0 - p1 * mix.u1) < 0.05);
    }
    return mix;
}

}  // namespace

DensityMatrix sample_cq(int row, Gaussian& g) {
    if (row < 1 || row > 4) throw std::invalid_argument("sample_cq: row id must be 1..4");
    const ProjectiveMix mix = draw_mix(row, g);
    const double p1 = 1.0 - mix.p0;
    const CMat rho = kron(qubit_op(mix.w, mix.p0), qubit_op(mix.u0, 1.0)) +
                     kron(qubit_op(-1.0 * mix.w, p1), qubit_op(mix.u1, 1.0));
    return make_state(rho);
}

DensityMatrix sample_qc(int row, Gaussian& g) {
    if (row < 1 || row > 4) throw std::invalid_argument("sample_qc: row id must be 1..4");
    const ProjectiveMix mix = draw_mix(row, g);
    const double p1 = 1.0 - mix.p0;
    const CMat rho = kron(qubit_op(mix.u0, mix.p0), qubit_op(mix.w, 1.0)) +
                     kron(qubit_op(mix.u1, p1), qubit_op(-1.0 * mix.w, 1.0));
    return make_state(rho);
}

// ———————————————————————————————————————————————————————————————————————————
// Canonicalization
// ———————————————————————————————————————————————————————————————————————————

CanonicalForm canonicalize(const DensityMatrix& rho) {
    const BlochForm b = bloch_decompose(rho);
    const Svd3Result svd = svd3(b.t);
    CanonicalForm cf;
    cf.u_a = rotation_to_unitary(transpose(svd.u));
    cf.u_b = rotation_to_unitary(transpose(svd.v));
    cf.rho_prime = apply_local_unitary(rho, cf.u_a, cf.u_b);
    cf.r = svd.s;
    return cf;
}

}  // namespace discordkit
