#include "discordkit/smalllin.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace discordkit {

// ———————————————————————————————————————————————————————————————————————————
// CMat basics
// ———————————————————————————————————————————————————————————————————————————

CMat CMat::identity(int n) {
    CMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = Cx{1.0, 0.0};
    return m;
}

static void require_same_dim(const CMat& a, const CMat& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matrix dimension mismatch");
}

CMat operator+(const CMat& a, const CMat& b) {
    require_same_dim(a, b);
    CMat r(a.dim());
    for (size_t k = 0; k < r.data().size(); ++k) r.data()[k] = a.data()[k] + b.data()[k];
    return r;
}

CMat operator-(const CMat& a, const CMat& b) {
    require_same_dim(a, b);
    CMat r(a.dim());
    for (size_t k = 0; k < r.data().size(); ++k) r.data()[k] = a.data()[k] - b.data()[k];
    return r;
}

CMat operator*(const CMat& a, const CMat& b) {
    require_same_dim(a, b);
    const int n = a.dim();
    CMat r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Cx aik = a(i, k);
            if (aik == Cx{0.0, 0.0}) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

CMat operator*(Cx s, const CMat& a) {
    CMat r(a.dim());
    for (size_t k = 0; k < r.data().size(); ++k) r.data()[k] = s * a.data()[k];
    return r;
}

CMat operator*(double s, const CMat& a) { return Cx{s, 0.0} * a; }

CMat adjoint(const CMat& a) {
    const int n = a.dim();
    CMat r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

CMat transpose(const CMat& a) {
    const int n = a.dim();
    CMat r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a(j, i);
    return r;
}

CMat conjugate(const CMat& a) {
    CMat r(a.dim());
    for (size_t k = 0; k < r.data().size(); ++k) r.data()[k] = std::conj(a.data()[k]);
    return r;
}

CMat kron(const CMat& a, const CMat& b) {
    const int na = a.dim(), nb = b.dim();
    CMat r(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const Cx aij = a(i, j);
            if (aij == Cx{0.0, 0.0}) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l)
                    r(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return r;
}

Cx trace(const CMat& a) {
    Cx t{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

double frob_norm(const CMat& a) {
    double s = 0.0;
    for (const Cx& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs_entry(const CMat& a) {
    double m = 0.0;
    for (const Cx& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const CMat& a, const CMat& b) {
    require_same_dim(a, b);
    double m = 0.0;
    for (size_t k = 0; k < a.data().size(); ++k)
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

double hermitian_deviation(const CMat& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j <= i; ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

bool is_finite(const CMat& a) {
    for (const Cx& z : a.data())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

// ———————————————————————————————————————————————————————————————————————————
// Mat3 basics
// ———————————————————————————————————————————————————————————————————————————

Mat3 Mat3::identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
}

Mat3 Mat3::diag(const Vec3& d) {
    Mat3 m;
    m(0, 0) = d[0];
    m(1, 1) = d[1];
    m(2, 2) = d[2];
    return m;
}

Mat3 Mat3::from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    Mat3 m;
    for (int j = 0; j < 3; ++j) {
        m(0, j) = r0[j];
        m(1, j) = r1[j];
        m(2, j) = r2[j];
    }
    return m;
}

Mat3 Mat3::from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return transpose(from_rows(c0, c1, c2));
}

Mat3 Mat3::outer(const Vec3& a, const Vec3& b) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = a[i] * b[j];
    return m;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int k = 0; k < 9; ++k) r.a[k] = a.a[k] + b.a[k];
    return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int k = 0; k < 9; ++k) r.a[k] = a.a[k] - b.a[k];
    return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (int k = 0; k < 9; ++k) r.a[k] = s * a.a[k];
    return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
            a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
            a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}

double det(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double frob_norm(const Mat3& a) {
    double s = 0.0;
    for (double x : a.a) s += x * x;
    return std::sqrt(s);
}

double max_abs_diff(const Mat3& a, const Mat3& b) {
    double m = 0.0;
    for (int k = 0; k < 9; ++k) m = std::max(m, std::abs(a.a[k] - b.a[k]));
    return m;
}

bool is_finite(const Mat3& a) {
    for (double x : a.a)
        if (!std::isfinite(x)) return false;
    return true;
}

// ———————————————————————————————————————————————————————————————————————————
// herm_eigen — cyclic Jacobi for complex Hermitian matrices.
//
// Each (p,q) rotation is the composition of a phase that makes a(p,q) real and
// a real Givens rotation that zeroes it:
//   J = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]  acting on the (p,q) plane,
// with a(p,q) = r·e^{iφ}, θ = (a_qq − a_pp)/(2r), t the stable small root of
// t² + 2θt − 1 = 0, c = 1/√(1+t²), s = t·c. A ← J†AJ, V ← V·J.
// ———————————————————————————————————————————————————————————————————————————

static double offdiag_frob(const CMat& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

HermEigenResult herm_eigen(const CMat& h) {
    const int n = h.dim();
    if (n != 2 && n != 3 && n != 4 && n != 8)
        throw std::invalid_argument("herm_eigen: dimension must be 2, 3, 4 or 8");
    if (!is_finite(h))
        throw std::invalid_argument("herm_eigen: non-finite entry");

    // Symmetrize so the iteration always sees an exactly Hermitian matrix.
    CMat a(n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = Cx{h(i, i).real(), 0.0};
        for (int j = i + 1; j < n; ++j) {
            const Cx v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }

    CMat v = CMat::identity(n);
    const double scale = std::max(frob_norm(a), 1e-300);
    const double stop = 1e-15 * scale;

    for (int sweep = 0; sweep < 60 && offdiag_frob(a) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= 1e-300) {
                    a(p, q) = a(q, p) = Cx{0.0, 0.0};
                    continue;
                }
                const Cx phase = a(p, q) / r;                   // e^{iφ}
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double root = std::sqrt(1.0 + theta * theta);
                const double t = (theta >= 0.0) ? 1.0 / (theta + root)
                                                : 1.0 / (theta - root);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const Cx jpp{c, 0.0};
                const Cx jpq{s, 0.0};
                const Cx jqp = -s * std::conj(phase);
                const Cx jqq = c * std::conj(phase);

                // Columns: A ← A·J, V ← V·J.
                for (int k = 0; k < n; ++k) {
                    const Cx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                    const Cx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                // Rows: A ← J†·A.
                for (int k = 0; k < n; ++k) {
                    const Cx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = a(q, p) = Cx{0.0, 0.0};
                a(p, p) = Cx{a(p, p).real(), 0.0};
                a(q, q) = Cx{a(q, q).real(), 0.0};
            }
        }
    }

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    HermEigenResult res;
    res.values.resize(static_cast<size_t>(n));
    res.vectors = CMat(n);
    for (int k = 0; k < n; ++k) {
        res.values[static_cast<size_t>(k)] = a(order[static_cast<size_t>(k)],
                                               order[static_cast<size_t>(k)]).real();
        for (int i = 0; i < n; ++i)
            res.vectors(i, k) = v(i, order[static_cast<size_t>(k)]);
    }
    return res;
}

// ———————————————————————————————————————————————————————————————————————————
// svd3
// ———————————————————————————————————————————————————————————————————————————

Svd3Result svd3(const Mat3& m) {
    if (!is_finite(m))
        throw std::invalid_argument("svd3: non-finite entry");

    // One-sided (Hestenes) Jacobi: right rotations orthogonalize the columns of
    // the working copy a = M·V, so U·S = a holds exactly throughout and the
    // reconstruction error stays at rounding level regardless of conditioning.
    Mat3 a = m;
    Mat3 v = Mat3::identity();
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int i = 0; i < 3; ++i) {
                    app += a(i, p) * a(i, p);
                    aqq += a(i, q) * a(i, q);
                    apq += a(i, p) * a(i, q);
                }
                if (std::abs(apq) <= 1e-15 * std::sqrt(app * aqq) || std::abs(apq) < 1e-300)
                    continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double root = std::sqrt(1.0 + zeta * zeta);
                const double t = (zeta >= 0.0) ? 1.0 / (zeta + root) : 1.0 / (zeta - root);
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                for (int i = 0; i < 3; ++i) {
                    const double x = a(i, p), y = a(i, q);
                    a(i, p) = cs * x - sn * y;
                    a(i, q) = sn * x + cs * y;
                    const double vx = v(i, p), vy = v(i, q);
                    v(i, p) = cs * vx - sn * vy;
                    v(i, q) = sn * vx + cs * vy;
                }
            }
        if (!rotated) break;
    }

    // Sort by column norm, descending; the same permutation goes to both
    // factors, so a = M·V is preserved.
    Vec3 s{norm(a.col(0)), norm(a.col(1)), norm(a.col(2))};
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return s[static_cast<size_t>(x)] > s[static_cast<size_t>(y)];
    });
    {
        const Mat3 a0 = a, v0 = v;
        const Vec3 s0 = s;
        for (int j = 0; j < 3; ++j) {
            const int src = order[static_cast<size_t>(j)];
            s[static_cast<size_t>(j)] = s0[static_cast<size_t>(src)];
            for (int i = 0; i < 3; ++i) {
                a(i, j) = a0(i, src);
                v(i, j) = v0(i, src);
            }
        }
    }

    // Proper right factor: flip the least significant column (of V and of the
    // tracked product a = M·V together) if needed.
    if (det(v) < 0.0)
        for (int i = 0; i < 3; ++i) {
            v(i, 2) = -v(i, 2);
            a(i, 2) = -a(i, 2);
        }
    std::array<Vec3, 3> vc{v.col(0), v.col(1), v.col(2)};

    // Left directions u_i = (M v_i)/s_i for significant s_i; complete the
    // frame orthonormally otherwise.
    const double tau_u = 1e-13 * s[0] + 1e-300;
    std::array<Vec3, 3> uc{};
    int formed = 0;
    for (int i = 0; i < 3 && s[static_cast<size_t>(i)] > tau_u; ++i) {
        Vec3 w = a.col(i);
        for (int k = 0; k < formed; ++k)      // defensive re-orthogonalization
            w = w - dot(w, uc[static_cast<size_t>(k)]) * uc[static_cast<size_t>(k)];
        const double wn = norm(w);
        if (wn <= tau_u) break;
        uc[static_cast<size_t>(formed)] = (1.0 / wn) * w;
        s[static_cast<size_t>(formed)] = wn;
        ++formed;
    }
    if (formed == 0) {
        uc[0] = {1.0, 0.0, 0.0};
        uc[1] = {0.0, 1.0, 0.0};
        uc[2] = {0.0, 0.0, 1.0};
    } else if (formed == 1) {
        // Any unit vector orthogonal to u₀: project out the axis u₀ leans on least.
        int axis = 0;
        for (int k = 1; k < 3; ++k)
            if (std::abs(uc[0][static_cast<size_t>(k)]) < std::abs(uc[0][static_cast<size_t>(axis)]))
                axis = k;
        Vec3 e{};
        e[static_cast<size_t>(axis)] = 1.0;
        Vec3 w = e - dot(e, uc[0]) * uc[0];
        uc[1] = (1.0 / norm(w)) * w;
        uc[2] = cross(uc[0], uc[1]);
    } else if (formed == 2) {
        uc[2] = cross(uc[0], uc[1]);
    }

    Mat3 u = Mat3::from_cols(uc[0], uc[1], uc[2]);
    if (det(u) < 0.0) {
        // Carry the reflection as a sign on the smallest singular value.
        for (int i = 0; i < 3; ++i) u(i, 2) = -u(i, 2);
        s[2] = -s[2];
    }

    Svd3Result res;
    res.u = u;
    res.s = s;
    res.v = Mat3::from_cols(vc[0], vc[1], vc[2]);
    return res;
}

// ———————————————————————————————————————————————————————————————————————————
// rotation_to_unitary — Shepperd quaternion extraction, then
//   U = w·I − i(x σ_x + y σ_y + z σ_z).
// ———————————————————————————————————————————————————————————————————————————

CMat rotation_to_unitary(const Mat3& r) {
    if (!is_finite(r))
        throw std::invalid_argument("rotation_to_unitary: non-finite entry");
    const Mat3 rtr = transpose(r) * r;
    if (max_abs_diff(rtr, Mat3::identity()) > 1e-8)
        throw std::invalid_argument("rotation_to_unitary: input is not orthogonal");
    const double d = det(r);
    if (d < 0.0)
        throw std::domain_error("rotation_to_unitary: reflection (det = -1) has no SU(2) lift");

    const double tr = r(0, 0) + r(1, 1) + r(2, 2);
    double w, x, y, z;
    if (tr > 0.0) {
        const double sq = 2.0 * std::sqrt(tr + 1.0);
        w = 0.25 * sq;
        x = (r(2, 1) - r(1, 2)) / sq;
        y = (r(0, 2) - r(2, 0)) / sq;
        z = (r(1, 0) - r(0, 1)) / sq;
    } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
        const double sq = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
        w = (r(2, 1) - r(1, 2)) / sq;
        x = 0.25 * sq;
        y = (r(0, 1) + r(1, 0)) / sq;
        z = (r(0, 2) + r(2, 0)) / sq;
    } else if (r(1, 1) >= r(2, 2)) {
        const double sq = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
        w = (r(0, 2) - r(2, 0)) / sq;
        x = (r(0, 1) + r(1, 0)) / sq;
        y = 0.25 * sq;
        z = (r(1, 2) + r(2, 1)) / sq;
    } else {
        const double sq = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
        w = (r(1, 0) - r(0, 1)) / sq;
        x = (r(0, 2) + r(2, 0)) / sq;
        y = (r(1, 2) + r(2, 1)) / sq;
        z = 0.25 * sq;
    }

    if (w < 0.0) {
        w = -w;
        x = -x;
        y = -y;
        z = -z;
    }
    const double nq = std::sqrt(w * w + x * x + y * y + z * z);
    w /= nq;
    x /= nq;
    y /= nq;
    z /= nq;

    CMat u(2);
    u(0, 0) = Cx{w, -z};
    u(0, 1) = Cx{-y, -x};
    u(1, 0) = Cx{y, -x};
    u(1, 1) = Cx{w, z};
    return u;
}

// ———————————————————————————————————————————————————————————————————————————
// psd_sqrt
// ———————————————————————————————————————————————————————————————————————————

CMat psd_sqrt(const CMat& h) {
    const HermEigenResult eig = herm_eigen(h);
    const int n = h.dim();
    const double lmax = eig.values.empty() ? 0.0 : eig.values.front();
    const double lmin = eig.values.empty() ? 0.0 : eig.values.back();
    if (lmin < -1e-8 * std::max(1.0, std::abs(lmax)))
        throw std::domain_error("psd_sqrt: matrix has a significantly negative eigenvalue (" +
                                std::to_string(lmin) + ")");

    CMat r(n);
    for (int k = 0; k < n; ++k) {
        const double lam = std::max(eig.values[static_cast<size_t>(k)], 0.0);
        const double root = std::sqrt(lam);
        if (root == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r(i, j) += root * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    return r;
}

}  // namespace discordkit
