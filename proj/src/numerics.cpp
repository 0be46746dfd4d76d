#include "srnoise/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace srnoise::num {

namespace {

void require_square_small(std::size_t rows, std::size_t cols, const char* who) {
    if (rows != cols) throw InputError("NonSquareMatrix", std::string(who) + ": matrix must be square");
    if (rows == 0 || rows > kMaxDenseDim)
        throw InputError("DimensionOutOfRange",
                         std::string(who) + ": dimension must be in [1, " + std::to_string(kMaxDenseDim) + "]");
}

double max_abs(const Mat& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s = std::max(s, std::abs(m(i, j)));
    return s;
}

}  // namespace

CMat to_complex(const Mat& a) {
    CMat z(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) z(i, j) = a(i, j);
    return z;
}

CMat solve_dense(CMat a, CMat b) {
    require_square_small(a.rows(), a.cols(), "solve_dense");
    if (b.rows() != a.rows()) throw InputError("DimensionMismatch", "solve_dense: rhs rows != matrix dim");
    const std::size_t n = a.rows();

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) throw NumericalError("SingularMatrix", "zero matrix");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                piv = r;
            }
        if (best <= scale * 1e-300) throw NumericalError("SingularMatrix", "pivot vanished");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(piv, j));
        }
        const cplx inv_p = cplx(1.0) / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx m = a(r, col) * inv_p;
            if (m == cplx(0.0)) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= m * a(col, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= m * b(col, j);
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        const cplx inv_p = cplx(1.0) / a(col, col);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = b(col, j);
            for (std::size_t k = col + 1; k < n; ++k) s -= a(col, k) * b(k, j);
            b(col, j) = s * inv_p;
        }
    }
    return b;
}

std::vector<cplx> solve_dense(const CMat& a, const std::vector<cplx>& b) {
    CMat rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    CMat x = solve_dense(a, rhs);
    std::vector<cplx> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(i, 0);
    return out;
}

std::vector<double> solve_dense(const Mat& a, const std::vector<double>& b) {
    std::vector<cplx> zb(b.begin(), b.end());
    std::vector<cplx> zx = solve_dense(to_complex(a), zb);
    std::vector<double> out(zx.size());
    for (std::size_t i = 0; i < zx.size(); ++i) out[i] = zx[i].real();
    return out;
}

std::vector<double> symmetric_eigenvalues(Mat m) {
    require_square_small(m.rows(), m.cols(), "symmetric_eigenvalues");
    const std::size_t n = m.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
        if (off <= 1e-300 || std::sqrt(off) <= 1e-15 * (1.0 + max_abs(m))) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (m(p, q) == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::variant<SymmetricFactor, Indefinite> factor_symmetric(const Mat& m, double tol) {
    require_square_small(m.rows(), m.cols(), "factor_symmetric");
    const std::size_t n = m.rows();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
    if (asym > 1e-10 * (1.0 + max_abs(m)))
        throw InputError("NonSymmetricMatrix", "factor_symmetric needs a symmetric matrix");

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(m(i, i)));
    if (scale == 0.0) scale = 1.0;

    // Pivoted (outer-product) Cholesky; a pivot below -tol*scale means indefinite.
    Mat a = m;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Mat l(n, n);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (a(i, i) > a(piv, piv)) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, piv));
            for (std::size_t j = 0; j < n; ++j) std::swap(l(k, j), l(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        const double d = a(k, k);
        if (d < -tol * scale) return Indefinite{symmetric_eigenvalues(m).front()};
        if (d <= tol * scale) {
            // rank exhausted: the remaining block must be negligible
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (std::abs(a(i, j)) > tol * scale * 10.0)
                        return Indefinite{symmetric_eigenvalues(m).front()};
            break;
        }
        const double root = std::sqrt(d);
        l(k, rank) = root;
        for (std::size_t i = k + 1; i < n; ++i) l(i, rank) = a(i, k) / root;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l(i, rank) * l(j, rank);
        ++rank;
    }
    // undo the row permutation so that b*b^T = m
    Mat b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(perm[i], j) = l(i, j);
    return SymmetricFactor{std::move(b)};
}

namespace {

// One explicit single-shift QR step on the active Hessenberg block [0, m].
void qr_step(CMat& h, std::size_t m, cplx shift) {
    const std::size_t n = m + 1;
    std::vector<cplx> cs(n), sn(n);
    for (std::size_t i = 0; i < n; ++i) h(i, i) -= shift;
    // QR by Givens rotations acting on rows (i, i+1)
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const cplx x = h(i, i), y = h(i + 1, i);
        const double norm = std::hypot(std::abs(x), std::abs(y));
        if (norm == 0.0) {
            cs[i] = 1.0;
            sn[i] = 0.0;
            continue;
        }
        const cplx c = x / norm, s = y / norm;
        cs[i] = c;
        sn[i] = s;
        for (std::size_t j = i; j < n; ++j) {
            const cplx hij = h(i, j), h1j = h(i + 1, j);
            h(i, j) = std::conj(c) * hij + std::conj(s) * h1j;
            h(i + 1, j) = -s * hij + c * h1j;
        }
    }
    // RQ: apply the conjugated rotations on columns (i, i+1)
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const cplx c = cs[i], s = sn[i];
        for (std::size_t j = 0; j <= std::min(i + 2, n - 1); ++j) {
            const cplx hji = h(j, i), hj1 = h(j, i + 1);
            h(j, i) = hji * c + hj1 * s;
            h(j, i + 1) = -hji * std::conj(s) + hj1 * std::conj(c);
        }
    }
    for (std::size_t i = 0; i < n; ++i) h(i, i) += shift;
}

}  // namespace

std::vector<cplx> eigenvalues(CMat a) {
    require_square_small(a.rows(), a.cols(), "eigenvalues");
    const std::size_t n = a.rows();
    if (n == 1) return {a(0, 0)};

    // Householder reduction to upper Hessenberg form
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm = std::max(colnorm, std::abs(a(i, k)));
        if (colnorm == 0.0) continue;
        std::vector<cplx> v(n, cplx(0.0));
        double norm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / colnorm;
            norm2 += std::norm(v[i]);
        }
        const double alpha = std::sqrt(norm2);
        const cplx phase = (std::abs(v[k + 1]) == 0.0) ? cplx(1.0) : v[k + 1] / std::abs(v[k + 1]);
        v[k + 1] += phase * alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        // a <- (I - 2 v v^H / v^H v) a (I - 2 v v^H / v^H v)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s(0.0);
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            cplx s(0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j]);
        }
    }

    std::vector<cplx> ev;
    ev.reserve(n);
    std::size_t m = n - 1;
    int iter = 0;
    const int max_iter = 60 * static_cast<int>(n);
    while (true) {
        // deflate converged subdiagonals
        while (m > 0) {
            const double off = std::abs(a(m, m - 1));
            const double scale = std::abs(a(m - 1, m - 1)) + std::abs(a(m, m));
            if (off <= 1e-15 * std::max(scale, 1e-300)) {
                a(m, m - 1) = 0.0;
                ev.push_back(a(m, m));
                --m;
            } else {
                break;
            }
        }
        if (m == 0) {
            ev.push_back(a(0, 0));
            break;
        }
        if (++iter > max_iter)
            throw NumericalError("EigenvalueIterationLimit", "QR iteration did not converge");
        // Wilkinson shift from the trailing 2x2
        const cplx h00 = a(m - 1, m - 1), h01 = a(m - 1, m), h10 = a(m, m - 1), h11 = a(m, m);
        const cplx tr = h00 + h11;
        const cplx det = h00 * h11 - h01 * h10;
        const cplx disc = std::sqrt(tr * tr - 4.0 * det);
        const cplx r1 = (tr + disc) / 2.0, r2 = (tr - disc) / 2.0;
        const cplx shift = (std::abs(r1 - h11) < std::abs(r2 - h11)) ? r1 : r2;
        qr_step(a, m, shift);
    }
    return ev;
}

std::vector<cplx> eigenvalues(const Mat& a) { return eigenvalues(to_complex(a)); }

double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol) {
    if (!(lo < hi)) throw InputError("BadBracket", "bisect requires lo < hi");
    if (!(xtol > 0.0)) throw InputError("BadTolerance", "bisect requires xtol > 0");
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NumericalError("NoSignChange", "f(" + std::to_string(lo) + ") = " + std::to_string(flo) +
                                                 ", f(" + std::to_string(hi) + ") = " + std::to_string(fhi));
    const std::size_t max_iter =
        static_cast<std::size_t>(std::ceil(std::log2((hi - lo) / xtol))) + 2;
    double mid = 0.5 * (lo + hi);
    for (std::size_t it = 0; it < max_iter && (hi - lo) > xtol; ++it) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule on [-1, 1].
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct Panel {
    double a, b;      // theta interval
    double value;     // Kronrod estimate
    double err;       // |Kronrod - Gauss|
};

}  // namespace

QuadratureResult integrate_line(const std::function<double(double)>& f, double rel_tol,
                                double abs_tol, std::span<const double> breakpoints,
                                std::size_t max_panels) {
    const double half_pi = std::acos(0.0);
    std::size_t evaluations = 0;

    const auto g = [&](double theta) {
        const double w = std::tan(theta);
        const double c = std::cos(theta);
        ++evaluations;
        const double fw = f(w);
        return fw / (c * c);
    };

    const auto eval_panel = [&](double a, double b) {
        const double h = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double kres = 0.0, gres = 0.0;
        for (int i = 0; i < 8; ++i) {
            if (kXgk[i] == 0.0) {
                const double v = g(mid);
                kres += kWgk[i] * v;
                gres += kWg[3] * v;
            } else {
                const double v1 = g(mid - h * kXgk[i]);
                const double v2 = g(mid + h * kXgk[i]);
                kres += kWgk[i] * (v1 + v2);
                if (i % 2 == 1) gres += kWg[i / 2] * (v1 + v2);
            }
        }
        return Panel{a, b, kres * h, std::abs(kres - gres) * h};
    };

    // seed panel edges: breakpoints plus |w| = 1 splits; keep strictly inside (-pi/2, pi/2)
    std::set<double> edges{-half_pi, -half_pi / 2.0, 0.0, half_pi / 2.0, half_pi};
    for (double w : breakpoints) {
        if (std::isfinite(w)) edges.insert(std::atan(w));
    }

    std::vector<Panel> panels;
    double prev = 0.0;
    bool first = true;
    for (double e : edges) {
        if (!first && e > prev) panels.push_back(eval_panel(prev, e));
        prev = e;
        first = false;
    }

    const auto totals = [&panels] {
        double v = 0.0, e = 0.0;
        for (const auto& p : panels) {
            v += p.value;
            e += p.err;
        }
        return std::pair{v, e};
    };

    while (true) {
        auto [value, err] = totals();
        if (err <= std::max(abs_tol, rel_tol * std::abs(value))) {
            return {value, err, evaluations};
        }
        if (panels.size() >= max_panels)
            throw NumericalError("NonConvergentQuadrature",
                                 "error estimate " + std::to_string(err) + " above tolerance after " +
                                     std::to_string(panels.size()) + " panels");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b))
            throw NumericalError("NonConvergentQuadrature", "panel at floating-point resolution");
        panels[worst] = eval_panel(p.a, mid);
        panels.push_back(eval_panel(mid, p.b));
    }
}

}  // namespace srnoise::num
