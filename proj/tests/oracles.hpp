// Test-only reference computations. Nothing here calls the library routine it
// is used to check.

#pragma once

#include "jcw/linalg.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using jcw::CMatrix;
using jcw::Complex;
using jcw::CVector;

inline CMatrix random_gaussian(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Complex(nd(rng), nd(rng));
        }
    }
    return m;
}

inline CVector random_unit_vector(int dim, std::mt19937_64& rng) {
    CVector v = random_gaussian(dim, 1, rng).col(0);
    return v / v.norm();
}

inline CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
    const CMatrix g = random_gaussian(dim, dim, rng);
    return 0.5 * (g + g.adjoint());
}

// Q factor of a complex Gaussian matrix (Householder QR, not the Jacobi path).
inline CMatrix random_unitary(int dim, std::mt19937_64& rng) {
    const CMatrix g = random_gaussian(dim, dim, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    return qr.householderQ() * CMatrix::Identity(dim, dim);
}

// Characteristic polynomial coefficients c_0..c_n (c_n = 1) via Faddeev-LeVerrier.
inline std::vector<double> characteristic_polynomial(const CMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = 1.0;
    CMatrix m = CMatrix::Zero(n, n);
    const CMatrix id = CMatrix::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        m = a * m + c[static_cast<std::size_t>(n - k + 1)] * id;
        c[static_cast<std::size_t>(n - k)] = -(a * m).trace() / static_cast<double>(k);
    }
    std::vector<double> out;
    for (const Complex& z : c) {
        out.push_back(z.real());
    }
    return out;
}

inline double eval_poly(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        v = v * x + *it;
    }
    return v;
}

// Real roots of the characteristic polynomial by scan + bisection (distinct roots).
inline std::vector<double> eigenvalues_by_bisection(const CMatrix& a, int scan_points = 200000) {
    const std::vector<double> c = characteristic_polynomial(a);
    const double r = a.norm() + 1.0;
    std::vector<double> roots;
    double prev_x = -r;
    double prev_v = eval_poly(c, prev_x);
    for (int i = 1; i <= scan_points; ++i) {
        const double x = -r + 2.0 * r * i / scan_points;
        const double v = eval_poly(c, x);
        if (v == 0.0) {
            roots.push_back(x);
        } else if ((prev_v < 0.0) != (v < 0.0) && prev_v != 0.0) {
            double lo = prev_x, hi = x;
            double flo = prev_v;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = eval_poly(c, mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Phi^(0), Phi^(1) of the n = 2 construction written out by hand:
//   Phi0 = cos t e^{i p0}|0> + sin t e^{i p1}|1>
//   Phi1 = -sin t e^{i(p0+x0)}|0> + cos t e^{i(p1+x0)}|1>
inline std::vector<CVector> two_dim_basis(double t, double p0, double p1, double x0) {
    auto e = [](double a) { return std::polar(1.0, a); };
    CVector a(2), b(2);
    a << std::cos(t) * e(p0), std::sin(t) * e(p1);
    b << -std::sin(t) * e(p0 + x0), std::cos(t) * e(p1 + x0);
    return {a, b};
}

// n = 3 closed forms with eta = theta^(1)_1, xi = phi^(1), zeta = phi^(2)_0.
inline std::vector<CVector> three_dim_basis(double t1, double t2, double p0, double p1, double p2, double eta,
                                            double x0, double x1, double z0) {
    auto e = [](double a) { return std::polar(1.0, a); };
    const double c1 = std::cos(t1), s1 = std::sin(t1), c2 = std::cos(t2), s2 = std::sin(t2);
    const double ce = std::cos(eta), se = std::sin(eta);
    CVector a(3), b(3), c(3);
    a << c1 * e(p0), s1 * c2 * e(p1), s1 * s2 * e(p2);
    b << -ce * s1 * e(p0 + x0),
        ce * c1 * c2 * e(x0 + p1) - se * s2 * e(x1 + p1),
        ce * c1 * s2 * e(x0 + p2) + se * c2 * e(x1 + p2);
    c << se * s1 * e(z0 + p0 + x0),
        -(se * c1 * c2 * e(z0 + x0 + p1) + ce * s2 * e(z0 + x1 + p1)),
        -se * c1 * s2 * e(z0 + x0 + p2) + ce * c2 * e(z0 + x1 + p2);
    return {a, b, c};
}

// Head vector coefficients written directly from the hyperspherical formula.
inline CVector hyperspherical(const std::vector<double>& theta, const std::vector<double>& phi) {
    const std::size_t d = phi.size();
    CVector v(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
        double r = 1.0;
        for (std::size_t l = 0; l < j; ++l) {
            r *= std::sin(theta[l]);
        }
        if (j + 1 < d) {
            r *= std::cos(theta[j]);
        }
        v(static_cast<Eigen::Index>(j)) = std::polar(r, phi[j]);
    }
    return v;
}

// Central difference of the hyperspherical head w.r.t. theta_k (1-based),
// taken after pinning theta_1..theta_{k-1} to pi/2.
inline CVector complement_by_finite_difference(std::vector<double> theta, const std::vector<double>& phi,
                                               std::size_t k, double h = 1e-6) {
    for (std::size_t l = 0; l + 1 < k; ++l) {
        theta[l] = M_PI / 2.0;
    }
    std::vector<double> plus = theta, minus = theta;
    plus[k - 1] += h;
    minus[k - 1] -= h;
    return (hyperspherical(plus, phi) - hyperspherical(minus, phi)) / (2.0 * h);
}

// max |<e,f|psi>|^2 over product kets by alternating maximization from
// random starts.
inline double max_product_overlap(const CVector& psi, int nA, int nB, std::mt19937_64& rng, int starts = 20) {
    CMatrix m(nA, nB);
    for (int i = 0; i < nA; ++i) {
        for (int j = 0; j < nB; ++j) {
            m(i, j) = psi(i * nB + j);
        }
    }
    double best = 0.0;
    for (int s = 0; s < starts; ++s) {
        CVector e = random_unit_vector(nA, rng);
        CVector f;
        for (int it = 0; it < 500; ++it) {
            f = m.transpose() * e.conjugate();
            f /= f.norm();
            e = m * f.conjugate();
            e /= e.norm();
        }
        CVector prod(nA * nB);
        for (int i = 0; i < nA; ++i) {
            for (int j = 0; j < nB; ++j) {
                prod(i * nB + j) = e(i) * f(j);
            }
        }
        best = std::max(best, std::norm(prod.dot(psi)));
    }
    return best;
}

}  // namespace oracle
