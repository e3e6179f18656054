#include "jcw/jcmodel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace jcw {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_time(double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("jcmodel: time must be >= 0");
    }
}

void require_photons(int n, int minimum) {
    if (n < minimum) {
        throw std::invalid_argument("jcmodel: photon number " + std::to_string(n) + " below minimum " +
                                    std::to_string(minimum));
    }
}

}  // namespace

JCConfig JCConfig::from_detuning(double g, double delta, double gamma, double lambda, int n, double omegaF) {
    return JCConfig{g, omegaF + delta, omegaF, gamma, lambda, n};
}

double rabi(int n, const JCConfig& cfg) {
    const double delta = cfg.detuning();
    return std::sqrt(0.25 * delta * delta + cfg.g * cfg.g * static_cast<double>(n + 1));
}

Case1Coefficients case1_coefficients(int n, double t, const JCConfig& cfg) {
    require_photons(n, 0);
    require_time(t);
    const double delta = cfg.detuning();
    const double omega = rabi(n, cfg);
    const double omega2 = omega * omega;
    const double decay = std::exp(-2.0 * cfg.gamma * t * omega2);
    const double cos_term = std::cos(2.0 * omega * t) * decay;
    const double sin_term = std::sin(2.0 * omega * t) * decay;
    const double ratio = delta * delta / (2.0 * omega2);
    const double coupling = cfg.g * std::sqrt(static_cast<double>(n + 1));

    Case1Coefficients c;
    c.E = 0.25 * (2.0 + ratio + (2.0 - ratio) * cos_term);
    c.F = 0.25 * (coupling * coupling / omega2) * (2.0 - 2.0 * cos_term);
    c.G = coupling / (4.0 * omega) * (delta / omega * (1.0 - cos_term) + 2.0 * kI * sin_term);
    return c;
}

DensityMatrix case1_state(int n, double t, const JCConfig& cfg) {
    const Case1Coefficients c = case1_coefficients(n, t, cfg);
    // |e,n> -> 0, |g,n+1> -> 3
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = c.E;
    m(0, 3) = c.G;
    m(3, 0) = std::conj(c.G);
    m(3, 3) = c.F;
    return DensityMatrix(2, 2, std::move(m));
}

double case1_negativity_closed(int n, double t, const JCConfig& cfg) {
    require_photons(n, 0);
    require_time(t);
    const double delta = cfg.detuning();
    const double omega = rabi(n, cfg);
    const double omega2 = omega * omega;
    const double x = std::exp(-2.0 * cfg.gamma * t * omega2);
    const double a = 1.0 - x * std::cos(2.0 * omega * t);
    const double s = std::sin(2.0 * omega * t);
    const double radicand = delta * delta / omega2 * a * a + 4.0 * x * x * s * s;
    return cfg.g * std::sqrt(static_cast<double>(n + 1)) / (4.0 * omega) * std::sqrt(radicand);
}

Case2Coefficients case2_coefficients(int n, double t, const JCConfig& cfg) {
    require_photons(n, 1);
    require_time(t);
    const double delta = cfg.detuning();
    const double lower = rabi(n - 1, cfg);
    const double upper = rabi(n, cfg);
    const double nd = static_cast<double>(n);
    const Complex lower_phase = std::exp(-kI * cfg.omegaF * (nd - 0.5) * t);
    const Complex upper_phase = std::exp(-kI * cfg.omegaF * (nd + 0.5) * t);

    Case2Coefficients c;
    c.A = -kI * lower_phase * (cfg.g * std::sqrt(nd) / lower) * std::sin(lower * t);
    c.B = lower_phase * (std::cos(lower * t) + kI * (delta / (2.0 * lower)) * std::sin(lower * t));
    c.C = upper_phase * (std::cos(upper * t) - kI * (delta / (2.0 * upper)) * std::sin(upper * t));
    c.D = -kI * upper_phase * (cfg.g * std::sqrt(nd + 1.0) / upper) * std::sin(upper * t);
    return c;
}

DensityMatrix case2_state(int n, double t, const JCConfig& cfg) {
    const Case2Coefficients c = case2_coefficients(n, t, cfg);
    const double lambda = cfg.lambda;
    // field window {n-1, n, n+1}: |e,n-1> -> 0, |e,n> -> 1, |g,n> -> 4, |g,n+1> -> 5
    CVector lower_branch = CVector::Zero(6);
    lower_branch(0) = c.A;
    lower_branch(4) = c.B;
    CVector upper_branch = CVector::Zero(6);
    upper_branch(1) = c.C;
    upper_branch(5) = c.D;
    CMatrix m = lambda * lower_branch * lower_branch.adjoint() +
                (1.0 - lambda) * upper_branch * upper_branch.adjoint();
    return DensityMatrix(2, 3, std::move(m));
}

double case2_negativity_closed(int n, double t, const JCConfig& cfg) {
    const Case2Coefficients c = case2_coefficients(n, t, cfg);
    const double lambda = cfg.lambda;
    const double a2 = std::norm(c.A);
    const double b2 = std::norm(c.B);
    const double c2 = std::norm(c.C);
    const double d2 = std::norm(c.D);
    const double mu = 1.0 - lambda;
    const double first = std::sqrt(lambda * lambda * b2 * b2 + 4.0 * mu * mu * c2 * d2) - lambda * b2;
    const double second = std::sqrt(mu * mu * c2 * c2 + 4.0 * lambda * lambda * a2 * b2) - mu * c2;
    return 0.5 * first + 0.5 * second;
}

DensityMatrix embed_field_block(const DensityMatrix& block, int first_fock, int fock_cut) {
    const int width = block.dimB();
    if (block.dimA() != 2 || first_fock < 0 || first_fock + width > fock_cut) {
        throw std::invalid_argument("embed_field_block: block does not fit the Fock window");
    }
    CMatrix m = CMatrix::Zero(2 * fock_cut, 2 * fock_cut);
    for (int a = 0; a < 2; ++a) {
        for (int i = 0; i < width; ++i) {
            for (int b = 0; b < 2; ++b) {
                for (int j = 0; j < width; ++j) {
                    m(a * fock_cut + first_fock + i, b * fock_cut + first_fock + j) = block(a * width + i, b * width + j);
                }
            }
        }
    }
    return DensityMatrix(2, fock_cut, std::move(m));
}

CMatrix jc_hamiltonian(const JCConfig& cfg, int fock_cut) {
    if (fock_cut < 1) {
        throw std::invalid_argument("jc_hamiltonian: fock_cut must be positive");
    }
    CMatrix sz = CMatrix::Zero(2, 2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    CMatrix sp = CMatrix::Zero(2, 2);  // |e><g|
    sp(0, 1) = 1.0;
    CMatrix a = CMatrix::Zero(fock_cut, fock_cut);
    CMatrix number = CMatrix::Zero(fock_cut, fock_cut);
    for (int k = 0; k < fock_cut; ++k) {
        number(k, k) = static_cast<double>(k);
        if (k + 1 < fock_cut) {
            a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
        }
    }
    const CMatrix id2 = CMatrix::Identity(2, 2);
    const CMatrix idf = CMatrix::Identity(fock_cut, fock_cut);
    return 0.5 * cfg.omegaA * kron(sz, idf) + cfg.omegaF * kron(id2, number) +
           cfg.g * (kron(sp, a) + kron(sp.adjoint(), a.adjoint()));
}

SeriesResult master_equation_series(int n, double t, const JCConfig& cfg, int fock_cut, int k_max) {
    require_photons(n, 0);
    require_time(t);
    if (fock_cut < n + 2) {
        throw std::invalid_argument("master_equation_series: fock_cut must be >= n + 2");
    }
    if (cfg.gamma < 0.0 || k_max < 0) {
        throw std::invalid_argument("master_equation_series: gamma and k_max must be non-negative");
    }
    // Summed in the eigenbasis of H, where M^k acts diagonally. Entry (i, j) of
    // term k is rho0_ij e^{-i(E_i - E_j)t} (gt E_i E_j)^k / k! e^{-gt(E_i^2 + E_j^2)/2}.
    // The weights are formed in log space: applying H^k to a rounded propagator
    // in the original basis amplifies its error by up to e^{gt E^2 / 2}.
    const EigenSystem es = hermitian_eigensystem(jc_hamiltonian(cfg, fock_cut));
    const RVector& e = es.values;
    const CMatrix& v = es.vectors;
    const double gt = cfg.gamma * t;
    const auto dim = static_cast<Eigen::Index>(2 * fock_cut);

    // rho0 = |e,n><e,n|
    const CVector ket0 = v.row(n).adjoint();
    CMatrix rho0 = ket0 * ket0.adjoint();
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            rho0(i, j) *= std::exp(-kI * (e(i) - e(j)) * t);
        }
    }

    auto weight = [&](Eigen::Index i, Eigen::Index j, int k) {
        const double gauss = -0.5 * gt * (e(i) * e(i) + e(j) * e(j));
        if (k == 0) {
            return std::exp(gauss);
        }
        const double x = gt * e(i) * e(j);
        if (x == 0.0) {
            return 0.0;
        }
        const double magnitude =
            std::exp(static_cast<double>(k) * std::log(std::abs(x)) - std::lgamma(static_cast<double>(k) + 1.0) + gauss);
        return (x < 0.0 && k % 2 == 1) ? -magnitude : magnitude;
    };

    // The first omitted term alone says nothing while the terms are still
    // growing (k below gt|E_i E_j|), so the bound sums the omitted weights until
    // they are past their peak and negligible. |V_ai V_bj| <= 1 lets the
    // eigenbasis sum bound every entry in the original basis.
    CMatrix sum = CMatrix::Zero(dim, dim);
    double tail = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            double w = 0.0;
            for (int k = 0; k <= k_max; ++k) {
                w += weight(i, j, k);
            }
            sum(i, j) = w * rho0(i, j);

            const double peak = std::abs(gt * e(i) * e(j));
            double omitted = 0.0;
            for (int k = k_max + 1;; ++k) {
                const double term = std::abs(weight(i, j, k));
                omitted += term;
                if (static_cast<double>(k) > peak && term <= 1e-3 * std::numeric_limits<double>::epsilon() * omitted) {
                    break;
                }
            }
            tail += std::abs(rho0(i, j)) * omitted;
        }
    }
    if (tail > kSeriesTolerance) {
        throw SeriesNotConverged("master_equation_series: omitted terms bounded by " + std::to_string(tail));
    }
    return SeriesResult{DensityMatrix(2, fock_cut, v * sum * v.adjoint()), k_max + 1, tail};
}

}  // namespace jcw
