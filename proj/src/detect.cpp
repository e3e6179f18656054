#include "jcw/detect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace jcw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

void require_layout(WitnessCase c, std::span<const double> params) {
    if (static_cast<int>(params.size()) != parameter_count(c)) {
        throw std::invalid_argument("witness parameters: expected " + std::to_string(parameter_count(c)) +
                                    " values, got " + std::to_string(params.size()));
    }
}

int field_dim(WitnessCase c) {
    return c == WitnessCase::case1 ? 2 : 3;
}

// True for indices that hold an angle rather than a phase.
bool is_angle(WitnessCase c, int index) {
    if (c == WitnessCase::case1) {
        return index == 0 || index == 4;
    }
    return index <= 2 || index == 9;
}

}  // namespace

int parameter_count(WitnessCase c) {
    return c == WitnessCase::case1 ? 8 : 13;
}

Box parameter_box(WitnessCase c) {
    const int count = parameter_count(c);
    Box box{std::vector<double>(static_cast<std::size_t>(count), 0.0), {}};
    for (int i = 0; i < count; ++i) {
        box.upper.push_back(is_angle(c, i) ? kPi : 2.0 * kPi);
    }
    return box;
}

BasisParams field_basis_params(WitnessCase c, std::span<const double> p) {
    require_layout(c, p);
    if (c == WitnessCase::case1) {
        return BasisParams::from_flat(2, p.first(4));
    }
    // theta1, theta2, eta1, xi0, xi1, phi0, phi1, phi2, zeta0
    return BasisParams({{p[0], p[1]}, {p[2]}, {}}, {{p[5], p[6], p[7]}, {p[3], p[4]}, {p[8]}});
}

BasisParams atom_basis_params(WitnessCase c, std::span<const double> p) {
    require_layout(c, p);
    return BasisParams::from_flat(2, p.last(4));
}

SchmidtForm witness_form(WitnessCase c, std::span<const double> params) {
    return SchmidtForm{2, field_dim(c), 2, {kPi / 4.0}, atom_basis_params(c, params), field_basis_params(c, params)};
}

Ket witness_state(WitnessCase c, std::span<const double> params) {
    return schmidt_state(witness_form(c, params));
}

double case1_fidelity(std::span<const double> p, const Case1Coefficients& coeffs) {
    require_layout(WitnessCase::case1, p);
    const double theta = p[0], phi0 = p[1], phi1 = p[2], xi0 = p[3];
    const double theta_a = p[4], phi0_a = p[5], phi1_a = p[6], xi0_a = p[7];
    const double cc = std::cos(theta) * std::cos(theta_a);
    const double ss = std::sin(theta) * std::sin(theta_a);
    const Complex xi = std::polar(1.0, xi0 + xi0_a);
    const Complex y1 = cc + ss * xi;
    const Complex y2 = ss + cc * xi;
    const Complex phase = std::polar(1.0, phi1 - phi0 + phi1_a - phi0_a);
    return 0.5 * (std::norm(y1) * coeffs.E + std::norm(y2) * coeffs.F) +
           (std::conj(y1) * y2 * phase * coeffs.G).real();
}

double case1_fidelity(std::span<const double> params, int n, double t, const JCConfig& cfg) {
    return case1_fidelity(params, case1_coefficients(n, t, cfg));
}

double case2_fidelity(std::span<const double> p, const Case2Coefficients& k, double lambda) {
    require_layout(WitnessCase::case2, p);
    const double th1 = p[0], th2 = p[1], eta = p[2], xi0 = p[3], xi1 = p[4];
    const double phi0 = p[5], phi1 = p[6], phi2 = p[7];
    const double tha = p[9], phi0_a = p[10], phi1_a = p[11], xi0_a = p[12];

    const double c1 = std::cos(th1), s1 = std::sin(th1);
    const double c2 = std::cos(th2), s2 = std::sin(th2);
    const double ce = std::cos(eta), se = std::sin(eta);
    const double ca = std::cos(tha), sa = std::sin(tha);
    const Complex e_xi0 = std::polar(1.0, xi0);
    const Complex e_xi1 = std::polar(1.0, xi1);
    const Complex e_xi0a = std::polar(1.0, xi0_a);

    const Complex mid = ce * c1 * c2 * e_xi0 - se * s2 * e_xi1;
    const Complex top = ce * c1 * s2 * e_xi0 + se * c2 * e_xi1;
    const Complex x1 = c1 * ca + ce * s1 * sa * e_xi0 * e_xi0a;
    const Complex x2 = s1 * c2 * sa + mid * ca * e_xi0a;
    const Complex x3 = s1 * c2 * ca - mid * sa * e_xi0a;
    const Complex x4 = s1 * s2 * sa + top * ca * e_xi0a;

    const Complex lower_phase = std::polar(1.0, phi1 - phi0 + phi1_a - phi0_a);
    const Complex upper_phase = std::polar(1.0, phi2 - phi1 + phi1_a - phi0_a);
    const double lower = 0.5 * (std::norm(x1) * std::norm(k.A) + std::norm(x2) * std::norm(k.B)) +
                         (std::conj(x1) * x2 * lower_phase * k.A * std::conj(k.B)).real();
    const double upper = 0.5 * (std::norm(x3) * std::norm(k.C) + std::norm(x4) * std::norm(k.D)) +
                         (std::conj(x3) * x4 * upper_phase * k.C * std::conj(k.D)).real();
    return lambda * lower + (1.0 - lambda) * upper;
}

double case2_fidelity(std::span<const double> params, int n, double t, const JCConfig& cfg) {
    return case2_fidelity(params, case2_coefficients(n, t, cfg), cfg.lambda);
}

double closed_form_negativity(WitnessCase c, int n, double t, const JCConfig& cfg) {
    return c == WitnessCase::case1 ? case1_negativity_closed(n, t, cfg) : case2_negativity_closed(n, t, cfg);
}

DensityMatrix case_state(WitnessCase c, int n, double t, const JCConfig& cfg) {
    return c == WitnessCase::case1 ? case1_state(n, t, cfg) : case2_state(n, t, cfg);
}

DetectionReport maximize_fidelity(WitnessCase c, int n, double t, const JCConfig& cfg, const OptimizerSettings& opt) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("maximize_fidelity: time must be >= 0");
    }
    Objective objective;
    if (c == WitnessCase::case1) {
        const Case1Coefficients coeffs = case1_coefficients(n, t, cfg);
        objective = [coeffs](std::span<const double> x) { return -case1_fidelity(x, coeffs); };
    } else {
        const Case2Coefficients coeffs = case2_coefficients(n, t, cfg);
        const double lambda = cfg.lambda;
        objective = [coeffs, lambda](std::span<const double> x) { return -case2_fidelity(x, coeffs, lambda); };
    }

    MultiStartOptions ms;
    ms.restarts = opt.restarts;
    ms.seed = opt.seed;
    ms.local.simplex_tolerance = opt.simplex_tolerance;
    ms.local.max_evaluations = opt.max_evaluations_per_start;
    MultiStartResult best = multi_start_minimize(objective, parameter_box(c), ms);

    DetectionReport report;
    report.time = t;
    report.negativity = closed_form_negativity(c, n, t, cfg);
    report.max_fidelity = -best.value;
    report.k = kBellWitnessK;
    report.detected = report.max_fidelity > report.k + kDetectionGuard;
    report.argmax_params = std::move(best.x);
    report.optimizer_evals = best.evaluations;
    report.seed = opt.seed;
    report.optimizer_converged = best.converged_starts > 0;
    return report;
}

std::vector<DetectionReport> sweep(WitnessCase c, int n, const JCConfig& cfg, std::span<const double> times,
                                   const OptimizerSettings& opt, unsigned threads) {
    if (times.empty()) {
        throw std::invalid_argument("sweep: empty time grid");
    }
    if (!std::is_sorted(times.begin(), times.end())) {
        throw std::invalid_argument("sweep: time grid must be ascending");
    }
    std::vector<DetectionReport> reports(times.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(threads == 0 ? hw : threads, static_cast<unsigned>(times.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < times.size(); i = next++) {
            try {
                reports[i] = maximize_fidelity(c, n, times[i], cfg, opt);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return reports;
}

}  // namespace jcw
