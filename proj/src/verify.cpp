#include "jcw/verify.hpp"

#include "jcw/basis.hpp"
#include "jcw/detect.hpp"
#include "jcw/figures.hpp"
#include "jcw/jcmodel.hpp"
#include "jcw/witness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>

namespace jcw {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> uniform(std::size_t count, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(count);
    for (double& x : v) {
        x = u(rng);
    }
    return v;
}

CVector random_unit(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    CVector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = Complex(nd(rng), nd(rng));
    }
    return v / v.norm();
}

std::vector<double> random_witness_params(WitnessCase c, std::mt19937_64& rng) {
    const Box box = parameter_box(c);
    std::vector<double> x(box.lower.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = std::uniform_real_distribution<double>(box.lower[i], box.upper[i])(rng);
    }
    return x;
}

JCConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return JCConfig::from_detuning(0.2 + 2.0 * u(rng), 10.0 * u(rng) - 5.0, 0.6 * u(rng), u(rng), 1,
                                   0.5 + 2.0 * u(rng));
}

double max_abs(const CMatrix& m) {
    return m.cwiseAbs().maxCoeff();
}

// Written out independently of the recursive construction.
std::vector<CVector> two_dim_closed_form(const std::vector<double>& p) {
    auto e = [](double a) { return std::polar(1.0, a); };
    const double c = std::cos(p[0]), s = std::sin(p[0]);
    CVector a(2), b(2);
    a << c * e(p[1]), s * e(p[2]);
    b << -s * e(p[1] + p[3]), c * e(p[2] + p[3]);
    return {a, b};
}

// Flat order: theta1 theta2 phi0 phi1 phi2 | eta xi0 xi1 | zeta0
std::vector<CVector> three_dim_closed_form(const std::vector<double>& p) {
    auto e = [](double a) { return std::polar(1.0, a); };
    const double c1 = std::cos(p[0]), s1 = std::sin(p[0]), c2 = std::cos(p[1]), s2 = std::sin(p[1]);
    const double p0 = p[2], p1 = p[3], p2 = p[4];
    const double ce = std::cos(p[5]), se = std::sin(p[5]);
    const double x0 = p[6], x1 = p[7], z0 = p[8];
    CVector a(3), b(3), c(3);
    a << c1 * e(p0), s1 * c2 * e(p1), s1 * s2 * e(p2);
    b << -ce * s1 * e(p0 + x0), ce * c1 * c2 * e(x0 + p1) - se * s2 * e(x1 + p1),
        ce * c1 * s2 * e(x0 + p2) + se * c2 * e(x1 + p2);
    c << se * s1 * e(z0 + p0 + x0), -(se * c1 * c2 * e(z0 + x0 + p1) + ce * s2 * e(z0 + x1 + p1)),
        -se * c1 * s2 * e(z0 + x0 + p2) + ce * c2 * e(z0 + x1 + p2);
    return {a, b, c};
}

CVector hyperspherical(const std::vector<double>& theta, const std::vector<double>& phi) {
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

struct Outcome {
    bool passed;
    std::string detail;
};

Outcome basis_unitarity() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const CMatrix id = CMatrix::Identity(n, n);
        for (int draw = 0; draw < 100; ++draw) {
            const BasisParams p = BasisParams::from_flat(n, uniform(static_cast<std::size_t>(n * n), 0.0, 2.0 * kPi, rng));
            const CMatrix u = unitary_of(p);
            CMatrix completeness = CMatrix::Zero(n, n);
            for (const Ket& k : build_basis(p)) {
                completeness += k.amplitudes() * k.amplitudes().adjoint();
            }
            worst = std::max({worst, max_abs(u.adjoint() * u - id), max_abs(completeness - id)});
        }
    }
    return {worst < 1e-10, fmt("700 draws, n = 2..8, worst deviation %.2e", worst)};
}

Outcome closed_form_reproduction() {
    std::mt19937_64 rng(102);
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        const auto p2 = uniform(4, 0.0, 2.0 * kPi, rng);
        const auto b2 = build_basis(BasisParams::from_flat(2, p2));
        const auto r2 = two_dim_closed_form(p2);
        const auto p3 = uniform(9, 0.0, 2.0 * kPi, rng);
        const auto b3 = build_basis(BasisParams::from_flat(3, p3));
        const auto r3 = three_dim_closed_form(p3);
        for (std::size_t m = 0; m < 2; ++m) {
            worst = std::max(worst, (b2[m].amplitudes() - r2[m]).cwiseAbs().maxCoeff());
        }
        for (std::size_t m = 0; m < 3; ++m) {
            worst = std::max(worst, (b3[m].amplitudes() - r3[m]).cwiseAbs().maxCoeff());
        }
    }
    return {worst < 1e-12, fmt("20 points at n = 2 and n = 3, worst entry error %.2e", worst)};
}

Outcome derivative_rule() {
    std::mt19937_64 rng(103);
    const double h = 1e-6;
    double worst = 0.0;
    for (int d = 2; d <= 6; ++d) {
        for (int draw = 0; draw < 20; ++draw) {
            const auto theta = uniform(static_cast<std::size_t>(d - 1), 0.0, kPi, rng);
            const auto phi = uniform(static_cast<std::size_t>(d), 0.0, 2.0 * kPi, rng);
            const CMatrix analytic = complement_coefficients(theta, phi);
            for (int k = 1; k < d; ++k) {
                std::vector<double> pinned = theta;
                for (int l = 0; l + 1 < k; ++l) {
                    pinned[static_cast<std::size_t>(l)] = kPi / 2.0;
                }
                std::vector<double> up = pinned, down = pinned;
                up[static_cast<std::size_t>(k - 1)] += h;
                down[static_cast<std::size_t>(k - 1)] -= h;
                const CVector fd = (hyperspherical(up, phi) - hyperspherical(down, phi)) / (2.0 * h);
                worst = std::max(worst, (analytic.row(k - 1).transpose() - fd).cwiseAbs().maxCoeff());
            }
        }
    }
    return {worst < 1e-6, fmt("d = 2..6, 100 draws, worst entry error %.2e", worst)};
}

Outcome negativity_oracle() {
    std::mt19937_64 rng(104);
    std::uniform_real_distribution<double> ut(0.0, 8.0);
    double worst = 0.0;
    for (int draw = 0; draw < 200; ++draw) {
        const JCConfig cfg = random_config(rng);
        const double t = ut(rng);
        const int n = draw % 5;
        worst = std::max(worst, std::abs(case1_negativity_closed(n, t, cfg) - negativity(case1_state(n, t, cfg))));
        worst = std::max(worst,
                         std::abs(case2_negativity_closed(n + 1, t, cfg) - negativity(case2_state(n + 1, t, cfg))));
    }
    return {worst < 1e-9, fmt("200 draws per case, worst difference %.2e", worst)};
}

Outcome master_equation_oracle() {
    // gamma t E^2 reaches ~45 at (t = 3, gamma = 0.3, delta = 5), past the
    // default 60 terms; 200 keeps every point inside the tail bound.
    constexpr int kTerms = 200;
    double worst = 0.0;
    double worst_tail = 0.0;
    int points = 0;
    for (double t : {0.4, 1.5, 3.0}) {
        for (double gamma : {0.0, 0.1, 0.3}) {
            for (double delta : {0.0, 1.0, 5.0}) {
                const JCConfig cfg = JCConfig::from_detuning(1.0, delta, gamma);
                const int n = 1;
                const int cut = n + 3;
                try {
                    const SeriesResult r = master_equation_series(n, t, cfg, cut, kTerms);
                    const DensityMatrix closed = embed_field_block(case1_state(n, t, cfg), n, cut);
                    worst = std::max(worst, max_abs(r.rho.entries() - closed.entries()));
                    worst_tail = std::max(worst_tail, r.truncation_norm);
                    ++points;
                } catch (const SeriesNotConverged& e) {
                    return {false, e.what()};
                }
            }
        }
    }
    return {points == 27 && worst < 1e-8,
            fmt("27 points, worst entry error %.2e, worst tail bound %.2e", worst, worst_tail)};
}

Outcome witness_soundness() {
    std::mt19937_64 rng(106);
    std::vector<WitnessOperator> witnesses;
    double self_error = 0.0;
    for (int i = 0; i < 10; ++i) {
        const WitnessCase c = i % 2 == 0 ? WitnessCase::case1 : WitnessCase::case2;
        const int nB = c == WitnessCase::case1 ? 2 : 3;
        const Ket psi = witness_state(c, random_witness_params(c, rng));
        witnesses.push_back(witness_of(psi, 2, nB));
        self_error = std::max(self_error, std::abs(expectation(witnesses.back(), DensityMatrix::pure(psi, 2, nB)) + 0.5));
    }
    double lowest = 1.0;
    for (int draw = 0; draw < 10000; ++draw) {
        const WitnessOperator& w = witnesses[static_cast<std::size_t>(draw) % witnesses.size()];
        const Ket sigma = tensor(Ket(random_unit(w.nA, rng)), Ket(random_unit(w.nB, rng)));
        lowest = std::min(lowest, expectation(w, DensityMatrix::pure(sigma, w.nA, w.nB)));
    }
    return {lowest >= -1e-9 && self_error < 1e-12,
            fmt("min over 1e4 product states %.3e, own-state error %.2e", lowest, self_error)};
}

Outcome k_consistency() {
    std::mt19937_64 rng(107);
    double worst = 0.0;
    for (int draw = 0; draw < 1000; ++draw) {
        const Ket psi(random_unit(4, rng));
        worst = std::max(worst, std::abs(k_two_qubit(psi) - k_general(psi, 2, 2)));
    }
    CVector b = CVector::Zero(4);
    b(0) = b(3) = 1.0 / std::sqrt(2.0);
    const double bell_two = k_two_qubit(Ket(b));
    const double bell_general = k_general(Ket(b), 2, 2);
    const double bell_error = std::max(std::abs(bell_two - 0.5), std::abs(bell_general - 0.5));
    return {worst < 1e-10 && bell_error < 1e-12,
            fmt("1000 states, worst difference %.2e, Bell error %.2e", worst, bell_error)};
}

Outcome fidelity_cross_check() {
    std::mt19937_64 rng(112);
    std::uniform_real_distribution<double> ut(0.0, 8.0);
    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const JCConfig cfg = random_config(rng);
        const double t = ut(rng);
        const int n = draw % 4;
        const auto p1 = random_witness_params(WitnessCase::case1, rng);
        worst = std::max(worst, std::abs(case1_fidelity(p1, n, t, cfg) -
                                         fidelity_pure(witness_state(WitnessCase::case1, p1), case1_state(n, t, cfg))));
        const auto p2 = random_witness_params(WitnessCase::case2, rng);
        worst = std::max(worst, std::abs(case2_fidelity(p2, n + 1, t, cfg) -
                                         fidelity_pure(witness_state(WitnessCase::case2, p2), case2_state(n + 1, t, cfg))));
    }
    return {worst < 1e-10, fmt("100 draws per case, worst difference %.2e", worst)};
}

struct Sweeps {
    std::vector<DetectionReport> fig1;
    std::vector<DetectionReport> fig3;
    std::vector<DetectionReport> fig4;
};

Outcome figure1_claim(const Sweeps& s) {
    int entangled = 0;
    double weakest = INFINITY;
    for (const DetectionReport& r : s.fig1) {
        if (r.negativity > 1e-3) {
            ++entangled;
            weakest = std::min(weakest, r.max_fidelity - 0.5);
        }
    }
    return {entangled > 0 && weakest > 1e-6,
            fmt("%d entangled points, smallest max_fidelity - 1/2 = %.3e", entangled, weakest)};
}

Outcome figure3_claim(const Sweeps& s) {
    const JCConfig cfg = figure3_config();
    int missed = 0;
    double worst = 0.0;
    for (const DetectionReport& r : s.fig3) {
        if (r.negativity > 1e-3 && !r.detected) {
            ++missed;
        }
        const Case2Coefficients k = case2_coefficients(kFigurePhotons, r.time, cfg);
        const double bound = 0.5 * (1.0 + 2.0 * std::abs(k.C) * std::abs(k.D));
        worst = std::max(worst, std::abs(r.max_fidelity - bound));
    }
    return {missed == 0 && worst < 1e-6,
            fmt("%d undetected entangled points, worst |max_fidelity - (1 + C)/2| = %.2e", missed, worst)};
}

Outcome figure4_claim(const Sweeps& s) {
    std::optional<DetectionReport> witness_miss;
    int count = 0;
    for (const DetectionReport& r : s.fig4) {
        if (r.negativity > 1e-3 && r.max_fidelity <= 0.5 + 1e-9) {
            if (!witness_miss) {
                witness_miss = r;
            }
            ++count;
        }
    }
    if (!witness_miss) {
        return {false, "every entangled grid point was detected"};
    }
    return {true, fmt("%d undetected entangled points, first at t = %.4g (negativity %.3e, max_fidelity %.6f)", count,
                      witness_miss->time, witness_miss->negativity, witness_miss->max_fidelity)};
}

Outcome no_false_positives(const Sweeps& s) {
    int detected = 0;
    int bad = 0;
    for (const auto* sweep : {&s.fig1, &s.fig3, &s.fig4}) {
        for (const DetectionReport& r : *sweep) {
            if (r.detected) {
                ++detected;
                if (!(r.negativity > 0.0)) {
                    ++bad;
                }
            }
        }
    }
    return {bad == 0, fmt("%d detections, %d without negativity", detected, bad)};
}

}  // namespace

std::vector<CheckResult> run_acceptance(unsigned threads, const CheckObserver& observer) {
    std::vector<CheckResult> results;
    std::optional<Sweeps> sweeps;
    auto need_sweeps = [&]() -> const Sweeps& {
        if (!sweeps) {
            const std::vector<double> times = time_grid(kFigureWindow);
            const OptimizerSettings opt;
            sweeps = Sweeps{sweep(WitnessCase::case1, kFigurePhotons, figure1_config(), times, opt, threads),
                            sweep(WitnessCase::case2, kFigurePhotons, figure3_config(), times, opt, threads),
                            sweep(WitnessCase::case2, kFigurePhotons, figure4_config(), times, opt, threads)};
        }
        return *sweeps;
    };

    struct Entry {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> checks{
        {"basis unitarity", basis_unitarity},
        {"closed-form basis reproduction", closed_form_reproduction},
        {"derivative rule", derivative_rule},
        {"negativity oracle equivalence", negativity_oracle},
        {"master-equation oracle", master_equation_oracle},
        {"witness soundness", witness_soundness},
        {"k-value consistency", k_consistency},
        {"figure 1: entangled implies detected", [&] { return figure1_claim(need_sweeps()); }},
        {"figure 3: pure branch optimum", [&] { return figure3_claim(need_sweeps()); }},
        {"figure 4: undetectable entangled states exist", [&] { return figure4_claim(need_sweeps()); }},
        {"no false positives", [&] { return no_false_positives(need_sweeps()); }},
        {"fidelity closed-form cross-check", fidelity_cross_check},
    };

    for (std::size_t i = 0; i < checks.size(); ++i) {
        CheckResult r;
        r.id = static_cast<int>(i + 1);
        r.name = checks[i].name;
        const auto start = std::chrono::steady_clock::now();
        try {
            Outcome o = checks[i].run();
            r.passed = o.passed;
            r.detail = std::move(o.detail);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (observer) {
            observer(r);
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_check(const CheckResult& r) {
    char tail[32];
    std::snprintf(tail, sizeof tail, " (%.2f s)", r.seconds);
    return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail + tail;
}

}  // namespace jcw
