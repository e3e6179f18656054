#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jcw/detect.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace jcw;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_point(WitnessCase c, std::mt19937_64& rng) {
    const Box box = parameter_box(c);
    std::vector<double> x(box.lower.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = std::uniform_real_distribution<double>(box.lower[i], box.upper[i])(rng);
    }
    return x;
}

JCConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return JCConfig::from_detuning(0.3 + 1.5 * u(rng), 10.0 * u(rng) - 5.0, 0.5 * u(rng), u(rng), 1,
                                   0.5 + 2.0 * u(rng));
}

// Optimum over the Bell-form family for a state supported on |e,slot0>,
// |g,slot1> with populations p, q and coherence z. The family reaches every
// maximally entangled two-qubit ket, and the best of those aligns its phase
// with z: (p + q)/2 + |z|.
double reduced_case1_max(const Case1Coefficients& c) {
    return 0.5 * (c.E + c.F) + std::abs(c.G);
}

}  // namespace

TEST_CASE("parameter layout") {
    CHECK(parameter_count(WitnessCase::case1) == 8);
    CHECK(parameter_count(WitnessCase::case2) == 13);
    const Box b1 = parameter_box(WitnessCase::case1);
    CHECK(b1.upper[0] == doctest::Approx(kPi));
    CHECK(b1.upper[1] == doctest::Approx(2.0 * kPi));
    CHECK(b1.upper[4] == doctest::Approx(kPi));
    const Box b2 = parameter_box(WitnessCase::case2);
    for (int i : {0, 1, 2, 9}) {
        CHECK(b2.upper[static_cast<std::size_t>(i)] == doctest::Approx(kPi));
    }
    for (int i : {3, 4, 5, 6, 7, 8, 10, 11, 12}) {
        CHECK(b2.upper[static_cast<std::size_t>(i)] == doctest::Approx(2.0 * kPi));
    }
    CHECK_THROWS_AS(witness_state(WitnessCase::case1, std::vector<double>(13, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(case2_fidelity(std::vector<double>(8, 0.0), 1, 0.5, JCConfig{}), std::invalid_argument);
}

TEST_CASE("witness states are Bell-form with k = 1/2") {
    std::mt19937_64 rng(71);
    for (WitnessCase c : {WitnessCase::case1, WitnessCase::case2}) {
        const int nB = c == WitnessCase::case1 ? 2 : 3;
        for (int trial = 0; trial < 50; ++trial) {
            const Ket psi = witness_state(c, random_point(c, rng));
            CHECK(psi.is_normalized());
            CHECK(std::abs(k_general(psi, 2, nB) - 0.5) < 1e-10);
        }
    }
}

TEST_CASE("closed-form fidelities equal the constructed-state fidelity") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> ut(0.0, 6.0);
    for (int trial = 0; trial < 100; ++trial) {
        const JCConfig cfg = random_config(rng);
        const double t = ut(rng);
        const int n = trial % 4;
        const auto p1 = random_point(WitnessCase::case1, rng);
        const double generic1 = fidelity_pure(witness_state(WitnessCase::case1, p1), case1_state(n, t, cfg));
        CHECK(std::abs(case1_fidelity(p1, n, t, cfg) - generic1) < 1e-10);

        const auto p2 = random_point(WitnessCase::case2, rng);
        const double generic2 = fidelity_pure(witness_state(WitnessCase::case2, p2), case2_state(n + 1, t, cfg));
        CHECK(std::abs(case2_fidelity(p2, n + 1, t, cfg) - generic2) < 1e-10);
    }
}

TEST_CASE("case 1 fidelity fixtures") {
    const JCConfig cfg = JCConfig::from_detuning(1.0, 1.0, 0.3);
    CHECK(case1_fidelity(std::vector<double>(8, 0.0), 1, 0.0, cfg) == doctest::Approx(0.5).epsilon(1e-15));

    // theta = theta' = pi/4, all phases zero: Y1 = Y2 = 1, so F = (E + F)/2 + Re G.
    std::vector<double> p(8, 0.0);
    p[0] = p[4] = kPi / 4.0;
    for (double t : {0.0, 0.6, 2.0}) {
        const auto c = case1_coefficients(1, t, cfg);
        CHECK(case1_fidelity(p, 1, t, cfg) == doctest::Approx(0.5 + c.G.real()).epsilon(1e-12));
        CHECK(std::abs(case1_fidelity(p, 1, t, cfg) -
                       fidelity_pure(witness_state(WitnessCase::case1, p), case1_state(1, t, cfg))) < 1e-12);
    }
}

TEST_CASE("case 2 fidelity reductions") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> ut(0.0, 6.0);
    for (int trial = 0; trial < 50; ++trial) {
        JCConfig cfg = random_config(rng);
        const double t = ut(rng);
        auto p = random_point(WitnessCase::case2, rng);

        SUBCASE("t = 0 never exceeds 1/2") {
            CHECK(case2_fidelity(p, 2, 0.0, cfg) <= 0.5 + 1e-12);
        }
        SUBCASE("eta = theta2 = 0 on the lambda = 1 branch is the case 1 form") {
            p[1] = 0.0;
            p[2] = 0.0;
            cfg.lambda = 1.0;
            const auto k = case2_coefficients(2, t, cfg);
            const Case1Coefficients as_case1{std::norm(k.A), std::norm(k.B), k.A * std::conj(k.B)};
            const std::vector<double> p8{p[0], p[5], p[6], p[3], p[9], p[10], p[11], p[12]};
            CHECK(std::abs(case2_fidelity(p, 2, t, cfg) - case1_fidelity(p8, as_case1)) < 1e-12);
        }
        SUBCASE("lambda = 0 ignores the A, B branch") {
            cfg.lambda = 0.0;
            auto k = case2_coefficients(2, t, cfg);
            const double before = case2_fidelity(p, k, 0.0);
            k.A = Complex(0.3, 0.1);
            k.B = Complex(-0.2, 0.9);
            CHECK(case2_fidelity(p, k, 0.0) == before);
        }
    }
}

TEST_CASE("global phase invariance") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 50; ++trial) {
        const JCConfig cfg = random_config(rng);
        const double shift = 1.234 * (trial + 1);

        auto p1 = random_point(WitnessCase::case1, rng);
        const double f1 = case1_fidelity(p1, 1, 1.1, cfg);
        auto q1 = p1;
        q1[1] += shift;
        q1[2] += shift;
        CHECK(std::abs(case1_fidelity(q1, 1, 1.1, cfg) - f1) < 1e-12);
        q1 = p1;
        q1[5] += shift;
        q1[6] += shift;
        CHECK(std::abs(case1_fidelity(q1, 1, 1.1, cfg) - f1) < 1e-12);

        auto p2 = random_point(WitnessCase::case2, rng);
        const double f2 = case2_fidelity(p2, 2, 1.1, cfg);
        auto q2 = p2;
        q2[5] += shift;
        q2[6] += shift;
        q2[7] += shift;
        CHECK(std::abs(case2_fidelity(q2, 2, 1.1, cfg) - f2) < 1e-12);
        q2 = p2;
        q2[10] += shift;
        q2[11] += shift;
        CHECK(std::abs(case2_fidelity(q2, 2, 1.1, cfg) - f2) < 1e-12);
    }
}

TEST_CASE("maximize_fidelity fixtures") {
    SUBCASE("resonant maximal entanglement reaches fidelity 1") {
        const JCConfig cfg = JCConfig::from_detuning(1.0, 0.0);
        const double t = kPi / (4.0 * rabi(1, cfg));
        const DetectionReport r = maximize_fidelity(WitnessCase::case1, 1, t, cfg);
        CHECK(r.max_fidelity >= 1.0 - 1e-6);
        CHECK(r.max_fidelity <= 1.0 + 1e-9);
        CHECK(r.detected);
        CHECK(r.optimizer_converged);
        CHECK(r.seed == OptimizerSettings{}.seed);
        CHECK(r.argmax_params.size() == 8);
        CHECK(std::abs(case1_fidelity(r.argmax_params, 1, t, cfg) - r.max_fidelity) < 1e-15);
    }
    SUBCASE("t = 0 sits on the boundary and is not detected") {
        const JCConfig cfg = JCConfig::from_detuning(1.0, 1.0, 0.3);
        const DetectionReport r1 = maximize_fidelity(WitnessCase::case1, 1, 0.0, cfg);
        CHECK(r1.max_fidelity == doctest::Approx(0.5).epsilon(1e-6));
        CHECK_FALSE(r1.detected);
        const DetectionReport r2 = maximize_fidelity(WitnessCase::case2, 1, 0.0, JCConfig::from_detuning(1.0, 5.0, 0.0, 0.2));
        CHECK(r2.max_fidelity <= 0.5 + 1e-9);
        CHECK_FALSE(r2.detected);
    }
    SUBCASE("case 1 optimum matches the reduced two-level bound") {
        const JCConfig cfg = JCConfig::from_detuning(1.0, 1.0, 0.3);
        for (double t : {0.3, 1.0, 2.2, 4.7}) {
            const DetectionReport r = maximize_fidelity(WitnessCase::case1, 1, t, cfg);
            const auto c = case1_coefficients(1, t, cfg);
            CHECK(std::abs(r.max_fidelity - reduced_case1_max(c)) < 1e-8);
            // E + F = 1 and |G| is the negativity
            CHECK(std::abs(r.max_fidelity - (0.5 + r.negativity)) < 1e-8);
        }
    }
    SUBCASE("case 2 pure branch optimum is (1 + C)/2") {
        const JCConfig cfg = JCConfig::from_detuning(1.0, 5.0, 0.0, 0.0);
        for (double t : {0.4, 1.3}) {
            const DetectionReport r = maximize_fidelity(WitnessCase::case2, 1, t, cfg);
            const auto k = case2_coefficients(1, t, cfg);
            const double concurrence = 2.0 * std::abs(k.C) * std::abs(k.D);
            CHECK(std::abs(r.max_fidelity - 0.5 * (1.0 + concurrence)) < 1e-6);
            CHECK(r.argmax_params.size() == 13);
        }
    }
    SUBCASE("negative time rejected") {
        CHECK_THROWS_AS(maximize_fidelity(WitnessCase::case1, 1, -1.0, JCConfig{}), std::invalid_argument);
    }
}

TEST_CASE("more restarts never lower the optimum") {
    const JCConfig cfg = JCConfig::from_detuning(1.0, 5.0, 0.0, 0.2);
    double previous = -1.0;
    for (int restarts : {1, 2, 4, 8, 16}) {
        OptimizerSettings opt;
        opt.restarts = restarts;
        const DetectionReport r = maximize_fidelity(WitnessCase::case2, 1, 0.9, cfg, opt);
        CHECK(r.max_fidelity >= previous);
        previous = r.max_fidelity;
    }
}

TEST_CASE("sweep") {
    const JCConfig cfg = JCConfig::from_detuning(1.0, 1.0, 0.3);
    std::vector<double> times;
    for (int i = 0; i <= 12; ++i) {
        times.push_back(0.5 * i);
    }
    OptimizerSettings opt;
    opt.restarts = 8;
    const auto serial = sweep(WitnessCase::case1, 1, cfg, times, opt, 1);
    const auto pooled = sweep(WitnessCase::case1, 1, cfg, times, opt, 3);
    REQUIRE(serial.size() == times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(serial[i].time == times[i]);
        CHECK(pooled[i].time == times[i]);
        CHECK(serial[i].max_fidelity == pooled[i].max_fidelity);
        CHECK(serial[i].negativity == closed_form_negativity(WitnessCase::case1, 1, times[i], cfg));
        if (serial[i].detected) {
            CHECK(serial[i].negativity > 0.0);
        }
    }
    CHECK_THROWS_AS(sweep(WitnessCase::case1, 1, cfg, std::vector<double>{}, opt), std::invalid_argument);
    CHECK_THROWS_AS(sweep(WitnessCase::case1, 1, cfg, std::vector<double>{1.0, 0.5}, opt), std::invalid_argument);
    CHECK_THROWS_AS(sweep(WitnessCase::case2, 0, cfg, std::vector<double>{0.5}, opt), std::invalid_argument);
}

TEST_CASE("weakly entangled mixtures are not detected") {
    // Large detuning, half mixing, early times: almost no entanglement.
    const JCConfig cfg = JCConfig::from_detuning(1.0, 40.0, 0.0, 0.5);
    const std::vector<double> times{0.0, 0.01, 0.02, 0.03};
    OptimizerSettings opt;
    opt.restarts = 8;
    for (const DetectionReport& r : sweep(WitnessCase::case2, 1, cfg, times, opt)) {
        CHECK_FALSE(r.detected);
    }
}

TEST_CASE("no false positives: detected implies negativity > 0") {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> ut(0.0, 6.0);
    OptimizerSettings opt;
    opt.restarts = 8;
    for (int trial = 0; trial < 40; ++trial) {
        const JCConfig cfg = random_config(rng);
        const WitnessCase c = trial % 2 == 0 ? WitnessCase::case1 : WitnessCase::case2;
        const DetectionReport r = maximize_fidelity(c, 1 + trial % 3, ut(rng), cfg, opt);
        CHECK(r.max_fidelity <= 1.0 + 1e-9);
        CHECK(r.max_fidelity >= 0.0);
        if (r.detected) {
            CHECK(r.negativity > 0.0);
        }
        const DensityMatrix rho = case_state(c, 1 + trial % 3, r.time, cfg);
        CHECK(std::abs(negativity(rho) - r.negativity) < 1e-9);
    }
}
