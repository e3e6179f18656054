#include "jcw/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace jcw {

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                           59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double radical_inverse(std::uint64_t index, int base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
        index /= static_cast<std::uint64_t>(base);
        f /= base;
    }
    return result;
}

}  // namespace

LocalResult nelder_mead_minimize(const Objective& f, std::vector<double> x0, std::span<const double> step,
                                 const NelderMeadOptions& options) {
    const std::size_t dim = x0.size();
    if (dim == 0 || step.size() != dim) {
        throw std::invalid_argument("nelder_mead_minimize: start point and step sizes must match and be non-empty");
    }

    std::vector<std::vector<double>> simplex(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) {
        simplex[i + 1][i] += step[i];
    }
    std::vector<double> values(dim + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i <= dim; ++i) {
        values[i] = eval(simplex[i]);
    }

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim);
    std::vector<double> trial(dim);
    std::vector<double> trial2(dim);
    auto along = [&](std::vector<double>& out, const std::vector<double>& worst, double coeff) {
        for (std::size_t j = 0; j < dim; ++j) {
            out[j] = centroid[j] + coeff * (centroid[j] - worst[j]);
        }
    };

    bool converged = false;
    while (true) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
            }
        }
        if (diameter < options.simplex_tolerance) {
            converged = true;
            break;
        }
        if (evals >= options.max_evaluations) {
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t j = 0; j < dim; ++j) {
                centroid[j] += simplex[i][j];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(dim);
        }

        along(trial, simplex[worst], options.reflection);
        const double fr = eval(trial);
        if (fr < values[best]) {
            along(trial2, simplex[worst], options.reflection * options.expansion);
            const double fe = eval(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                values[worst] = fe;
            } else {
                simplex[worst] = trial;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = fr;
            continue;
        }
        // Outside contraction when the reflected point beats the worst vertex, inside otherwise.
        const bool outside = fr < values[worst];
        along(trial2, simplex[worst], outside ? options.reflection * options.contraction : -options.contraction);
        const double fc = eval(trial2);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t j = 0; j < dim; ++j) {
                simplex[i][j] = simplex[best][j] + options.shrink * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best = static_cast<std::size_t>(best_it - values.begin());
    return LocalResult{simplex[best], values[best], evals, converged};
}

HaltonSequence::HaltonSequence(int dim, std::uint64_t seed) {
    if (dim < 1 || dim > static_cast<int>(std::size(kPrimes))) {
        throw std::invalid_argument("HaltonSequence: unsupported dimension");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    shift_.resize(static_cast<std::size_t>(dim));
    for (double& s : shift_) {
        s = unit(rng);
    }
}

std::vector<double> HaltonSequence::point(std::uint64_t index) const {
    std::vector<double> p(shift_.size());
    for (std::size_t j = 0; j < shift_.size(); ++j) {
        // index + 1 skips the all-zero first Halton point
        const double v = radical_inverse(index + 1, kPrimes[j]) + shift_[j];
        p[j] = v - std::floor(v);
    }
    return p;
}

MultiStartResult multi_start_minimize(const Objective& f, const Box& box, const MultiStartOptions& options) {
    const std::size_t dim = box.lower.size();
    if (dim == 0 || box.upper.size() != dim) {
        throw std::invalid_argument("multi_start_minimize: malformed box");
    }
    if (options.restarts < 1) {
        throw std::invalid_argument("multi_start_minimize: restarts must be >= 1");
    }
    const HaltonSequence halton(static_cast<int>(dim), options.seed);
    std::vector<double> step(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        step[j] = options.initial_step_fraction * (box.upper[j] - box.lower[j]);
    }

    MultiStartResult result;
    bool have_best = false;
    for (int r = 0; r < options.restarts; ++r) {
        const std::vector<double> u = halton.point(static_cast<std::uint64_t>(r));
        std::vector<double> x0(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            x0[j] = box.lower[j] + u[j] * (box.upper[j] - box.lower[j]);
        }
        LocalResult local = nelder_mead_minimize(f, std::move(x0), step, options.local);
        result.evaluations += local.evaluations;
        if (local.converged) {
            ++result.converged_starts;
        }
        if (!have_best || local.value < result.value) {
            result.x = std::move(local.x);
            result.value = local.value;
            have_best = true;
        }
    }
    return result;
}

}  // namespace jcw
