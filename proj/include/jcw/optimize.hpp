// optimize.hpp: Nelder-Mead simplex search and a multi-start driver seeded
// from a randomly shifted Halton sequence.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace jcw {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
    double simplex_tolerance = 1e-9;  // max vertex distance from the best vertex (inf-norm)
    int max_evaluations = 20000;
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
};

struct LocalResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Minimizes `f` starting from a right-angled simplex x0 + step_i e_i.
LocalResult nelder_mead_minimize(const Objective& f, std::vector<double> x0, std::span<const double> step,
                                 const NelderMeadOptions& options = {});

// Halton points in [0,1)^dim with a Cranley-Patterson shift drawn from `seed`.
// point(i) does not depend on how many points are requested.
class HaltonSequence {
public:
    HaltonSequence(int dim, std::uint64_t seed);

    std::vector<double> point(std::uint64_t index) const;
    int dim() const noexcept { return static_cast<int>(shift_.size()); }

private:
    std::vector<double> shift_;
};

struct Box {
    std::vector<double> lower;
    std::vector<double> upper;
};

struct MultiStartOptions {
    int restarts = 32;
    std::uint64_t seed = 20100301;
    double initial_step_fraction = 0.25;  // of the box width
    NelderMeadOptions local;
};

struct MultiStartResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    int converged_starts = 0;
};

// Runs one local search per start point. Ties keep the earliest start, so the
// best value is non-increasing as `restarts` grows.
MultiStartResult multi_start_minimize(const Objective& f, const Box& box, const MultiStartOptions& options);

}  // namespace jcw
