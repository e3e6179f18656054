// figures.hpp: parameter presets for the four figure reproductions and the
// uniform time grid they share.

#pragma once

#include "jcw/detect.hpp"

#include <stdexcept>
#include <vector>

namespace jcw {

struct TimeWindow {
    double t_min = 0.0;
    double t_max = 6.0;
    int steps = 200;
};

inline constexpr TimeWindow kFigureWindow{};

// steps points from t_min to t_max inclusive.
inline std::vector<double> time_grid(double t_min, double t_max, int steps) {
    if (!(t_min < t_max) || steps < 2) {
        throw std::invalid_argument("time_grid: need t_min < t_max and at least 2 steps");
    }
    std::vector<double> t(static_cast<std::size_t>(steps));
    const double h = (t_max - t_min) / static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i) {
        t[static_cast<std::size_t>(i)] = i + 1 == steps ? t_max : t_min + h * static_cast<double>(i);
    }
    return t;
}

inline std::vector<double> time_grid(const TimeWindow& w) {
    return time_grid(w.t_min, w.t_max, w.steps);
}

// Case 1 with phase decoherence.
inline JCConfig figure1_config() {
    return JCConfig::from_detuning(1.0, 1.0, 0.3);
}

// Case 2; figure 2 scans lambda on top of this, figure 3 is lambda = 0 and
// figure 4 lambda = 0.2.
inline JCConfig figure2_config() {
    return JCConfig::from_detuning(1.0, 5.0);
}

inline JCConfig figure3_config() {
    return JCConfig::from_detuning(1.0, 5.0, 0.0, 0.0);
}

inline JCConfig figure4_config() {
    return JCConfig::from_detuning(1.0, 5.0, 0.0, 0.2);
}

inline constexpr int kFigure2LambdaSteps = 21;  // 0, 0.05, ..., 1

inline constexpr int kFigurePhotons = 1;

}  // namespace jcw
