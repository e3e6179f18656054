#include "jcw/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace jcw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    return r;
}

void check_level_counts(std::size_t frame, std::size_t n_theta, std::size_t n_phi) {
    if (frame == 0 || n_phi != frame || n_theta + 1 != frame) {
        throw std::invalid_argument("basis level: frame of " + std::to_string(frame) + " vectors needs " +
                                    std::to_string(frame == 0 ? 0 : frame - 1) + " angles and " +
                                    std::to_string(frame) + " phases, got " + std::to_string(n_theta) +
                                    " and " + std::to_string(n_phi));
    }
}

Ket combine(std::span<const Ket> frame, const CVector& coeffs) {
    CVector out = CVector::Zero(frame.front().dim());
    for (std::size_t j = 0; j < frame.size(); ++j) {
        out += coeffs(static_cast<Eigen::Index>(j)) * frame[j].amplitudes();
    }
    return Ket(std::move(out));
}

}  // namespace

BasisParams::BasisParams(int n) : n_(n) {
    if (n < 1) {
        throw std::invalid_argument("BasisParams: dimension must be >= 1");
    }
    for (int m = 0; m < n; ++m) {
        angles_.emplace_back(static_cast<std::size_t>(n - m - 1), 0.0);
        phases_.emplace_back(static_cast<std::size_t>(n - m), 0.0);
    }
}

BasisParams::BasisParams(std::vector<std::vector<double>> angles, std::vector<std::vector<double>> phases)
    : n_(static_cast<int>(phases.size())), angles_(std::move(angles)), phases_(std::move(phases)) {
    if (n_ < 1 || angles_.size() != phases_.size()) {
        throw std::invalid_argument("BasisParams: need one angle list and one phase list per level");
    }
    for (int m = 0; m < n_; ++m) {
        const auto d = static_cast<std::size_t>(n_ - m);
        check_level_counts(d, angles_[static_cast<std::size_t>(m)].size(), phases_[static_cast<std::size_t>(m)].size());
        for (double& a : angles_[static_cast<std::size_t>(m)]) {
            a = reduce_angle(a);
        }
    }
}

BasisParams BasisParams::from_flat(int n, std::span<const double> values) {
    if (n < 1 || values.size() != static_cast<std::size_t>(parameter_count(n))) {
        throw std::invalid_argument("BasisParams::from_flat: expected n^2 = " +
                                    std::to_string(n < 1 ? 0 : n * n) + " values, got " +
                                    std::to_string(values.size()));
    }
    std::vector<std::vector<double>> angles;
    std::vector<std::vector<double>> phases;
    std::size_t pos = 0;
    for (int m = 0; m < n; ++m) {
        const auto d = static_cast<std::size_t>(n - m);
        angles.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(pos),
                            values.begin() + static_cast<std::ptrdiff_t>(pos + d - 1));
        pos += d - 1;
        phases.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(pos),
                            values.begin() + static_cast<std::ptrdiff_t>(pos + d));
        pos += d;
    }
    return BasisParams(std::move(angles), std::move(phases));
}

std::vector<double> BasisParams::to_flat() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(parameter_count(n_)));
    for (int m = 0; m < n_; ++m) {
        out.insert(out.end(), angles_[static_cast<std::size_t>(m)].begin(), angles_[static_cast<std::size_t>(m)].end());
        out.insert(out.end(), phases_[static_cast<std::size_t>(m)].begin(), phases_[static_cast<std::size_t>(m)].end());
    }
    return out;
}

double BasisParams::phase_sum() const {
    double s = 0.0;
    for (const auto& level : phases_) {
        for (double p : level) {
            s += p;
        }
    }
    return s;
}

BasisParams BasisParams::with_phase(int level, int index, double value) const {
    BasisParams out = *this;
    out.phases_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(index)) = value;
    return out;
}

CVector head_coefficients(std::span<const double> theta, std::span<const double> phi) {
    const std::size_t d = phi.size();
    check_level_counts(d, theta.size(), d);
    CVector c(static_cast<Eigen::Index>(d));
    double sin_prod = 1.0;  // prod_{l<=j} sin(theta_l), theta is 1-based
    for (std::size_t j = 0; j < d; ++j) {
        const double radial = (j + 1 < d) ? sin_prod * std::cos(theta[j]) : sin_prod;
        c(static_cast<Eigen::Index>(j)) = std::polar(radial, phi[j]);
        if (j + 1 < d) {
            sin_prod *= std::sin(theta[j]);
        }
    }
    return c;
}

CMatrix complement_coefficients(std::span<const double> theta, std::span<const double> phi) {
    const std::size_t d = phi.size();
    check_level_counts(d, theta.size(), d);
    CMatrix c = CMatrix::Zero(static_cast<Eigen::Index>(d) - 1, static_cast<Eigen::Index>(d));
    for (std::size_t k = 1; k < d; ++k) {
        const auto row = static_cast<Eigen::Index>(k - 1);
        // Angles before theta_k are pinned to pi/2, so leading entries vanish.
        c(row, static_cast<Eigen::Index>(k - 1)) = std::polar(-std::sin(theta[k - 1]), phi[k - 1]);
        double tail = std::cos(theta[k - 1]);  // cos(theta_k) prod_{k<l<=j} sin(theta_l)
        for (std::size_t j = k; j < d; ++j) {
            const double radial = (j + 1 < d) ? tail * std::cos(theta[j]) : tail;
            c(row, static_cast<Eigen::Index>(j)) = std::polar(radial, phi[j]);
            if (j + 1 < d) {
                tail *= std::sin(theta[j]);
            }
        }
    }
    return c;
}

Ket head_vector(std::span<const Ket> level_basis, std::span<const double> theta,
                std::span<const double> phi) {
    check_level_counts(level_basis.size(), theta.size(), phi.size());
    return combine(level_basis, head_coefficients(theta, phi));
}

std::vector<Ket> complement_vectors(std::span<const Ket> level_basis, std::span<const double> theta,
                                    std::span<const double> phi) {
    check_level_counts(level_basis.size(), theta.size(), phi.size());
    if (level_basis.size() < 2) {
        throw std::invalid_argument("complement_vectors: level frame needs at least two vectors");
    }
    const CMatrix c = complement_coefficients(theta, phi);
    std::vector<Ket> out;
    out.reserve(static_cast<std::size_t>(c.rows()));
    for (Eigen::Index k = 0; k < c.rows(); ++k) {
        out.push_back(combine(level_basis, c.row(k).transpose()));
    }
    return out;
}

std::vector<LevelFrame> build_frames(const BasisParams& params) {
    const int n = params.dim();
    std::vector<Ket> frame;
    frame.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        frame.push_back(Ket::basis(n, i));
    }
    std::vector<LevelFrame> levels;
    levels.reserve(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const auto& theta = params.angles(m);
        const auto& phi = params.phases(m);
        LevelFrame level{m, head_vector(frame, theta, phi), {}};
        if (frame.size() > 1) {
            level.complement = complement_vectors(frame, theta, phi);
        }
        frame = level.complement;
        levels.push_back(std::move(level));
    }
    return levels;
}

std::vector<Ket> build_basis(const BasisParams& params) {
    std::vector<Ket> out;
    for (auto& level : build_frames(params)) {
        out.push_back(std::move(level.head));
    }
    return out;
}

CMatrix unitary_of(const BasisParams& params) {
    const std::vector<Ket> b = build_basis(params);
    const auto n = static_cast<Eigen::Index>(b.size());
    CMatrix u(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        u.row(m) = b[static_cast<std::size_t>(m)].amplitudes().transpose();
    }
    return u;
}

Complex determinant_of(const BasisParams& params) {
    return std::polar(1.0, params.phase_sum());
}

BasisParams su_constraint(const BasisParams& params) {
    // Shift by the determinant phase wrapped into (-pi, pi] so that
    // parameters that already give det = 1 come back unchanged.
    const double arg = std::arg(determinant_of(params));
    if (arg == 0.0) {
        return params;
    }
    return params.with_phase(0, 0, params.phases(0)[0] - arg);
}

}  // namespace jcw
