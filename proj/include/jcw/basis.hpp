// basis.hpp: recursive parametrization of a general orthonormal basis of C^n.
//
// Level m (m = 0..n-1) works in a d = n - m dimensional orthonormal frame
// W^(m). The level head is the hyperspherical combination
//
//   Phi^(m) = sum_j  e^{i phi_j} cos(theta_{j+1}) prod_{l<=j} sin(theta_l) W_j
//                    (last coefficient: prod_{l<=d-1} sin(theta_l))
//
// and the next frame W^(m+1) consists of the derivatives d Phi^(m)/d theta_k
// evaluated with theta_1..theta_{k-1} = pi/2 (k = 1..d-1). W^(0) is the
// computational basis. n(n-1)/2 angles and n(n+1)/2 phases in total.

#pragma once

#include "jcw/linalg.hpp"

#include <span>
#include <vector>

namespace jcw {

class BasisParams {
public:
    // All-zero parameters for C^n.
    explicit BasisParams(int n);

    // angles[m] has n-m-1 entries, phases[m] has n-m entries. Angles are
    // reduced mod 2pi; phases are stored as given.
    BasisParams(std::vector<std::vector<double>> angles, std::vector<std::vector<double>> phases);

    // Level-major flat layout: theta^(0)..., phi^(0)..., theta^(1)..., phi^(1)..., ...
    // For n = 2 this is (theta_1, phi_0, phi_1, xi_0).
    static BasisParams from_flat(int n, std::span<const double> values);
    std::vector<double> to_flat() const;

    static int angle_count(int n) { return n * (n - 1) / 2; }
    static int phase_count(int n) { return n * (n + 1) / 2; }
    static int parameter_count(int n) { return n * n; }

    int dim() const noexcept { return n_; }
    const std::vector<double>& angles(int level) const { return angles_.at(static_cast<std::size_t>(level)); }
    const std::vector<double>& phases(int level) const { return phases_.at(static_cast<std::size_t>(level)); }

    double phase_sum() const;

    BasisParams with_phase(int level, int index, double value) const;

private:
    int n_;
    std::vector<std::vector<double>> angles_;
    std::vector<std::vector<double>> phases_;
};

// One level of the construction: the head |Phi^(m)> and the complement frame
// handed to level m+1.
struct LevelFrame {
    int m = 0;
    Ket head;
    std::vector<Ket> complement;
};

// Coefficients of the head in the level frame (length d = phi.size()).
CVector head_coefficients(std::span<const double> theta, std::span<const double> phi);

// Row k-1 holds the frame coefficients of the k-th complement vector (k = 1..d-1).
CMatrix complement_coefficients(std::span<const double> theta, std::span<const double> phi);

Ket head_vector(std::span<const Ket> level_basis, std::span<const double> theta,
                std::span<const double> phi);

std::vector<Ket> complement_vectors(std::span<const Ket> level_basis, std::span<const double> theta,
                                    std::span<const double> phi);

std::vector<LevelFrame> build_frames(const BasisParams& params);

// (|Phi^(0)>, ..., |Phi^(n-1)>)
std::vector<Ket> build_basis(const BasisParams& params);

// Row m holds the computational-basis coefficients of |Phi^(m)>.
CMatrix unitary_of(const BasisParams& params);

// det U = exp(i * sum of every phase); the real rotation part of each level
// has determinant +1.
Complex determinant_of(const BasisParams& params);

// Shifts phi_0^(0) so that det unitary_of(...) = 1.
BasisParams su_constraint(const BasisParams& params);

}  // namespace jcw
