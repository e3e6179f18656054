// detect.hpp: witness-based entanglement detection for the two
// Jaynes-Cummings cases. The witness family is the Bell-form state
// (|Phi'^(0)>|Phi^(0)> + |Phi'^(1)>|Phi^(1)>)/sqrt(2) with atom basis Phi'
// (C^2) and field basis Phi (C^2 for case 1, C^3 for case 2), so k = 1/2 and
// the state is detected iff the maximal fidelity exceeds 1/2.

#pragma once

#include "jcw/jcmodel.hpp"
#include "jcw/optimize.hpp"
#include "jcw/witness.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace jcw {

enum class WitnessCase { case1, case2 };

// Parameter vector layouts:
//   case1 (8):  theta1, phi0, phi1, xi0 | theta1', phi0', phi1', xi0'
//   case2 (13): theta1, theta2, eta1, xi0, xi1, phi0, phi1, phi2, zeta0 | theta1', phi0', phi1', xi0'
// Unprimed = field basis, primed = atom basis.
int parameter_count(WitnessCase c);

// Angles span [0, pi], phases [0, 2pi].
Box parameter_box(WitnessCase c);

BasisParams field_basis_params(WitnessCase c, std::span<const double> params);
BasisParams atom_basis_params(WitnessCase c, std::span<const double> params);

// Atom is subsystem A, matching the JC density matrices.
SchmidtForm witness_form(WitnessCase c, std::span<const double> params);
Ket witness_state(WitnessCase c, std::span<const double> params);

inline constexpr double kBellWitnessK = 0.5;
inline constexpr double kDetectionGuard = 1e-9;

double case1_fidelity(std::span<const double> params, const Case1Coefficients& coeffs);
double case1_fidelity(std::span<const double> params, int n, double t, const JCConfig& cfg);

double case2_fidelity(std::span<const double> params, const Case2Coefficients& coeffs, double lambda);
double case2_fidelity(std::span<const double> params, int n, double t, const JCConfig& cfg);

// Closed-form negativity of the case's state at (n, t).
double closed_form_negativity(WitnessCase c, int n, double t, const JCConfig& cfg);

// The case's density matrix at (n, t).
DensityMatrix case_state(WitnessCase c, int n, double t, const JCConfig& cfg);

struct OptimizerSettings {
    int restarts = 32;
    std::uint64_t seed = 20100301;
    double simplex_tolerance = 1e-9;
    int max_evaluations_per_start = 20000;
};

struct DetectionReport {
    double time = 0.0;
    double negativity = 0.0;
    double max_fidelity = 0.0;
    double k = kBellWitnessK;
    bool detected = false;
    std::vector<double> argmax_params;
    int optimizer_evals = 0;
    std::uint64_t seed = 0;
    // false when no local search met the simplex tolerance within its budget
    bool optimizer_converged = true;
};

DetectionReport maximize_fidelity(WitnessCase c, int n, double t, const JCConfig& cfg,
                                  const OptimizerSettings& opt = {});

// One report per time. Grid points run on up to `threads` workers
// (0 = hardware concurrency); the result order follows `times`.
std::vector<DetectionReport> sweep(WitnessCase c, int n, const JCConfig& cfg, std::span<const double> times,
                                   const OptimizerSettings& opt = {}, unsigned threads = 0);

}  // namespace jcw
