// witness.hpp: Schmidt machinery and projector-based entanglement witnesses
// W = k(psi) 1 - |psi><psi|, with k(psi) the largest squared Schmidt coefficient.

#pragma once

#include "jcw/basis.hpp"
#include "jcw/linalg.hpp"

#include <vector>

namespace jcw {

// Coefficients below this are dropped from the reported Schmidt rank.
inline constexpr double kSchmidtCutoff = 1e-12;

struct SchmidtDecomposition {
    std::vector<double> coefficients;  // sqrt(lambda_i), descending
    std::vector<Ket> left;
    std::vector<Ket> right;

    int rank() const noexcept { return static_cast<int>(coefficients.size()); }
};

SchmidtDecomposition schmidt_decompose(const Ket& psi, int nA, int nB);

// sum_m c_m |Phi_A^(m)>|Phi_B^(m)> with c = (cos a1, sin a1 cos a2, ..., prod sin a_i).
struct SchmidtForm {
    int nA = 2;
    int nB = 2;
    int rank = 2;
    std::vector<double> alphas;  // rank - 1 angles
    BasisParams basisA{2};
    BasisParams basisB{2};

    std::vector<double> coefficients() const;
};

// alpha_i = arccos(1 / sqrt(n - i + 1)): all coefficients 1/sqrt(n).
std::vector<double> maximally_entangled_alphas(int rank);

Ket schmidt_state(const SchmidtForm& form);

// 2|a00 a11 - a01 a10| for a 2x2 pure state.
double concurrence_pure(const Ket& psi);

// (1 + sqrt(1 - C^2)) / 2
double k_two_qubit(const Ket& psi);

// Largest squared Schmidt coefficient.
double k_general(const Ket& psi, int nA, int nB);

struct WitnessOperator {
    double k = 1.0;
    Ket projector_state;
    int nA = 2;
    int nB = 2;

    CMatrix matrix() const;
};

WitnessOperator witness_of(const Ket& psi, int nA, int nB);

// Tr(W rho) = k - <psi|rho|psi>; negative certifies entanglement.
double expectation(const WitnessOperator& w, const DensityMatrix& rho);

}  // namespace jcw
