// jcmodel.hpp: Jaynes-Cummings atom-field dynamics (hbar = 1).
//
// Atom basis: index 0 = |e>, index 1 = |g>. States are atom ⊗ field with the
// field restricted to a window of consecutive Fock levels.
//
// Case 1: |e>|n> initially, phase decoherence
//         d rho/dt = -i[H, rho] - (gamma/2)[H, [H, rho]].
// Case 2: atom lambda|g><g| + (1-lambda)|e><e|, field |n>, unitary evolution.

#pragma once

#include "jcw/linalg.hpp"

#include <stdexcept>

namespace jcw {

struct JCConfig {
    double g = 1.0;
    double omegaA = 2.0;
    double omegaF = 1.0;
    double gamma = 0.0;
    double lambda = 0.0;
    int n = 1;

    double detuning() const noexcept { return omegaA - omegaF; }

    // omegaA = omegaF + delta. The closed forms only depend on delta; omegaF
    // enters the global phases of case 2 and the truncated Hamiltonian.
    static JCConfig from_detuning(double g, double delta, double gamma = 0.0, double lambda = 0.0, int n = 1,
                                  double omegaF = 1.0);
};

// Omega_n = sqrt(delta^2 / 4 + g^2 (n + 1))
double rabi(int n, const JCConfig& cfg);

struct Case1Coefficients {
    double E = 1.0;
    double F = 0.0;
    Complex G{0.0, 0.0};
};

struct Case2Coefficients {
    Complex A;
    Complex B;
    Complex C;
    Complex D;
};

Case1Coefficients case1_coefficients(int n, double t, const JCConfig& cfg);

// 2 ⊗ 2 over atom {e, g} and field {|n>, |n+1>}.
DensityMatrix case1_state(int n, double t, const JCConfig& cfg);

// Equals |G_n|, the negative eigenvalue magnitude of the partial transpose.
double case1_negativity_closed(int n, double t, const JCConfig& cfg);

// Requires n >= 1.
Case2Coefficients case2_coefficients(int n, double t, const JCConfig& cfg);

// 2 ⊗ 3 over atom {e, g} and field {|n-1>, |n>, |n+1>}.
DensityMatrix case2_state(int n, double t, const JCConfig& cfg);

double case2_negativity_closed(int n, double t, const JCConfig& cfg);

// Places a 2 ⊗ b block whose field levels start at `first_fock` into a
// 2 ⊗ fock_cut window over |0>..|fock_cut-1>.
DensityMatrix embed_field_block(const DensityMatrix& block, int first_fock, int fock_cut);

// H = (omegaA/2) sz + omegaF a^dag a + g (s+ a + s- a^dag) on 2 ⊗ fock_cut.
CMatrix jc_hamiltonian(const JCConfig& cfg, int fock_cut);

struct SeriesNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeriesResult {
    DensityMatrix rho;
    int terms = 0;
    double truncation_norm = 0.0;  // bound on the max-entry norm of all omitted terms
};

inline constexpr int kDefaultSeriesTerms = 60;
inline constexpr double kSeriesTolerance = 1e-10;

// rho(t) = sum_{k=0}^{k_max} (gamma t)^k / k! M^k rho(0) M^k^dag,
// M^k = H^k exp(-iHt) exp(-gamma t H^2 / 2), rho(0) = |e,n><e,n|.
// Throws SeriesNotConverged when the omitted terms can exceed kSeriesTolerance.
SeriesResult master_equation_series(int n, double t, const JCConfig& cfg, int fock_cut,
                                    int k_max = kDefaultSeriesTerms);

}  // namespace jcw
