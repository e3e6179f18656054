// linalg.hpp: dense complex linear algebra for small bipartite systems:
// kets, density matrices, Kronecker products, partial transpose, a cyclic
// Jacobi Hermitian eigensolver, negativity and pure-state fidelity.
//
// Composite index convention (used everywhere in the library): for
// subsystem indices (i, j) of A ⊗ B the composite index is i * dimB + j,
// i.e. subsystem A is the slow index.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace jcw {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double normalization = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double eigen_residual = 1e-9;
inline constexpr double positivity = 1e-10;
}  // namespace tol

class Ket {
public:
    explicit Ket(CVector amplitudes);

    // |index> in C^dim
    static Ket basis(int dim, int index);

    int dim() const noexcept { return static_cast<int>(amps_.size()); }
    const CVector& amplitudes() const noexcept { return amps_; }
    Complex operator[](int i) const { return amps_(i); }

    double norm() const { return amps_.norm(); }
    bool is_normalized(double tolerance = tol::normalization) const;
    Ket normalized() const;

private:
    CVector amps_;
};

// Operator on C^dimA ⊗ C^dimB. Construction only checks the shape; use
// state_violations()/is_state() for the Hermitian / unit-trace / PSD checks.
class DensityMatrix {
public:
    DensityMatrix(int dimA, int dimB, CMatrix entries);

    static DensityMatrix pure(const Ket& psi, int dimA, int dimB);
    static DensityMatrix maximally_mixed(int dimA, int dimB);

    int dimA() const noexcept { return dimA_; }
    int dimB() const noexcept { return dimB_; }
    int dim() const noexcept { return dimA_ * dimB_; }
    const CMatrix& entries() const noexcept { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }

    Complex trace() const { return m_.trace(); }
    double hermiticity_error() const;
    double purity() const;

    // Largest violation among |M - M^†|_max, |tr - 1| and -min(eig).
    double state_violation() const;
    bool is_state() const;

private:
    int dimA_;
    int dimB_;
    CMatrix m_;
};

enum class Subsystem { first, second };

CMatrix kron(const CMatrix& a, const CMatrix& b);
Ket tensor(const Ket& a, const Ket& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

CMatrix partial_transpose(const CMatrix& m, int dimA, int dimB, Subsystem which);
DensityMatrix partial_transpose(const DensityMatrix& rho, Subsystem which);

struct EigenSystem {
    RVector values;   // ascending
    CMatrix vectors;  // column k belongs to values(k)
};

// Cyclic complex Jacobi. Throws std::invalid_argument if `m` is not square
// or deviates from Hermitian by more than tol::hermiticity.
EigenSystem hermitian_eigensystem(const CMatrix& m);
RVector hermitian_eigenvalues(const CMatrix& m);

// f(H) = V f(diag) V^† for Hermitian H.
CMatrix hermitian_function(const CMatrix& h, const std::function<Complex(double)>& f);

// Absolute sum of the negative eigenvalues of the partial transpose.
double negativity(const DensityMatrix& rho);

// <psi|rho|psi>, clamped to [0, 1].
double fidelity_pure(const Ket& psi, const DensityMatrix& rho);

}  // namespace jcw
