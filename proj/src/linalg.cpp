#include "jcw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jcw {

Ket::Ket(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) {
        throw std::invalid_argument("Ket: dimension must be positive");
    }
}

Ket Ket::basis(int dim, int index) {
    if (dim <= 0 || index < 0 || index >= dim) {
        throw std::out_of_range("Ket::basis: index out of range");
    }
    CVector v = CVector::Zero(dim);
    v(index) = 1.0;
    return Ket(std::move(v));
}

bool Ket::is_normalized(double tolerance) const {
    return std::abs(amps_.squaredNorm() - 1.0) <= tolerance;
}

Ket Ket::normalized() const {
    const double n = amps_.norm();
    if (n == 0.0) {
        throw std::invalid_argument("Ket::normalized: zero vector");
    }
    return Ket(amps_ / n);
}

DensityMatrix::DensityMatrix(int dimA, int dimB, CMatrix entries)
    : dimA_(dimA), dimB_(dimB), m_(std::move(entries)) {
    if (dimA <= 0 || dimB <= 0) {
        throw std::invalid_argument("DensityMatrix: subsystem dimensions must be positive");
    }
    if (m_.rows() != dimA * dimB || m_.cols() != dimA * dimB) {
        throw std::invalid_argument("DensityMatrix: matrix is " + std::to_string(m_.rows()) + "x" +
                                    std::to_string(m_.cols()) + " but dims are " +
                                    std::to_string(dimA) + "x" + std::to_string(dimB));
    }
}

DensityMatrix DensityMatrix::pure(const Ket& psi, int dimA, int dimB) {
    if (psi.dim() != dimA * dimB) {
        throw std::invalid_argument("DensityMatrix::pure: ket dimension mismatch");
    }
    return DensityMatrix(dimA, dimB, psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dimA, int dimB) {
    const int d = dimA * dimB;
    return DensityMatrix(dimA, dimB, CMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::hermiticity_error() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::purity() const {
    return (m_ * m_).trace().real();
}

double DensityMatrix::state_violation() const {
    const double herm = hermiticity_error();
    const double tr = std::abs(trace() - 1.0);
    if (herm > tol::hermiticity) {
        return std::max(herm, tr);
    }
    const double min_eig = hermitian_eigenvalues(m_)(0);
    return std::max({herm, tr, -min_eig});
}

bool DensityMatrix::is_state() const {
    return hermiticity_error() <= tol::hermiticity && std::abs(trace() - 1.0) <= tol::trace &&
           hermitian_eigenvalues(m_)(0) >= -tol::positivity;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Ket tensor(const Ket& a, const Ket& b) {
    CVector out(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i) {
        out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
    }
    return Ket(std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(a.dim(), b.dim(), kron(a.entries(), b.entries()));
}

CMatrix partial_transpose(const CMatrix& m, int dimA, int dimB, Subsystem which) {
    if (dimA <= 0 || dimB <= 0 || m.rows() != dimA * dimB || m.cols() != dimA * dimB) {
        throw std::invalid_argument("partial_transpose: declared dims do not match matrix size");
    }
    CMatrix out(m.rows(), m.cols());
    for (int i = 0; i < dimA; ++i) {
        for (int j = 0; j < dimB; ++j) {
            for (int k = 0; k < dimA; ++k) {
                for (int l = 0; l < dimB; ++l) {
                    // <i j| rho |k l>
                    const Complex v = m(i * dimB + j, k * dimB + l);
                    if (which == Subsystem::first) {
                        out(k * dimB + j, i * dimB + l) = v;
                    } else {
                        out(i * dimB + l, k * dimB + j) = v;
                    }
                }
            }
        }
    }
    return out;
}

DensityMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
    return DensityMatrix(rho.dimA(), rho.dimB(),
                         partial_transpose(rho.entries(), rho.dimA(), rho.dimB(), which));
}

namespace {

double off_diagonal_norm2(const CMatrix& a) {
    double s = 0.0;
    for (Eigen::Index q = 1; q < a.cols(); ++q) {
        for (Eigen::Index p = 0; p < q; ++p) {
            s += std::norm(a(p, q));
        }
    }
    return s;
}

// Rotate columns p, q of `a` by the 2x2 block j = [[jpp, jpq], [jqp, jqq]].
void rotate_columns(CMatrix& a, Eigen::Index p, Eigen::Index q, Complex jpp, Complex jpq,
                    Complex jqp, Complex jqq) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        const Complex ap = a(r, p);
        const Complex aq = a(r, q);
        a(r, p) = ap * jpp + aq * jqp;
        a(r, q) = ap * jpq + aq * jqq;
    }
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("hermitian_eigensystem: matrix must be square and non-empty");
    }
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol::hermiticity) {
        throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian (error " +
                                    std::to_string(herm) + ")");
    }

    const Eigen::Index n = m.rows();
    CMatrix a = 0.5 * (m + m.adjoint());
    CMatrix v = CMatrix::Identity(n, n);
    const double scale = std::max(a.squaredNorm(), std::numeric_limits<double>::min());
    constexpr int kMaxSweeps = 100;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= 1e-32 * scale) {
            break;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= std::numeric_limits<double>::min()) {
                    continue;
                }
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Phase-align a(p,q) to a real number, then a real Givens rotation.
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);

                rotate_columns(a, p, q, jpp, jpq, jqp, jqq);
                for (Eigen::Index col = 0; col < n; ++col) {
                    const Complex ap = a(p, col);
                    const Complex aq = a(q, col);
                    a(p, col) = std::conj(jpp) * ap + std::conj(jqp) * aq;
                    a(q, col) = std::conj(jpq) * ap + std::conj(jqq) * aq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                rotate_columns(v, p, q, jpp, jpq, jqp, jqq);
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return a(x, x).real() < a(y, y).real();
    });

    EigenSystem es{RVector(n), CMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        es.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        es.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return es;
}

RVector hermitian_eigenvalues(const CMatrix& m) {
    return hermitian_eigensystem(m).values;
}

CMatrix hermitian_function(const CMatrix& h, const std::function<Complex(double)>& f) {
    const EigenSystem es = hermitian_eigensystem(h);
    CVector fd(es.values.size());
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        fd(k) = f(es.values(k));
    }
    return es.vectors * fd.asDiagonal() * es.vectors.adjoint();
}

double negativity(const DensityMatrix& rho) {
    const RVector ev = hermitian_eigenvalues(partial_transpose(rho, Subsystem::first).entries());
    double neg = 0.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (ev(k) < 0.0) {
            neg -= ev(k);
        }
    }
    return neg;
}

double fidelity_pure(const Ket& psi, const DensityMatrix& rho) {
    if (psi.dim() != rho.dim()) {
        throw std::invalid_argument("fidelity_pure: dimension mismatch");
    }
    const Complex f = psi.amplitudes().dot(rho.entries() * psi.amplitudes());
    return std::clamp(f.real(), 0.0, 1.0);
}

}  // namespace jcw
