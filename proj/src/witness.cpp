#include "jcw/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jcw {

namespace {

void require_bipartite(const Ket& psi, int nA, int nB, const char* where) {
    if (nA <= 0 || nB <= 0 || psi.dim() != nA * nB) {
        throw std::invalid_argument(std::string(where) + ": ket of dimension " + std::to_string(psi.dim()) +
                                    " does not match " + std::to_string(nA) + "x" + std::to_string(nB));
    }
}

// M(i, j) = <i j|psi>
CMatrix amplitude_matrix(const Ket& psi, int nA, int nB) {
    CMatrix m(nA, nB);
    for (int i = 0; i < nA; ++i) {
        for (int j = 0; j < nB; ++j) {
            m(i, j) = psi[i * nB + j];
        }
    }
    return m;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const Ket& psi, int nA, int nB) {
    require_bipartite(psi, nA, nB, "schmidt_decompose");
    const CMatrix m = amplitude_matrix(psi, nA, nB);
    const EigenSystem es = hermitian_eigensystem(m * m.adjoint());

    // M^T conj(u_k) = c_k v_k. Taking c_k as that norm instead of
    // sqrt(lambda_k) keeps null directions at ~eps rather than ~sqrt(eps).
    struct Term {
        double c;
        CVector u;
        CVector w;
    };
    std::vector<Term> terms;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        const CVector u = es.vectors.col(k);
        CVector w = m.transpose() * u.conjugate();
        const double c = w.norm();
        if (c >= kSchmidtCutoff) {
            terms.push_back({c, u, std::move(w)});
        }
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.c > b.c; });

    SchmidtDecomposition out;
    for (Term& t : terms) {
        CVector v = t.w / t.c;
        // Small coefficients leave v slightly off orthogonal; project out the
        // larger ones already accepted.
        for (const Ket& r : out.right) {
            v -= r.amplitudes().dot(v) * r.amplitudes();
        }
        v /= v.norm();
        out.coefficients.push_back(t.c);
        out.left.emplace_back(std::move(t.u));
        out.right.emplace_back(std::move(v));
    }
    return out;
}

std::vector<double> SchmidtForm::coefficients() const {
    if (rank < 1 || alphas.size() + 1 != static_cast<std::size_t>(rank)) {
        throw std::invalid_argument("SchmidtForm: rank " + std::to_string(rank) + " needs " +
                                    std::to_string(std::max(rank - 1, 0)) + " alphas");
    }
    std::vector<double> c(static_cast<std::size_t>(rank));
    double sin_prod = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i + 1 < c.size()) {
            c[i] = sin_prod * std::cos(alphas[i]);
            sin_prod *= std::sin(alphas[i]);
        } else {
            c[i] = sin_prod;
        }
    }
    return c;
}

std::vector<double> maximally_entangled_alphas(int rank) {
    std::vector<double> a;
    for (int i = 1; i < rank; ++i) {
        a.push_back(std::acos(1.0 / std::sqrt(static_cast<double>(rank - i + 1))));
    }
    return a;
}

Ket schmidt_state(const SchmidtForm& form) {
    if (form.rank > std::min(form.nA, form.nB)) {
        throw std::invalid_argument("schmidt_state: rank " + std::to_string(form.rank) + " exceeds min(nA, nB)");
    }
    if (form.basisA.dim() != form.nA || form.basisB.dim() != form.nB) {
        throw std::invalid_argument("schmidt_state: basis dimensions do not match nA, nB");
    }
    const std::vector<double> c = form.coefficients();
    for (double ci : c) {
        if (ci < -1e-12) {
            throw std::invalid_argument("schmidt_state: alphas give a negative Schmidt coefficient");
        }
    }
    const std::vector<Ket> a = build_basis(form.basisA);
    const std::vector<Ket> b = build_basis(form.basisB);
    CVector out = CVector::Zero(form.nA * form.nB);
    for (std::size_t m = 0; m < c.size(); ++m) {
        out += c[m] * tensor(a[m], b[m]).amplitudes();
    }
    return Ket(std::move(out));
}

double concurrence_pure(const Ket& psi) {
    if (psi.dim() != 4) {
        throw std::invalid_argument("concurrence_pure: expects a two-qubit ket");
    }
    return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

double k_two_qubit(const Ket& psi) {
    if (psi.dim() != 4) {
        throw std::invalid_argument("k_two_qubit: expects a two-qubit ket");
    }
    // For a normalized ket 1 - C^2 = (Tr rho_A)^2 - 4 det rho_A = (a - d)^2 + 4|b|^2
    // with rho_A = [[a, b], [b*, d]]. Forming 1 - C^2 directly loses everything
    // near C = 1 (the Bell state would give k = 1/2 + 1e-8).
    const double a = std::norm(psi[0]) + std::norm(psi[1]);
    const double d = std::norm(psi[2]) + std::norm(psi[3]);
    const Complex b = psi[0] * std::conj(psi[2]) + psi[1] * std::conj(psi[3]);
    return 0.5 * (1.0 + std::sqrt((a - d) * (a - d) + 4.0 * std::norm(b)));
}

double k_general(const Ket& psi, int nA, int nB) {
    const SchmidtDecomposition sd = schmidt_decompose(psi, nA, nB);
    if (sd.coefficients.empty()) {
        throw std::invalid_argument("k_general: zero ket");
    }
    return sd.coefficients.front() * sd.coefficients.front();
}

CMatrix WitnessOperator::matrix() const {
    const auto d = static_cast<Eigen::Index>(nA * nB);
    return k * CMatrix::Identity(d, d) - projector_state.amplitudes() * projector_state.amplitudes().adjoint();
}

WitnessOperator witness_of(const Ket& psi, int nA, int nB) {
    require_bipartite(psi, nA, nB, "witness_of");
    return WitnessOperator{k_general(psi, nA, nB), psi, nA, nB};
}

double expectation(const WitnessOperator& w, const DensityMatrix& rho) {
    if (rho.dimA() != w.nA || rho.dimB() != w.nB) {
        throw std::invalid_argument("expectation: witness and state dimensions differ");
    }
    return w.k - fidelity_pure(w.projector_state, rho);
}

}  // namespace jcw
