#include "cren/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cren {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::NotSquare, std::string(what) + " is " + std::to_string(m.rows()) +
                                              "x" + std::to_string(m.cols()));
    }
}

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN or Inf entries");
    }
}

void require_side(const ComplexMatrix& m, BipartiteDims dims) {
    if (dims.a < 1 || dims.b < 1 || m.rows() != dims.total() || m.cols() != dims.total()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                        " does not match dims " + std::to_string(dims.a) + "x" +
                        std::to_string(dims.b));
    }
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const ComplexMatrix gram = m.adjoint() * m;
    return (gram - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

HermitianEig hermitian_eig(const ComplexMatrix& m, double hermiticity_tol) {
    require_square(m, "hermitian_eig input");
    require_finite(m, "hermitian_eig input");
    const double defect = hermiticity_defect(m);
    if (defect > hermiticity_tol) {
        throw Error(ErrorCode::NotHermitian, "|M - M^dag|_max = " + std::to_string(defect));
    }
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::InternalInconsistency, "eigensolver did not converge");
    }
    HermitianEig out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

RealVector singular_values(const ComplexMatrix& m) {
    require_finite(m, "singular_values input");
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

double trace_norm(const ComplexMatrix& m) {
    require_square(m, "trace_norm input");
    return singular_values(m).sum();
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, double clamp_tol) {
    require_square(m, "matrix_sqrt_psd input");
    const double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
    const HermitianEig eig = hermitian_eig(m, kHermiticityTol * scale);
    RealVector roots(eig.values.size());
    // Eigenvalues at the solver's rounding level carry no signal; their roots would.
    const double top = eig.values.size() ? std::abs(eig.values[0]) : 0.0;
    const double floor = 4.0 * double(m.rows()) * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, top);
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double lambda = eig.values[i];
        if (lambda < -clamp_tol) {
            throw Error(ErrorCode::NegativeEigenvalue, "eigenvalue " + std::to_string(lambda));
        }
        roots[i] = lambda > floor ? std::sqrt(lambda) : 0.0;
    }
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims) {
    require_side(m, dims);
    const int db = dims.b;
    ComplexMatrix out(m.rows(), m.cols());
    for (int i = 0; i < dims.a; ++i) {
        for (int j = 0; j < db; ++j) {
            for (int k = 0; k < dims.a; ++k) {
                for (int l = 0; l < db; ++l) {
                    out(i * db + j, k * db + l) = m(i * db + l, k * db + j);
                }
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem which) {
    require_side(m, dims);
    const int da = dims.a;
    const int db = dims.b;
    if (which == Subsystem::B) {
        ComplexMatrix out = ComplexMatrix::Zero(da, da);
        for (int i = 0; i < da; ++i)
            for (int k = 0; k < da; ++k)
                for (int j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (int j = 0; j < db; ++j)
        for (int l = 0; l < db; ++l)
            for (int i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace cren
