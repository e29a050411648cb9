#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cren/error.hpp"

namespace cren {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Subsystem dimensions of a bipartite Hilbert space C^a (x) C^b.
struct BipartiteDims {
    int a = 1;
    int b = 1;

    int total() const { return a * b; }
    int min() const { return a < b ? a : b; }
    bool operator==(const BipartiteDims&) const = default;
};

/// Default tolerances shared by the state and measure code.
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kClampTol = 1e-9;

struct HermitianEig {
    RealVector values;      // descending
    ComplexMatrix vectors;  // columns match `values`
};

/// Spectral decomposition of a Hermitian matrix, eigenvalues in descending order.
HermitianEig hermitian_eig(const ComplexMatrix& m, double hermiticity_tol = kHermiticityTol);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

RealVector singular_values(const ComplexMatrix& m);

/// Principal square root of a PSD matrix. Eigenvalues in [-clamp_tol, 0) are
/// treated as zero; anything more negative is rejected.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, double clamp_tol = kClampTol);

/// Transpose on the second factor: <i,j|M^T_B|k,l> = <i,l|M|k,j>.
ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims);

enum class Subsystem { A, B };

/// Traces out `which`, returning the reduced operator on the other factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem which);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Checks shared across modules.
void require_square(const ComplexMatrix& m, const char* what);
void require_finite(const ComplexMatrix& m, const char* what);
void require_side(const ComplexMatrix& m, BipartiteDims dims);
double hermiticity_defect(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& m, double tol);

}  // namespace cren
