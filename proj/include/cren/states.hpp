#pragma once

#include <cstdint>

#include "cren/linalg.hpp"

namespace cren {

/// Unit vector on C^a (x) C^b; amplitude index is i*b + j for |i>_A |j>_B.
class PureState {
public:
    /// Throws NotNormalized unless the norm is 1 within 1e-10.
    PureState(BipartiteDims dims, ComplexVector amplitudes);

    /// Normalizes `amplitudes` first; throws NotNormalized for the zero vector.
    static PureState normalized(BipartiteDims dims, ComplexVector amplitudes);

    BipartiteDims dims() const { return dims_; }
    const ComplexVector& amplitudes() const { return amplitudes_; }

    /// |psi><psi|
    ComplexMatrix projector() const;

    /// Row-major a x b coefficient matrix C with psi = sum C_ij |ij>.
    ComplexMatrix coefficients() const;

private:
    BipartiteDims dims_;
    ComplexVector amplitudes_;
};

/// A Hermitian, PSD, unit-trace matrix certified by validate_density().
class DensityMatrix {
public:
    BipartiteDims dims() const { return dims_; }
    const ComplexMatrix& matrix() const { return matrix_; }

    static DensityMatrix from_pure(const PureState& psi);

private:
    friend DensityMatrix validate_density(const ComplexMatrix&, BipartiteDims);
    DensityMatrix(BipartiteDims dims, ComplexMatrix m) : dims_(dims), matrix_(std::move(m)) {}

    BipartiteDims dims_;
    ComplexMatrix matrix_;
};

/// Checks Hermiticity (1e-10), positivity (eigenvalues >= -1e-9) and unit
/// trace (1e-10). The stored matrix is the Hermitian part of `m`.
DensityMatrix validate_density(const ComplexMatrix& m, BipartiteDims dims);

/// psi = (U_A (x) U_B) sum_j sqrt(mu_j) |jj>.
struct SchmidtDecomposition {
    RealVector probabilities;  // descending, length min(a, b)
    ComplexMatrix local_unitary_a;
    ComplexMatrix local_unitary_b;

    /// Rebuilds the state from the Schmidt data.
    ComplexVector reconstruct(BipartiteDims dims) const;
};

SchmidtDecomposition schmidt_decompose(const PureState& psi);

/// (1/sqrt d) sum_j |jj>
PureState maximally_entangled(int d);

/// Projector onto the antisymmetric subspace, sum_{i<j} |Psi-_ij><Psi-_ij|.
ComplexMatrix antisymmetric_projector(int d);

/// rho_F = (1-F)/(d^2-1) (I - |Phi+><Phi+|) + F |Phi+><Phi+|
DensityMatrix isotropic_state(double fidelity, int d);

/// Werner state with antisymmetric weight W: (1-W) P_sym / dim(sym) + W P_anti / dim(anti).
DensityMatrix werner_state(double w, int d);

/// <Phi+|rho|Phi+>
double fidelity_param(const DensityMatrix& rho);

/// tr(rho P_anti)
double werner_param(const DensityMatrix& rho);

/// (U (x) U*)-twirl, evaluated as isotropic_state(fidelity_param(rho), d).
DensityMatrix twirl_isotropic(const DensityMatrix& rho);

/// (U (x) U)-twirl, evaluated as werner_state(werner_param(rho), d).
DensityMatrix twirl_werner(const DensityMatrix& rho);

/// Haar-random pure state (normalized complex Gaussian), deterministic in `seed`.
PureState random_pure(BipartiteDims dims, std::uint64_t seed);

/// G G^dag / tr(G G^dag) with G an n x rank complex Gaussian matrix.
DensityMatrix random_density(BipartiteDims dims, int rank, std::uint64_t seed);

/// Haar-random n x n unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(int n, std::uint64_t seed);

}  // namespace cren
