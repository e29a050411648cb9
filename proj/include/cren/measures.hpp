#pragma once

#include <string_view>

#include "cren/states.hpp"

namespace cren {

enum class Method { ClosedForm, PartialTranspose, Schmidt, Oracle };

std::string_view to_string(Method method);

struct MeasureValue {
    double value = 0.0;
    Method method = Method::ClosedForm;
    BipartiteDims dims_used;
};

/// (||rho^T_B||_1 - 1)/(d - 1) with d = min(a, b). States with a trivial
/// factor are separable and yield 0 with Method::ClosedForm.
MeasureValue negativity(const DensityMatrix& rho);

/// (2/(d-1)) sum_{i<j} sqrt(mu_i mu_j) for a Schmidt probability vector of length d >= 2.
MeasureValue pure_negativity(const RealVector& mu);

/// Pure-state negativity from the Schmidt coefficients of `psi`.
MeasureValue cren_pure(const PureState& psi);

/// [tr sqrt(rho)]^2
double g_function(const ComplexMatrix& rho);

/// (g(rho) - 1)/(d - 1), d the side length of rho.
double f_function(const ComplexMatrix& rho, int d);

/// max{(F d - 1)/(d - 1), 0}
MeasureValue cren_isotropic(double fidelity, int d);

/// max{(2W - 1)/(d - 1), 0}
MeasureValue cren_werner(double w, int d);

/// Two-qubit concurrence max{0, l1 - l2 - l3 - l4}.
MeasureValue wootters_concurrence(const DensityMatrix& rho);

/// |<Phi+|psi>|^2 for psi with Schmidt data (mu, V = U_A^T U_B).
double isotropic_fidelity_of_pure(const RealVector& mu, const ComplexMatrix& v);

/// tr(|psi><psi| P_anti) for psi with Schmidt data (mu, Lambda = U_A^dag U_B).
double werner_overlap_of_pure(const RealVector& mu, const ComplexMatrix& lambda);

}  // namespace cren
