#include "cren/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cren {

namespace {

constexpr double kNoiseFloor = 1e-12;
constexpr double kUnitaryTol = 1e-8;

// Clamps float noise below zero; anything more negative is a bug upstream.
double clamp_nonnegative(double value, const char* what) {
    if (value >= 0.0) return value;
    if (value >= -kNoiseFloor) return 0.0;
    throw Error(ErrorCode::InternalInconsistency,
                std::string(what) + " evaluated to " + std::to_string(value));
}

void require_probability_vector(const RealVector& mu) {
    if (mu.size() < 2) {
        throw Error(ErrorCode::DegenerateDimension, "Schmidt vector needs length >= 2");
    }
    if (!mu.allFinite() || mu.minCoeff() < 0.0 || std::abs(mu.sum() - 1.0) > 1e-10) {
        throw Error(ErrorCode::NotNormalized, "Schmidt probabilities must be >= 0 and sum to 1");
    }
}

void require_unitary(const ComplexMatrix& u, Eigen::Index d) {
    if (u.rows() != d || u.cols() != d || !is_unitary(u, kUnitaryTol)) {
        throw Error(ErrorCode::NotUnitary, "expected a " + std::to_string(d) + "x" +
                                               std::to_string(d) + " unitary");
    }
}

}  // namespace

std::string_view to_string(Method method) {
    switch (method) {
        case Method::ClosedForm: return "closed_form";
        case Method::PartialTranspose: return "partial_transpose";
        case Method::Schmidt: return "schmidt";
        case Method::Oracle: return "oracle";
    }
    return "unknown";
}

MeasureValue negativity(const DensityMatrix& rho) {
    const BipartiteDims dims = rho.dims();
    if (dims.min() < 2) return {0.0, Method::ClosedForm, dims};
    const ComplexMatrix& m = rho.matrix();
    // Subtracting tr(rho) instead of 1 keeps product states at exactly zero
    // up to rounding, even when the trace is off by ~1e-10.
    const double excess = trace_norm(partial_transpose(m, dims)) - m.trace().real();
    const double value = clamp_nonnegative(excess / (dims.min() - 1.0), "negativity");
    return {value, Method::PartialTranspose, dims};
}

MeasureValue pure_negativity(const RealVector& mu) {
    require_probability_vector(mu);
    const Eigen::Index d = mu.size();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) sum += std::sqrt(mu[i] * mu[j]);
    const double value = 2.0 * sum / (d - 1.0);
    return {value, Method::Schmidt, {static_cast<int>(d), static_cast<int>(d)}};
}

MeasureValue cren_pure(const PureState& psi) {
    const BipartiteDims dims = psi.dims();
    if (dims.min() < 2) return {0.0, Method::ClosedForm, dims};
    MeasureValue out = pure_negativity(schmidt_decompose(psi).probabilities);
    out.dims_used = dims;
    return out;
}

double g_function(const ComplexMatrix& rho) {
    try {
        const double t = matrix_sqrt_psd(rho).trace().real();
        return t * t;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NegativeEigenvalue) throw Error(ErrorCode::NotPSD, e.what());
        throw;
    }
}

double f_function(const ComplexMatrix& rho, int d) {
    if (d < 2 || rho.rows() != d) {
        throw Error(ErrorCode::DimensionMismatch,
                    "f needs d = side of rho >= 2, got d = " + std::to_string(d));
    }
    return (g_function(rho) - 1.0) / (d - 1.0);
}

MeasureValue cren_isotropic(double fidelity, int d) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0) || d < 2) {
        throw Error(ErrorCode::ParameterOutOfRange,
                    "F = " + std::to_string(fidelity) + ", d = " + std::to_string(d));
    }
    const double value = std::max((fidelity * d - 1.0) / (d - 1.0), 0.0);
    return {value, Method::ClosedForm, {d, d}};
}

MeasureValue cren_werner(double w, int d) {
    if (!(w >= 0.0 && w <= 1.0) || d < 2) {
        throw Error(ErrorCode::ParameterOutOfRange,
                    "W = " + std::to_string(w) + ", d = " + std::to_string(d));
    }
    const double value = std::max((2.0 * w - 1.0) / (d - 1.0), 0.0);
    return {value, Method::ClosedForm, {d, d}};
}

MeasureValue wootters_concurrence(const DensityMatrix& rho) {
    if (rho.dims() != BipartiteDims{2, 2}) {
        throw Error(ErrorCode::NotTwoQubit, "concurrence is defined for 2x2 systems only");
    }
    ComplexMatrix sigma_y(2, 2);
    sigma_y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    const ComplexMatrix yy = kron(sigma_y, sigma_y);
    // With rho = W W^dag, W = [sqrt(p_i) e_i] over the numerical support, the
    // lambda_i are the singular values of W^T (Y (x) Y) W.
    const HermitianEig eig = hermitian_eig(rho.matrix());
    const double cutoff = 1e-14 * std::max(1.0, eig.values[0]);
    Eigen::Index r = 0;
    while (r < eig.values.size() && eig.values[r] > cutoff) ++r;
    const ComplexMatrix w = eig.vectors.leftCols(r) * eig.values.head(r).cwiseSqrt().asDiagonal();
    RealVector lambda = RealVector::Zero(4);
    lambda.head(r) = singular_values(w.transpose() * yy * w);
    const double value = std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
    return {value, Method::Oracle, rho.dims()};
}

double isotropic_fidelity_of_pure(const RealVector& mu, const ComplexMatrix& v) {
    require_probability_vector(mu);
    require_unitary(v, mu.size());
    Complex overlap = 0.0;
    for (Eigen::Index k = 0; k < mu.size(); ++k) overlap += std::sqrt(mu[k]) * v(k, k);
    return std::norm(overlap) / static_cast<double>(mu.size());
}

double werner_overlap_of_pure(const RealVector& mu, const ComplexMatrix& lambda) {
    require_probability_vector(mu);
    require_unitary(lambda, mu.size());
    double sum = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        for (Eigen::Index j = i + 1; j < mu.size(); ++j)
            sum += std::norm(std::sqrt(mu[i]) * lambda(j, i) - std::sqrt(mu[j]) * lambda(i, j));
    return 0.5 * sum;
}

}  // namespace cren
