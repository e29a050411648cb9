#include "cren/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cren/random.hpp"

namespace cren {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kTraceTol = 1e-10;

void require_equal_dims(BipartiteDims dims) {
    if (dims.a != dims.b) {
        throw Error(ErrorCode::NotSquareBipartition,
                    "family requires a = b, got " + std::to_string(dims.a) + "x" +
                        std::to_string(dims.b));
    }
}

void require_family_args(double p, int d, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::ParameterOutOfRange, std::string(name) + " = " + std::to_string(p));
    }
    if (d < 2) throw Error(ErrorCode::ParameterOutOfRange, "d = " + std::to_string(d));
}

ComplexMatrix swap_operator(int d) {
    ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
    return s;
}

}  // namespace

PureState::PureState(BipartiteDims dims, ComplexVector amplitudes)
    : dims_(dims), amplitudes_(std::move(amplitudes)) {
    if (dims_.a < 1 || dims_.b < 1 || amplitudes_.size() != dims_.total()) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude vector length " +
                                                      std::to_string(amplitudes_.size()));
    }
    if (!amplitudes_.allFinite()) throw Error(ErrorCode::NonFinite, "amplitudes");
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw Error(ErrorCode::NotNormalized, "norm = " + std::to_string(norm));
    }
}

PureState PureState::normalized(BipartiteDims dims, ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error(ErrorCode::NotNormalized, "cannot normalize vector of norm " +
                                                  std::to_string(norm));
    }
    amplitudes /= norm;
    return PureState(dims, std::move(amplitudes));
}

ComplexMatrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

ComplexMatrix PureState::coefficients() const {
    ComplexMatrix c(dims_.a, dims_.b);
    for (int i = 0; i < dims_.a; ++i)
        for (int j = 0; j < dims_.b; ++j) c(i, j) = amplitudes_[i * dims_.b + j];
    return c;
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return validate_density(psi.projector(), psi.dims());
}

DensityMatrix validate_density(const ComplexMatrix& m, BipartiteDims dims) {
    require_side(m, dims);
    require_finite(m, "density matrix");
    const double defect = hermiticity_defect(m);
    if (defect > kHermiticityTol) {
        throw Error(ErrorCode::NotHermitian, "|M - M^dag|_max = " + std::to_string(defect));
    }
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    const double trace = h.trace().real();
    if (std::abs(trace - 1.0) > kTraceTol) {
        throw Error(ErrorCode::TraceNotOne, "trace = " + std::to_string(trace));
    }
    const HermitianEig eig = hermitian_eig(h);
    const double lowest = eig.values[eig.values.size() - 1];
    if (lowest < -kClampTol) {
        throw Error(ErrorCode::NotPSD, "smallest eigenvalue " + std::to_string(lowest));
    }
    return DensityMatrix(dims, std::move(h));
}

ComplexVector SchmidtDecomposition::reconstruct(BipartiteDims dims) const {
    ComplexVector diag = ComplexVector::Zero(dims.total());
    for (Eigen::Index j = 0; j < probabilities.size(); ++j) {
        diag[j * dims.b + j] = std::sqrt(std::max(probabilities[j], 0.0));
    }
    return kron(local_unitary_a, local_unitary_b) * diag;
}

SchmidtDecomposition schmidt_decompose(const PureState& psi) {
    // C = U S V^dag  =>  psi = sum_j s_j |u_j> (x) |conj(v_j)>.
    Eigen::JacobiSVD<ComplexMatrix> svd(psi.coefficients(),
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
    SchmidtDecomposition out;
    out.probabilities = svd.singularValues().cwiseAbs2();
    out.probabilities /= out.probabilities.sum();
    out.local_unitary_a = svd.matrixU();
    out.local_unitary_b = svd.matrixV().conjugate();
    return out;
}

PureState maximally_entangled(int d) {
    if (d < 1) throw Error(ErrorCode::ParameterOutOfRange, "d = " + std::to_string(d));
    ComplexVector phi = ComplexVector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) phi[j * d + j] = amp;
    return PureState({d, d}, std::move(phi));
}

ComplexMatrix antisymmetric_projector(int d) {
    const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
    return 0.5 * (id - swap_operator(d));
}

DensityMatrix isotropic_state(double fidelity, int d) {
    require_family_args(fidelity, d, "F");
    const int n = d * d;
    const ComplexMatrix phi = maximally_entangled(d).projector();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const double noise = (1.0 - fidelity) / (n - 1.0);
    return validate_density(noise * (id - phi) + fidelity * phi, {d, d});
}

DensityMatrix werner_state(double w, int d) {
    require_family_args(w, d, "W");
    const int n = d * d;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix swap = swap_operator(d);
    const ComplexMatrix sym = 0.5 * (id + swap);
    const ComplexMatrix anti = 0.5 * (id - swap);
    const double dd = d;
    const ComplexMatrix rho =
        (2.0 * (1.0 - w) / (dd * (dd + 1.0))) * sym + (2.0 * w / (dd * (dd - 1.0))) * anti;
    return validate_density(rho, {d, d});
}

double fidelity_param(const DensityMatrix& rho) {
    require_equal_dims(rho.dims());
    const ComplexVector phi = maximally_entangled(rho.dims().a).amplitudes();
    return phi.dot(rho.matrix() * phi).real();
}

double werner_param(const DensityMatrix& rho) {
    require_equal_dims(rho.dims());
    return (rho.matrix() * antisymmetric_projector(rho.dims().a)).trace().real();
}

DensityMatrix twirl_isotropic(const DensityMatrix& rho) {
    const double f = std::clamp(fidelity_param(rho), 0.0, 1.0);
    return isotropic_state(f, rho.dims().a);
}

DensityMatrix twirl_werner(const DensityMatrix& rho) {
    const double w = std::clamp(werner_param(rho), 0.0, 1.0);
    return werner_state(w, rho.dims().a);
}

PureState random_pure(BipartiteDims dims, std::uint64_t seed) {
    Rng rng(seed);
    return PureState::normalized(dims, rng.ginibre(dims.total(), 1).col(0));
}

DensityMatrix random_density(BipartiteDims dims, int rank, std::uint64_t seed) {
    if (rank < 1 || rank > dims.total()) {
        throw Error(ErrorCode::RankOutOfRange, "rank " + std::to_string(rank) + " for dimension " +
                                                   std::to_string(dims.total()));
    }
    Rng rng(seed);
    const ComplexMatrix g = rng.ginibre(dims.total(), rank);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return validate_density(0.5 * (rho + rho.adjoint()), dims);
}

ComplexMatrix random_unitary(int n, std::uint64_t seed) {
    Rng rng(seed);
    return rng.haar_isometry(n, n);
}

}  // namespace cren
