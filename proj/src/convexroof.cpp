#include "cren/convexroof.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "cren/measures.hpp"
#include "cren/random.hpp"

namespace cren {

namespace {

constexpr double kWeightSumTol = 1e-10;
constexpr double kPruneWeight = 1e-15;
constexpr double kIsometryTol = 1e-8;
constexpr double kArmijo = 1e-4;
constexpr int kStallWindow = 10;

// Smoothing widths for sigma -> sqrt(sigma^2 + eps^2); the last stage is exact.
constexpr std::array<double, 5> kSmoothing{1e-2, 1e-3, 1e-4, 1e-5, 0.0};

double real_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
    return (x.conjugate().cwiseProduct(y)).sum().real();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Polar retraction X (X^dag X)^{-1/2}.
ComplexMatrix polar_retract(const ComplexMatrix& x) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(x.adjoint() * x));
    const RealVector inv_root = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    return x * (eig.eigenvectors() * inv_root.asDiagonal() * eig.eigenvectors().adjoint());
}

// The convex-roof objective as a function of a K x r isometry T:
//   (sum_k ||M_k||_*^2 - 1)/(d - 1),  vec(M_k) = B T_k^T,
// where B holds sqrt(lambda_j) |e_j> as columns. ||M_k||_*^2 = p_k g(rho_k)
// and sum_k p_k = 1, so this equals sum_k p_k f(rho_k).
class RoofProblem {
public:
    RoofProblem(BipartiteDims dims, ComplexMatrix basis)
        : dims_(dims), basis_(std::move(basis)), denom_(dims.min() - 1.0) {}

    int rank() const { return static_cast<int>(basis_.cols()); }

    double evaluate(const ComplexMatrix& t, double eps, ComplexMatrix* grad) const {
        const ComplexMatrix members = basis_ * t.transpose();  // n x K
        if (grad) grad->resize(t.rows(), t.cols());
        double total = 0.0;
        for (Eigen::Index k = 0; k < members.cols(); ++k) {
            // Column-major b x a view of the row-major a x b coefficient matrix.
            const Eigen::Map<const ComplexMatrix> coeff(members.col(k).data(), dims_.b, dims_.a);
            if (!grad) {
                Eigen::JacobiSVD<ComplexMatrix> svd(coeff);
                const RealVector s = svd.singularValues();
                const double n = eps > 0.0 ? (s.array().square() + eps * eps).sqrt().sum() : s.sum();
                total += n * n;
                continue;
            }
            Eigen::JacobiSVD<ComplexMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const RealVector s = svd.singularValues();
            RealVector w(s.size());
            double n = 0.0;
            for (Eigen::Index i = 0; i < s.size(); ++i) {
                const double se = eps > 0.0 ? std::sqrt(s[i] * s[i] + eps * eps) : s[i];
                n += se;
                w[i] = eps > 0.0 ? s[i] / se : 1.0;
            }
            total += n * n;
            const ComplexMatrix polar_factor =
                svd.matrixU() * w.asDiagonal() * svd.matrixV().adjoint();
            const Eigen::Map<const ComplexVector> flat(polar_factor.data(), polar_factor.size());
            grad->row(k) = ((2.0 * n / denom_) * (basis_.adjoint() * flat)).transpose();
        }
        return (total - 1.0) / denom_;
    }

private:
    BipartiteDims dims_;
    ComplexMatrix basis_;
    double denom_;
};

// Riemannian gradient on the Stiefel manifold (embedded metric).
ComplexMatrix project_tangent(const ComplexMatrix& t, const ComplexMatrix& g) {
    return g - t * hermitian_part(t.adjoint() * g);
}

struct StageOutcome {
    ComplexMatrix point;
    double value;
    int iterations;
    bool converged;
};

// Conjugate gradient (Polak-Ribiere+) with Armijo backtracking along polar
// retractions. The stage objective never increases between iterations.
StageOutcome refine(const RoofProblem& problem, ComplexMatrix t, double eps,
                    const OptimizerConfig& config) {
    ComplexMatrix euclid;
    double value = problem.evaluate(t, eps, &euclid);
    ComplexMatrix grad = project_tangent(t, euclid);
    ComplexMatrix dir = -grad;
    bool steepest = true;
    double step = 1.0;
    int stalled = 0;
    int it = 0;
    bool converged = false;
    for (; it < config.max_iterations; ++it) {
        double slope = real_inner(grad, dir);
        if (!(slope < 0.0)) {
            dir = -grad;
            steepest = true;
            slope = -real_inner(grad, grad);
        }
        const double dir_norm = std::sqrt(real_inner(dir, dir));
        if (!(dir_norm > 0.0)) {
            converged = true;
            break;
        }
        step = std::min(2.0 * step, 10.0 / dir_norm);

        ComplexMatrix candidate;
        ComplexMatrix cand_euclid;
        double cand_value = value;
        bool accepted = false;
        while (step * dir_norm >= config.step_tolerance) {
            candidate = polar_retract(t + step * dir);
            cand_value = problem.evaluate(candidate, eps, &cand_euclid);
            if (cand_value <= value + kArmijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (steepest) {
                converged = true;
                break;
            }
            // Conjugate direction failed; retry along steepest descent.
            dir = -grad;
            steepest = true;
            step = 1.0;
            continue;
        }

        const ComplexMatrix new_grad = project_tangent(candidate, cand_euclid);
        const ComplexMatrix old_grad = project_tangent(candidate, grad);
        const double denom = real_inner(grad, grad);
        const double beta =
            denom > 0.0 ? std::max(0.0, real_inner(new_grad, new_grad - old_grad) / denom) : 0.0;
        dir = -new_grad + beta * project_tangent(candidate, dir);
        steepest = beta == 0.0;

        stalled = (value - cand_value < config.value_tolerance) ? stalled + 1 : 0;
        t = std::move(candidate);
        value = cand_value;
        grad = new_grad;
        if (stalled >= kStallWindow) {
            converged = true;
            ++it;
            break;
        }
    }
    return {std::move(t), value, it, converged};
}

struct Restart {
    ComplexMatrix point;
    double value;
    long iterations;
    bool converged;
};

Restart run_restart(const RoofProblem& problem, ComplexMatrix start,
                    const OptimizerConfig& config) {
    long iterations = 0;
    ComplexMatrix best_point = start;
    double best_value = problem.evaluate(start, 0.0, nullptr);
    bool converged = false;
    for (double eps : kSmoothing) {
        StageOutcome stage = refine(problem, std::move(start), eps, config);
        iterations += stage.iterations;
        converged = stage.converged;
        const double exact = eps > 0.0 ? problem.evaluate(stage.point, 0.0, nullptr) : stage.value;
        if (exact <= best_value) {
            best_value = exact;
            best_point = stage.point;
        }
        start = std::move(stage.point);
    }
    return {std::move(best_point), best_value, iterations, converged};
}

struct EigenEnsemble {
    RealVector values;      // kept eigenvalues, descending
    ComplexMatrix vectors;  // matching eigenvectors
};

EigenEnsemble support_of(const DensityMatrix& rho) {
    const HermitianEig eig = hermitian_eig(rho.matrix());
    Eigen::Index r = 0;
    while (r < eig.values.size() && eig.values[r] > kRankCutoff) ++r;
    return {eig.values.head(r), eig.vectors.leftCols(r)};
}

ComplexMatrix scaled_basis(const EigenEnsemble& support) {
    return support.vectors * support.values.cwiseSqrt().asDiagonal();
}

// Inverse of expand_decomposition: T_kj = <e_j|psi~_k>/sqrt(lambda_j).
ComplexMatrix isometry_from(const Decomposition& dec, const EigenEnsemble& support) {
    const Eigen::Index k = static_cast<Eigen::Index>(dec.size());
    ComplexMatrix t(k, support.values.size());
    for (Eigen::Index i = 0; i < k; ++i) {
        const ComplexVector overlaps =
            support.vectors.adjoint() * (std::sqrt(dec.weights()[i]) * dec.states()[i].amplitudes());
        t.row(i) = overlaps.cwiseQuotient(support.values.cwiseSqrt().cast<Complex>()).transpose();
    }
    const double defect =
        (t.adjoint() * t - ComplexMatrix::Identity(t.cols(), t.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-6) {
        throw Error(ErrorCode::NotIsometry,
                    "warm start does not decompose rho (defect " + std::to_string(defect) + ")");
    }
    return polar_retract(t);
}

}  // namespace

Decomposition::Decomposition(std::vector<double> weights, std::vector<PureState> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
    if (weights_.empty() || weights_.size() != states_.size()) {
        throw Error(ErrorCode::ValidationFailure, "decomposition needs matching non-empty lists");
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw Error(ErrorCode::ValidationFailure, "weights must be positive");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw Error(ErrorCode::ValidationFailure, "weights sum to " + std::to_string(sum));
    }
    for (const PureState& s : states_) {
        if (s.dims() != states_.front().dims()) {
            throw Error(ErrorCode::DimensionMismatch, "members have differing dims");
        }
    }
}

ComplexMatrix Decomposition::reconstruct() const {
    const int n = dims().total();
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < size(); ++k) {
        const ComplexVector& v = states_[k].amplitudes();
        rho.noalias() += weights_[k] * (v * v.adjoint());
    }
    return rho;
}

Decomposition Decomposition::mix(const Decomposition& first, const Decomposition& second,
                                 double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw Error(ErrorCode::ParameterOutOfRange, "mixing weight must lie in (0, 1)");
    }
    std::vector<double> weights;
    std::vector<PureState> states;
    for (std::size_t k = 0; k < first.size(); ++k) {
        weights.push_back(lambda * first.weights()[k]);
        states.push_back(first.states()[k]);
    }
    for (std::size_t k = 0; k < second.size(); ++k) {
        weights.push_back((1.0 - lambda) * second.weights()[k]);
        states.push_back(second.states()[k]);
    }
    return Decomposition(std::move(weights), std::move(states));
}

int default_ensemble_size(int rank) { return std::min(2 * rank, rank + 4); }

Decomposition expand_decomposition(const DensityMatrix& rho, const ComplexMatrix& isometry) {
    const EigenEnsemble support = support_of(rho);
    const Eigen::Index r = support.values.size();
    if (isometry.cols() != r) {
        throw Error(ErrorCode::RankMismatch, "isometry has " + std::to_string(isometry.cols()) +
                                                 " columns, rank is " + std::to_string(r));
    }
    if (isometry.rows() < r ||
        (isometry.adjoint() * isometry - ComplexMatrix::Identity(r, r)).cwiseAbs().maxCoeff() >
            kIsometryTol) {
        throw Error(ErrorCode::NotIsometry, "columns are not orthonormal");
    }
    const ComplexMatrix members = scaled_basis(support) * isometry.transpose();
    std::vector<double> weights;
    std::vector<PureState> states;
    double total = 0.0;
    for (Eigen::Index k = 0; k < members.cols(); ++k) {
        const double p = members.col(k).squaredNorm();
        if (p <= kPruneWeight) continue;
        weights.push_back(p);
        total += p;
        states.push_back(PureState::normalized(rho.dims(), members.col(k)));
    }
    for (double& w : weights) w /= total;
    return Decomposition(std::move(weights), std::move(states));
}

double decomposition_objective(const Decomposition& dec) {
    const BipartiteDims dims = dec.dims();
    if (dims.min() < 2) return 0.0;
    // Reduce onto the smaller factor so f's dimension matches the negativity's d.
    const Subsystem traced = dims.a <= dims.b ? Subsystem::B : Subsystem::A;
    double total = 0.0;
    for (std::size_t k = 0; k < dec.size(); ++k) {
        const ComplexMatrix reduced =
            partial_trace(dec.states()[k].projector(), dims, traced);
        total += dec.weights()[k] * std::max(f_function(reduced, dims.min()), 0.0);
    }
    return total;
}

CrenResult optimize_cren(const DensityMatrix& rho, const OptimizerConfig& config,
                         std::span<const Decomposition> warm_starts) {
    if (rho.dims().min() < 2) {
        throw Error(ErrorCode::DegenerateDimension, "convex roof needs both factors of dim >= 2");
    }
    if (config.restarts < 1 || config.max_iterations < 1 || config.ensemble_size < 0 ||
        !(config.value_tolerance > 0.0) || !(config.step_tolerance > 0.0)) {
        throw Error(ErrorCode::ConfigInvalid, "restarts, iterations and tolerances must be positive");
    }
    const EigenEnsemble support = support_of(rho);
    const int rank = static_cast<int>(support.values.size());
    const int k = config.ensemble_size == 0 ? default_ensemble_size(rank) : config.ensemble_size;
    if (k < rank) {
        throw Error(ErrorCode::ConfigInvalid, "ensemble size " + std::to_string(k) +
                                                  " below rank " + std::to_string(rank));
    }

    if (rank == 1) {
        const PureState psi = PureState::normalized(rho.dims(), support.vectors.col(0));
        Decomposition witness({1.0}, {psi});
        const double value = decomposition_objective(witness);
        return {value, std::move(witness), 0, 0, true, config.seed, 1, rank};
    }

    const RoofProblem problem(rho.dims(), scaled_basis(support));
    std::vector<ComplexMatrix> starts;
    for (int i = 0; i < config.restarts; ++i) {
        Rng rng(config.seed, static_cast<std::uint64_t>(i));
        starts.push_back(rng.haar_isometry(k, rank));
    }
    for (const Decomposition& warm : warm_starts) {
        if (warm.dims() != rho.dims()) {
            throw Error(ErrorCode::DimensionMismatch, "warm start dims differ from rho");
        }
        starts.push_back(isometry_from(warm, support));
    }

    std::optional<Restart> best;
    long iterations = 0;
    for (ComplexMatrix& start : starts) {
        Restart r = run_restart(problem, std::move(start), config);
        iterations += r.iterations;
        if (!best || r.value < best->value) best = std::move(r);
    }

    Decomposition witness = expand_decomposition(rho, best->point);
    const double value = decomposition_objective(witness);
    return {value,
            std::move(witness),
            static_cast<int>(starts.size()),
            iterations,
            best->converged,
            config.seed,
            k,
            rank};
}

DecompositionReport verify_decomposition(const Decomposition& dec, const DensityMatrix& rho,
                                         double tol) {
    DecompositionReport report;
    report.dims_match = dec.dims() == rho.dims();
    double sum = 0.0;
    for (double w : dec.weights()) sum += w;
    report.weight_sum_deviation = std::abs(sum - 1.0);
    for (const PureState& s : dec.states()) {
        report.max_norm_deviation =
            std::max(report.max_norm_deviation, std::abs(s.amplitudes().norm() - 1.0));
    }
    report.reconstruction_residual = report.dims_match
        ? (dec.reconstruct() - rho.matrix()).cwiseAbs().maxCoeff()
        : std::numeric_limits<double>::infinity();
    report.passed = report.dims_match && report.reconstruction_residual <= tol &&
                    report.weight_sum_deviation <= tol && report.max_norm_deviation <= tol;
    return report;
}

double detail::roof_objective(const DensityMatrix& rho, const ComplexMatrix& isometry, double eps,
                              ComplexMatrix* gradient) {
    const EigenEnsemble support = support_of(rho);
    if (isometry.cols() != support.values.size()) {
        throw Error(ErrorCode::RankMismatch, "isometry width differs from rank");
    }
    const RoofProblem problem(rho.dims(), scaled_basis(support));
    return problem.evaluate(isometry, eps, gradient);
}

}  // namespace cren
