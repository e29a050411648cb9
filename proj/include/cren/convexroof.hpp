#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cren/states.hpp"

namespace cren {

/// Pure-state ensemble {p_k, |psi_k>} with strictly positive weights summing to 1.
class Decomposition {
public:
    /// Throws ValidationFailure on empty input, non-positive weights, a weight
    /// sum off by more than 1e-10, or members with differing dims.
    Decomposition(std::vector<double> weights, std::vector<PureState> states);

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<PureState>& states() const { return states_; }
    std::size_t size() const { return weights_.size(); }
    BipartiteDims dims() const { return states_.front().dims(); }

    /// sum_k p_k |psi_k><psi_k|
    ComplexMatrix reconstruct() const;

    /// Convex combination: weights scaled by `lambda` and `1 - lambda`.
    static Decomposition mix(const Decomposition& first, const Decomposition& second,
                             double lambda);

private:
    std::vector<double> weights_;
    std::vector<PureState> states_;
};

struct OptimizerConfig {
    int ensemble_size = 0;  // K; 0 selects default_ensemble_size(rank)
    int restarts = 16;
    int max_iterations = 2000;  // per continuation stage of one restart
    double step_tolerance = 1e-12;
    double value_tolerance = 1e-7;
    std::uint64_t seed = 42;
};

/// min(2 r, r + 4)
int default_ensemble_size(int rank);

struct CrenResult {
    double value = 0.0;  // upper bound on the convex roof
    Decomposition witness;
    int restarts_used = 0;
    long iterations = 0;  // summed over all restarts and stages
    bool converged = false;
    std::uint64_t seed = 0;
    int ensemble_size = 0;
    int rank = 0;
};

/// Eigenvalues of rho at or below this are treated as outside the support.
inline constexpr double kRankCutoff = 1e-10;

/// Builds the ensemble |psi~_k> = sum_j T_kj sqrt(lambda_j) |e_j> from the
/// eigen-ensemble of rho. `isometry` is K x r with r = rank(rho).
Decomposition expand_decomposition(const DensityMatrix& rho, const ComplexMatrix& isometry);

/// sum_k p_k f(rho_k), the weighted pure-state negativity of the members.
double decomposition_objective(const Decomposition& dec);

/// Minimizes the average pure-state negativity over size-K decompositions of
/// rho by seeded random restarts. Each `warm_starts` entry must decompose rho
/// and is refined as one extra restart.
CrenResult optimize_cren(const DensityMatrix& rho, const OptimizerConfig& config = {},
                         std::span<const Decomposition> warm_starts = {});

struct DecompositionReport {
    double reconstruction_residual = 0.0;  // max-norm of sum p_k |psi_k><psi_k| - rho
    double weight_sum_deviation = 0.0;
    double max_norm_deviation = 0.0;  // max_k | ||psi_k|| - 1 |
    bool dims_match = true;
    bool passed = false;
};

DecompositionReport verify_decomposition(const Decomposition& dec, const DensityMatrix& rho,
                                         double tol);

namespace detail {

/// The optimizer's objective over K x r isometries, with singular values
/// smoothed to sqrt(s^2 + eps^2) (eps = 0 is exact). When `gradient` is set
/// it receives the Euclidean gradient w.r.t. Re<G, dT>.
double roof_objective(const DensityMatrix& rho, const ComplexMatrix& isometry, double eps,
                      ComplexMatrix* gradient);

}  // namespace detail

}  // namespace cren
