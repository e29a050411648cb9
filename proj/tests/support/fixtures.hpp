#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// code paths these helpers are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cren/random.hpp"
#include "cren/states.hpp"

namespace cren::testing {

inline ComplexMatrix random_hermitian(int n, std::uint64_t seed) {
    Rng rng(seed, 7);
    const ComplexMatrix g = rng.ginibre(n, n);
    return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix diag(std::initializer_list<double> values) {
    ComplexMatrix m = ComplexMatrix::Zero(values.size(), values.size());
    int i = 0;
    for (double v : values) m(i, i) = v, ++i;
    return m;
}

inline PureState basis_state(BipartiteDims dims, int i, int j) {
    ComplexVector v = ComplexVector::Zero(dims.total());
    v[i * dims.b + j] = 1.0;
    return PureState(dims, v);
}

/// (|01> - |10>)/sqrt 2 generalised to levels i < j of C^d (x) C^d.
inline PureState singlet(int d, int i, int j) {
    ComplexVector v = ComplexVector::Zero(d * d);
    v[i * d + j] = 1.0 / std::sqrt(2.0);
    v[j * d + i] = -1.0 / std::sqrt(2.0);
    return PureState({d, d}, v);
}

/// Random convex mixture of m random product states.
inline DensityMatrix product_mixture(BipartiteDims dims, int m, std::uint64_t seed) {
    Rng rng(seed, 99);
    ComplexMatrix rho = ComplexMatrix::Zero(dims.total(), dims.total());
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const ComplexVector a = rng.ginibre(dims.a, 1).col(0).normalized();
        const ComplexVector b = rng.ginibre(dims.b, 1).col(0).normalized();
        ComplexVector v(dims.total());
        for (int x = 0; x < dims.a; ++x)
            for (int y = 0; y < dims.b; ++y) v[x * dims.b + y] = a[x] * b[y];
        const double p = rng.uniform() + 0.05;
        total += p;
        rho += p * v * v.adjoint();
    }
    return validate_density(rho / total, dims);
}

/// Sorted multiset {mu_k} U {+-sqrt(mu_i mu_j)}_{i<j}, padded with zeros to a*b entries.
inline std::vector<double> pure_transpose_spectrum(const RealVector& mu, int n) {
    std::vector<double> out;
    for (Eigen::Index k = 0; k < mu.size(); ++k) out.push_back(mu[k]);
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        for (Eigen::Index j = i + 1; j < mu.size(); ++j) {
            const double s = std::sqrt(mu[i] * mu[j]);
            out.push_back(s);
            out.push_back(-s);
        }
    out.resize(std::max<std::size_t>(out.size(), n), 0.0);
    std::sort(out.begin(), out.end());
    return out;
}

inline double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace cren::testing
