#include "cren/random.hpp"

#include <cmath>

namespace cren {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

ComplexMatrix Rng::ginibre(int rows, int cols) {
    ComplexMatrix g(rows, cols);
    const double s = 1.0 / std::sqrt(2.0);
    // Column-major fill order, fixed for reproducibility.
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = normal();
            const double im = normal();
            g(i, j) = Complex(s * re, s * im);
        }
    return g;
}

ComplexMatrix Rng::haar_isometry(int rows, int cols) {
    const ComplexMatrix g = ginibre(rows, cols);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
    const ComplexMatrix& r = qr.matrixQR();
    // Fix the phase of R's diagonal so Q is Haar rather than QR-biased.
    for (int j = 0; j < cols; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

}  // namespace cren
