#pragma once

#include <cstdint>
#include <random>

#include "cren/linalg.hpp"

namespace cren {

/// Seeded 64-bit Mersenne Twister. `stream` separates independent sub-sequences
/// drawn from the same user seed (e.g. one per optimizer restart).
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    std::uint64_t next() { return engine_(); }

    /// Entries (x + iy)/sqrt(2) with x, y standard normal.
    ComplexMatrix ginibre(int rows, int cols);

    /// rows x cols matrix with orthonormal columns, Haar distributed (rows >= cols).
    ComplexMatrix haar_isometry(int rows, int cols);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace cren
