#include <doctest.h>

#include <cmath>

#include "cren/linalg.hpp"
#include "cren/random.hpp"
#include "cren/states.hpp"
#include "../support/fixtures.hpp"

using namespace cren;
using cren::testing::diag;
using cren::testing::max_abs;

TEST_SUITE("linalg") {

TEST_CASE("hermitian_eig on trivial inputs") {
    const HermitianEig id = hermitian_eig(ComplexMatrix::Identity(2, 2));
    CHECK(id.values[0] == doctest::Approx(1.0));
    CHECK(id.values[1] == doctest::Approx(1.0));
    CHECK(is_unitary(id.vectors, 1e-12));

    const HermitianEig d = hermitian_eig(diag({1.0, 3.0}));
    CHECK(d.values[0] == doctest::Approx(3.0));
    CHECK(d.values[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ComplexMatrix m = cren::testing::random_hermitian(4, seed);
        const HermitianEig e = hermitian_eig(m);
        const ComplexMatrix rebuilt = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
        CHECK(max_abs(rebuilt - m) <= 1e-10 * std::max(1.0, max_abs(m)));
        CHECK(is_unitary(e.vectors, 1e-10));
        for (Eigen::Index i = 1; i < e.values.size(); ++i) CHECK(e.values[i - 1] >= e.values[i]);
    }
}

TEST_CASE("hermitian_eig rejects bad input") {
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), Error);
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    try {
        hermitian_eig(m);
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }
}

TEST_CASE("trace_norm") {
    CHECK(trace_norm(diag({1.0, -1.0})) == doctest::Approx(2.0));
    CHECK(trace_norm(random_density({2, 3}, 4, 11).matrix()) == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexMatrix phi = maximally_entangled(2).projector();
    CHECK(trace_norm(partial_transpose(phi, {2, 2})) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(trace_norm(ComplexMatrix::Zero(2, 3)), Error);
    // Dominates |tr M|.
    const ComplexMatrix h = cren::testing::random_hermitian(5, 3);
    CHECK(trace_norm(h) >= std::abs(h.trace()));
}

TEST_CASE("matrix_sqrt_psd") {
    const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    CHECK(max_abs(matrix_sqrt_psd(half) - ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)) < 1e-14);
    CHECK(max_abs(matrix_sqrt_psd(diag({4.0, 1.0})) - diag({2.0, 1.0})) < 1e-14);
    const ComplexMatrix proj = random_pure({2, 2}, 5).projector();
    CHECK(max_abs(matrix_sqrt_psd(proj) - proj) < 1e-8);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ComplexMatrix rho = random_density({3, 3}, 1 + seed % 9, seed).matrix();
        const ComplexMatrix root = matrix_sqrt_psd(rho);
        CHECK(max_abs(root * root - rho) <= 1e-8);
        CHECK(hermiticity_defect(root) <= 1e-12);
    }

    // Slightly negative eigenvalues within the clamp are zeroed.
    CHECK_NOTHROW(matrix_sqrt_psd(diag({1.0, -5e-10})));
    try {
        matrix_sqrt_psd(diag({1.5, -0.5}));
        FAIL("expected NegativeEigenvalue");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NegativeEigenvalue);
    }
}

TEST_CASE("partial_transpose") {
    const ComplexMatrix phi = maximally_entangled(2).projector();
    const RealVector ev = hermitian_eig(partial_transpose(phi, {2, 2})).values;
    CHECK(ev[0] == doctest::Approx(0.5));
    CHECK(ev[1] == doctest::Approx(0.5));
    CHECK(ev[2] == doctest::Approx(0.5));
    CHECK(ev[3] == doctest::Approx(-0.5));

    const ComplexMatrix ra = random_density({2, 1}, 2, 1).matrix();
    const ComplexMatrix rb = random_density({3, 1}, 3, 2).matrix();
    const ComplexMatrix product = kron(ra, rb);
    CHECK(max_abs(partial_transpose(product, {2, 3}) - kron(ra, rb.transpose())) < 1e-15);
    CHECK(trace_norm(partial_transpose(product, {2, 3})) == doctest::Approx(1.0));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexMatrix rho = random_density({2, 3}, 6, seed).matrix();
        const ComplexMatrix pt = partial_transpose(rho, {2, 3});
        CHECK(max_abs(partial_transpose(pt, {2, 3}) - rho) == 0.0);
        CHECK(pt.trace() == rho.trace());
        CHECK(hermiticity_defect(pt) <= hermiticity_defect(rho));
    }
    CHECK_THROWS_AS(partial_transpose(ComplexMatrix::Identity(4, 4), {2, 3}), Error);
}

TEST_CASE("partial_trace") {
    const ComplexMatrix phi = maximally_entangled(2).projector();
    CHECK(max_abs(partial_trace(phi, {2, 2}, Subsystem::B) - 0.5 * ComplexMatrix::Identity(2, 2)) <
          1e-15);

    const ComplexMatrix zero_zero = cren::testing::basis_state({2, 2}, 0, 0).projector();
    CHECK(max_abs(partial_trace(zero_zero, {2, 2}, Subsystem::B) - diag({1.0, 0.0})) == 0.0);

    const ComplexMatrix ra = random_density({3, 1}, 2, 8).matrix();
    const ComplexMatrix rb = random_density({2, 1}, 2, 9).matrix();
    CHECK(max_abs(partial_trace(kron(ra, rb), {3, 2}, Subsystem::B) - ra) < 1e-15);
    CHECK(max_abs(partial_trace(kron(ra, rb), {3, 2}, Subsystem::A) - rb) < 1e-15);

    const ComplexMatrix rho = random_density({3, 4}, 5, 3).matrix();
    CHECK(partial_trace(rho, {3, 4}, Subsystem::B).rows() == 3);
    CHECK(partial_trace(rho, {3, 4}, Subsystem::A).rows() == 4);
    CHECK(std::abs(partial_trace(rho, {3, 4}, Subsystem::A).trace() - rho.trace()) < 1e-14);
    CHECK_THROWS_AS(partial_trace(rho, {2, 2}, Subsystem::A), Error);
}

TEST_CASE("kron") {
    CHECK(max_abs(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) -
                  ComplexMatrix::Identity(4, 4)) == 0.0);
    CHECK(max_abs(kron(diag({1.0, 2.0}), diag({3.0, 4.0})) - diag({3.0, 4.0, 6.0, 8.0})) == 0.0);
    const ComplexMatrix u = random_unitary(3, 1);
    const ComplexMatrix v = random_unitary(2, 2);
    CHECK(is_unitary(kron(u, v), 1e-12));
    // Rectangular index convention.
    ComplexMatrix a(1, 2), b(2, 1);
    a << 1.0, 2.0;
    b << 3.0, 4.0;
    const ComplexMatrix ab = kron(a, b);
    CHECK(ab.rows() == 2);
    CHECK(ab.cols() == 2);
    CHECK(ab(1, 1) == Complex(8.0));
}

}  // TEST_SUITE
