#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mvdyn/linalg.hpp"

using namespace mvdyn;

TEST_SUITE("linalg") {
    TEST_CASE("parallel matmul matches the serial reference bitwise") {
        SplitMix64 rng(101);
        for (int trial = 0; trial < 4; ++trial) {
            int rows = 3 + static_cast<int>(rng.below(40));
            int inner = 3 + static_cast<int>(rng.below(40));
            int cols = 3 + static_cast<int>(rng.below(40));
            Matrix a(rows, inner), b(inner, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < inner; ++j) a(i, j) = gaussian_cplx(rng);
            for (int i = 0; i < inner; ++i)
                for (int j = 0; j < cols; ++j) b(i, j) = gaussian_cplx(rng);
            CHECK(matmul(a, b) == matmul_serial(a, b));
        }
    }

    TEST_CASE("gram_sparse equals the dense adjoint product") {
        SplitMix64 rng(102);
        Matrix a(17, 9), b(17, 12);
        for (int i = 0; i < 17; ++i) {
            for (int j = 0; j < 9; ++j)
                if (rng.uniform() < 0.4) a(i, j) = gaussian_cplx(rng);
            for (int j = 0; j < 12; ++j)
                if (rng.uniform() < 0.4) b(i, j) = gaussian_cplx(rng);
        }
        CHECK(max_abs(gram_sparse(a, b) - matmul_serial(adjoint(a), b)) < 1e-13);
    }

    TEST_CASE("hermitian eigendecomposition reconstructs and is orthonormal") {
        SplitMix64 rng(103);
        const int n = 24;
        Matrix h(n, n);
        for (int i = 0; i < n; ++i) {
            h(i, i) = gaussian_pair(rng).first;
            for (int j = i + 1; j < n; ++j) {
                h(i, j) = gaussian_cplx(rng);
                h(j, i) = std::conj(h(i, j));
            }
        }
        HermEig eig = eig_hermitian(h);
        Matrix lambda(n, n);
        for (int i = 0; i < n; ++i) lambda(i, i) = eig.values[i];
        CHECK(max_abs(matmul(matmul(eig.vectors, lambda), adjoint(eig.vectors)) - h) < 1e-11);
        CHECK(max_abs(gram_sparse(eig.vectors, eig.vectors) - Matrix::identity(n)) < 1e-12);
        for (int i = 0; i + 1 < n; ++i) CHECK(eig.values[i] <= eig.values[i + 1]);
    }

    TEST_CASE("hermitian_sqrt squares back and rejects indefinite input") {
        SplitMix64 rng(104);
        Matrix g(8, 12);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 12; ++j) g(i, j) = gaussian_cplx(rng);
        Matrix psd = gram_sparse(adjoint(g), adjoint(g));  // g g^*
        Matrix root = hermitian_sqrt(psd);
        CHECK(max_abs(matmul(root, root) - psd) < 1e-9);

        Matrix indef = Matrix::identity(3);
        indef(2, 2) = -1.0;
        CHECK_THROWS_AS(hermitian_sqrt(indef), std::runtime_error);
    }

    TEST_CASE("hermitian_exp_i of zero is the identity, diagonal case exact") {
        Matrix zero(5, 5);
        CHECK(max_abs(hermitian_exp_i(zero) - Matrix::identity(5)) < 1e-14);
        Matrix d(2, 2);
        d(0, 0) = 1.0;
        d(1, 1) = -2.0;
        Matrix e = hermitian_exp_i(d, 0.5);
        CHECK(std::abs(e(0, 0) - std::exp(cplx(0.0, 0.5))) < 1e-14);
        CHECK(std::abs(e(1, 1) - std::exp(cplx(0.0, -1.0))) < 1e-14);
        CHECK(std::abs(e(0, 1)) < 1e-14);
    }

    TEST_CASE("operator norm: diagonal, unitary, and a 2x2 with known values") {
        Matrix d(3, 3);
        d(0, 0) = 0.5;
        d(1, 1) = 2.0;  // powers of two stay exact through the Gram square
        d(2, 2) = 1.0;
        CHECK(operator_norm(d) == 2.0);

        Matrix u(2, 2);
        u(0, 0) = u(1, 1) = std::sqrt(0.5);
        u(0, 1) = std::sqrt(0.5);
        u(1, 0) = -std::sqrt(0.5);
        CHECK(operator_norm(u) == doctest::Approx(1.0).epsilon(1e-12));

        Matrix m(2, 2);  // symmetric, eigenvalues 3 and 1
        m(0, 0) = 2.0;
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        m(1, 1) = 2.0;
        CHECK(operator_norm(m) == doctest::Approx(3.0).epsilon(1e-12));
    }

    TEST_CASE("operator norm of a wide matrix uses the smaller Gram side") {
        Matrix wide(1, 4);
        for (int j = 0; j < 4; ++j) wide(0, j) = 1.0;
        CHECK(operator_norm(wide) == doctest::Approx(2.0).epsilon(1e-12));
    }

    TEST_CASE("power-iteration path agrees with the dense path") {
        SplitMix64 rng(105);
        for (int trial = 0; trial < 5; ++trial) {
            // random unitaries around a controlled singular spectrum keep the
            // leading gap away from 1, where pure power iteration stalls
            const int n = 8;
            Matrix h(n, n);
            for (int i = 0; i < n; ++i) {
                h(i, i) = gaussian_pair(rng).first;
                for (int j = i + 1; j < n; ++j) {
                    h(i, j) = gaussian_cplx(rng);
                    h(j, i) = std::conj(h(i, j));
                }
            }
            Matrix u = eig_hermitian(h).vectors;
            Matrix scaled = u;
            for (int j = 0; j < n; ++j) {
                double s = 2.0 * std::pow(0.7, j);
                for (int i = 0; i < n; ++i) scaled(i, j) *= s;
            }
            Matrix m = matmul(scaled, adjoint(u));
            CHECK(operator_norm_power(m) == doctest::Approx(operator_norm(m)).epsilon(1e-10));
            CHECK(operator_norm_power(m) == doctest::Approx(2.0).epsilon(1e-10));
        }
        CHECK(operator_norm_power(Matrix(3, 3)) == 0.0);
    }

    TEST_CASE("determinant of permutation and triangular matrices") {
        Matrix p(3, 3);
        p(1, 0) = 1.0;
        p(2, 1) = 1.0;
        p(0, 2) = 1.0;  // 3-cycle, even
        CHECK(std::abs(det(p) - cplx(1.0)) < 1e-14);
        Matrix t(2, 2);
        t(0, 0) = 2.0;
        t(0, 1) = 5.0;
        t(1, 1) = cplx(0.0, 3.0);
        CHECK(std::abs(det(t) - cplx(0.0, 6.0)) < 1e-13);
    }

    TEST_CASE("splitmix64 stream matches the reference values") {
        SplitMix64 rng(1234567);
        CHECK(rng.next() == 0x599ed017fb08fc85ull);
        CHECK(rng.next() == 0x2c73f08458540fa5ull);
        CHECK(rng.next() == 0x883ebce5a3f27c77ull);
    }

    TEST_CASE("gaussian pairs are deterministic and finite") {
        SplitMix64 a(9), b(9);
        for (int k = 0; k < 100; ++k) {
            auto [x1, y1] = gaussian_pair(a);
            auto [x2, y2] = gaussian_pair(b);
            CHECK(x1 == x2);
            CHECK(y1 == y2);
            CHECK(std::isfinite(x1));
            CHECK(std::isfinite(y1));
        }
    }
}
