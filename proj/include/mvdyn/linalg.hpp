#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace mvdyn {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(cplx scale);

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(cplx scale, Matrix m);

// Parallel kernel (OpenMP over output rows) and the serial reference it is
// tested against. Each output entry is a sequential sum over k, so the two
// agree bitwise for any thread count.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_serial(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);

Matrix adjoint(const Matrix& m);

// adjoint(a) * b computed through the nonzero structure of the columns;
// much faster than a dense product when a, b are shift-like.
Matrix gram_sparse(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& m);
double frobenius_norm(const Matrix& m);

// Determinant by partial-pivot elimination (small matrices).
cplx det(Matrix m);

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// values are ascending; a == vectors * diag(values) * adjoint(vectors).
struct HermEig {
    std::vector<double> values;
    Matrix vectors;
};
HermEig eig_hermitian(Matrix a);

// PSD square root via eigendecomposition. Eigenvalues in [-neg_tol, 0) are
// clamped to zero; anything below -neg_tol throws (the input was not PSD).
Matrix hermitian_sqrt(const Matrix& a, double neg_tol = 1e-13);

// exp(i*t*a) for Hermitian a.
Matrix hermitian_exp_i(const Matrix& a, double t = 1.0);

// Largest singular value. Dense eigensolve of the Gram matrix up to
// dimension 2000, power iteration (1e-12 relative tolerance, 10*dim cap)
// above that.
double operator_norm(const Matrix& m);

// the large-dimension path on its own
double operator_norm_power(const Matrix& m);

// Deterministic 64-bit mixing generator used for every pseudo-random
// fixture in the project.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, bound)
    uint64_t below(uint64_t bound) { return next() % bound; }
};

// Pair of independent standard Gaussians by the Marsaglia polar method.
std::pair<double, double> gaussian_pair(SplitMix64& rng);

// Gaussian complex entry: real and imaginary parts are one polar-method pair.
cplx gaussian_cplx(SplitMix64& rng);

}  // namespace mvdyn
