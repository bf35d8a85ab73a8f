#include "mvdyn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mvdyn {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix shape mismatch in +=");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix shape mismatch in -=");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(cplx scale) {
    for (auto& v : a_) v *= scale;
    return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(cplx scale, Matrix m) { return m *= scale; }

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in matmul");
    Matrix c(a.rows(), b.cols());
    const int n = a.rows(), k = a.cols(), m = b.cols();
    for (int i = 0; i < n; ++i) {
        for (int p = 0; p < k; ++p) {
            const cplx aip = a(i, p);
            if (aip == cplx(0.0)) continue;
            const cplx* brow = b.data() + static_cast<size_t>(p) * m;
            cplx* crow = c.data() + static_cast<size_t>(i) * m;
            for (int j = 0; j < m; ++j) crow[j] += aip * brow[j];
        }
    }
    return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in matmul");
    Matrix c(a.rows(), b.cols());
    const int n = a.rows(), k = a.cols(), m = b.cols();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int p = 0; p < k; ++p) {
            const cplx aip = a(i, p);
            if (aip == cplx(0.0)) continue;
            const cplx* brow = b.data() + static_cast<size_t>(p) * m;
            cplx* crow = c.data() + static_cast<size_t>(i) * m;
            for (int j = 0; j < m; ++j) crow[j] += aip * brow[j];
        }
    }
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix adjoint(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = std::conj(m(i, j));
    return t;
}

namespace {

// column -> list of (row, value) for the nonzero entries
std::vector<std::vector<std::pair<int, cplx>>> sparse_columns(const Matrix& m) {
    std::vector<std::vector<std::pair<int, cplx>>> cols(m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != cplx(0.0)) cols[j].emplace_back(i, m(i, j));
    return cols;
}

}  // namespace

Matrix gram_sparse(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("matrix shape mismatch in gram_sparse");
    auto ca = sparse_columns(a);
    auto cb = sparse_columns(b);
    Matrix g(a.cols(), b.cols());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.cols(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            cplx sum = 0.0;
            if (ca[i].size() <= cb[j].size()) {
                for (const auto& [row, val] : ca[i]) sum += std::conj(val) * b(row, j);
            } else {
                for (const auto& [row, val] : cb[j]) sum += std::conj(a(row, i)) * val;
            }
            g(i, j) = sum;
        }
    }
    return g;
}

double max_abs(const Matrix& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
    return best;
}

double frobenius_norm(const Matrix& m) {
    double sum = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) sum += std::norm(m(i, j));
    return std::sqrt(sum);
}

cplx det(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    const int n = m.rows();
    cplx result = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
        if (std::abs(m(pivot, col)) == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = col; j < n; ++j) std::swap(m(pivot, j), m(col, j));
            result = -result;
        }
        result *= m(col, col);
        for (int r = col + 1; r < n; ++r) {
            cplx factor = m(r, col) / m(col, col);
            for (int j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
        }
    }
    return result;
}

HermEig eig_hermitian(Matrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eig_hermitian expects a square matrix");
    const int n = a.rows();
    HermEig out;
    out.vectors = Matrix::identity(n);
    if (n == 0) return out;

    // enforce exact Hermitian symmetry before sweeping
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }

    double scale = frobenius_norm(a);
    if (scale == 0.0) {
        out.values.assign(n, 0.0);
        return out;
    }
    const double tol = 1e-15 * scale;  // scale-relative, so tiny matrices still rotate
    Matrix& v = out.vectors;

    for (int sweep = 0; sweep < 80; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= tol) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= tol / n) continue;
                const cplx phase = a(p, q) / r;  // a(p,q) = r * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // unitary G: columns (c, -s*conj(phase))... applied as
                // A <- G^H A G, V <- V G with
                // G = [[c, s], [-s*conj(phase), c*conj(phase)]]
                const cplx g21 = -s * std::conj(phase);
                const cplx g22 = c * std::conj(phase);

                for (int k = 0; k < n; ++k) {  // rows: A <- G^H A
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(g21) * aqk;
                    a(q, k) = s * apk + std::conj(g22) * aqk;
                }
                for (int k = 0; k < n; ++k) {  // columns: A <- A G
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * g21;
                    a(k, q) = akp * s + akq * g22;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * g21;
                    v(k, q) = vkp * s + vkq * g22;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return vals[x] < vals[y]; });

    out.values.resize(n);
    Matrix sorted(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = vals[order[j]];
        for (int i = 0; i < n; ++i) sorted(i, j) = v(i, order[j]);
    }
    out.vectors = std::move(sorted);
    return out;
}

Matrix hermitian_sqrt(const Matrix& a, double neg_tol) {
    HermEig eig = eig_hermitian(a);
    const int n = a.rows();
    for (double& lam : eig.values) {
        if (lam < -neg_tol) throw std::runtime_error("hermitian_sqrt: matrix is not PSD");
        lam = lam < 0.0 ? 0.0 : std::sqrt(lam);
    }
    Matrix scaled = eig.vectors;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) scaled(i, j) *= eig.values[j];
    return matmul(scaled, adjoint(eig.vectors));
}

Matrix hermitian_exp_i(const Matrix& a, double t) {
    HermEig eig = eig_hermitian(a);
    const int n = a.rows();
    Matrix scaled = eig.vectors;
    for (int j = 0; j < n; ++j) {
        cplx phase = std::exp(cplx(0.0, t * eig.values[j]));
        for (int i = 0; i < n; ++i) scaled(i, j) *= phase;
    }
    return matmul(scaled, adjoint(eig.vectors));
}

namespace {

double power_iteration_norm(const Matrix& m) {
    const int dim = m.cols();
    Matrix mh = adjoint(m);
    std::vector<cplx> x(dim);
    for (int i = 0; i < dim; ++i) x[i] = 1.0 + 1.0 / (i + 2.0);
    auto normalize = [](std::vector<cplx>& vec) {
        double s = 0.0;
        for (const auto& v : vec) s += std::norm(v);
        s = std::sqrt(s);
        if (s > 0.0)
            for (auto& v : vec) v /= s;
        return s;
    };
    normalize(x);

    auto apply = [&](const Matrix& mat, const std::vector<cplx>& in, std::vector<cplx>& work) {
        work.assign(mat.rows(), cplx(0.0));
#pragma omp parallel for schedule(static)
        for (int i = 0; i < mat.rows(); ++i) {
            cplx sum = 0.0;
            const cplx* row = mat.data() + static_cast<size_t>(i) * mat.cols();
            for (int j = 0; j < mat.cols(); ++j) sum += row[j] * in[j];
            work[i] = sum;
        }
    };

    // iterate the Gram operator; stop on the eigen-residual of the Rayleigh
    // quotient, which certifies the estimate even when consecutive steps
    // change slowly
    double lambda = 0.0;
    std::vector<cplx> y, z;
    const int cap = 10 * dim;
    for (int iter = 0; iter < cap; ++iter) {
        apply(m, x, y);
        apply(mh, y, z);  // z = (m^H m) x
        cplx rayleigh = 0.0;
        for (int i = 0; i < dim; ++i) rayleigh += std::conj(x[i]) * z[i];
        lambda = rayleigh.real();
        double residual = 0.0;
        for (int i = 0; i < dim; ++i) residual += std::norm(z[i] - lambda * x[i]);
        residual = std::sqrt(residual);
        if (normalize(z) == 0.0) return 0.0;
        x.swap(z);
        if (residual <= 1e-12 * std::max(lambda, 1e-300)) break;
    }
    return std::sqrt(std::max(0.0, lambda));
}

}  // namespace

double operator_norm_power(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return power_iteration_norm(m);
}

double operator_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    const int dim = std::min(m.rows(), m.cols());
    if (std::max(m.rows(), m.cols()) > 2000) return power_iteration_norm(m);
    // Gram matrix on the smaller side
    Matrix g = (m.cols() <= m.rows()) ? gram_sparse(m, m) : gram_sparse(adjoint(m), adjoint(m));
    HermEig eig = eig_hermitian(std::move(g));
    double lam = eig.values.empty() ? 0.0 : eig.values[dim - 1];
    return std::sqrt(std::max(0.0, lam));
}

std::pair<double, double> gaussian_pair(SplitMix64& rng) {
    while (true) {
        double u = 2.0 * rng.uniform() - 1.0;
        double v = 2.0 * rng.uniform() - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            double f = std::sqrt(-2.0 * std::log(s) / s);
            return {u * f, v * f};
        }
    }
}

cplx gaussian_cplx(SplitMix64& rng) {
    auto [re, im] = gaussian_pair(rng);
    return {re, im};
}

}  // namespace mvdyn
