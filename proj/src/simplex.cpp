#include "mvdyn/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mvdyn {

bool perm_is_valid(const Perm& alpha) {
    const int n = static_cast<int>(alpha.size());
    std::vector<bool> seen(n + 1, false);
    for (int v : alpha) {
        if (v < 1 || v > n || seen[v]) return false;
        seen[v] = true;
    }
    return n > 0;
}

bool perm_is_even(const Perm& alpha) {
    const int n = static_cast<int>(alpha.size());
    std::vector<bool> visited(n, false);
    int transpositions = 0;
    for (int start = 0; start < n; ++start) {
        if (visited[start]) continue;
        int len = 0;
        int cur = start;
        while (!visited[cur]) {
            visited[cur] = true;
            cur = alpha[cur] - 1;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

Perm perm_identity(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    return p;
}

Perm perm_inverse(const Perm& alpha) {
    Perm inv(alpha.size());
    for (size_t i = 0; i < alpha.size(); ++i) inv[alpha[i] - 1] = static_cast<int>(i) + 1;
    return inv;
}

Perm perm_compose(const Perm& alpha, const Perm& beta) {
    Perm out(alpha.size());
    for (size_t i = 0; i < alpha.size(); ++i) out[i] = alpha[beta[i] - 1];
    return out;
}

Matrix perm_matrix(const Perm& alpha) {
    const int n = static_cast<int>(alpha.size());
    Matrix u(n, n);
    for (int i = 0; i < n; ++i) u(alpha[i] - 1, i) = 1.0;
    return u;
}

std::vector<Perm> all_perms(int n) {
    std::vector<Perm> out;
    Perm p = perm_identity(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Perm> canonical_order(int n) {
    std::vector<Perm> out;
    for (const Perm& p : all_perms(n))
        if (perm_is_even(p)) out.push_back(p);
    for (const Perm& p : all_perms(n))
        if (!perm_is_even(p)) out.push_back(p);
    return out;
}

int canonical_rank(const Perm& alpha) {
    auto order = canonical_order(static_cast<int>(alpha.size()));
    for (size_t k = 0; k < order.size(); ++k)
        if (order[k] == alpha) return static_cast<int>(k);
    return -1;
}

namespace {

std::vector<std::vector<int>> cycles_of(const Perm& alpha) {
    const int n = static_cast<int>(alpha.size());
    std::vector<std::vector<int>> cycles;
    std::vector<bool> visited(n, false);
    for (int start = 0; start < n; ++start) {
        if (visited[start]) continue;
        std::vector<int> cycle;
        int cur = start;
        while (!visited[cur]) {
            visited[cur] = true;
            cycle.push_back(cur);
            cur = alpha[cur] - 1;
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

// arguments of the cycle-shift eigenvalues, alternation handled by caller
// for the -1 slot (index len/2 when len is even)
double eigen_argument(int k, int len) {
    // eigenvalue exp(-2 pi i k / len) gets its principal argument
    double arg = -2.0 * std::numbers::pi * k / len;
    if (arg <= -std::numbers::pi) arg += 2.0 * std::numbers::pi;
    return arg;
}

}  // namespace

PermLog perm_log(const Perm& alpha) {
    if (!perm_is_valid(alpha)) throw std::invalid_argument("not a permutation");
    const int n = static_cast<int>(alpha.size());
    PermLog out;
    out.alpha = alpha;
    out.U = perm_matrix(alpha);
    out.A = Matrix(n, n);

    int even_cycle_count = 0;
    for (const auto& cycle : cycles_of(alpha)) {  // discovered in least-element order
        const int len = static_cast<int>(cycle.size());
        if (len == 1) continue;  // fixed point, zero block
        double minus_one_arg = 0.0;
        if (len % 2 == 0) {
            minus_one_arg = even_cycle_count % 2 == 0 ? std::numbers::pi : -std::numbers::pi;
            ++even_cycle_count;
        }
        for (int k = 0; k < len; ++k) {
            double theta = (len % 2 == 0 && k == len / 2) ? minus_one_arg : eigen_argument(k, len);
            if (theta == 0.0) continue;
            // rank-one contribution theta * v_k v_k^*, v_k[j] = w^{jk} / sqrt(len)
            for (int j1 = 0; j1 < len; ++j1) {
                for (int j2 = 0; j2 < len; ++j2) {
                    double phase = 2.0 * std::numbers::pi * k * (j1 - j2) / len;
                    out.A(cycle[j1], cycle[j2]) +=
                        theta / len * cplx(std::cos(phase), std::sin(phase));
                }
            }
        }
    }
    return out;
}

Matrix perm_log_exp(const PermLog& log, double t) {
    const int n = static_cast<int>(log.alpha.size());
    Matrix out(n, n);
    int even_cycle_count = 0;
    for (const auto& cycle : cycles_of(log.alpha)) {
        const int len = static_cast<int>(cycle.size());
        if (len == 1) {
            out(cycle[0], cycle[0]) = 1.0;
            continue;
        }
        double minus_one_arg = 0.0;
        if (len % 2 == 0) {
            minus_one_arg = even_cycle_count % 2 == 0 ? std::numbers::pi : -std::numbers::pi;
            ++even_cycle_count;
        }
        for (int k = 0; k < len; ++k) {
            double theta = (len % 2 == 0 && k == len / 2) ? minus_one_arg : eigen_argument(k, len);
            cplx scale = std::exp(cplx(0.0, t * theta));
            for (int j1 = 0; j1 < len; ++j1) {
                for (int j2 = 0; j2 < len; ++j2) {
                    double phase = 2.0 * std::numbers::pi * k * (j1 - j2) / len;
                    out(cycle[j1], cycle[j2]) +=
                        scale / static_cast<double>(len) * cplx(std::cos(phase), std::sin(phase));
                }
            }
        }
    }
    return out;
}

Matrix skeleton_path(const Perm& alpha, const Perm& beta, double t) {
    if (!perm_is_valid(alpha) || !perm_is_valid(beta) || alpha.size() != beta.size())
        throw std::invalid_argument("skeleton path needs two permutations of the same degree");
    if (canonical_rank(alpha) > canonical_rank(beta)) return skeleton_path(beta, alpha, 1.0 - t);
    if (t == 0.0) return perm_matrix(alpha);
    if (t == 1.0) return perm_matrix(beta);
    PermLog step = perm_log(perm_compose(perm_inverse(alpha), beta));
    return matmul(perm_matrix(alpha), perm_log_exp(step, t));
}

void BlockPartitionPair::validate(int n) const {
    if (A.size() != B.size()) throw std::invalid_argument("partition pair needs matched block counts");
    std::vector<bool> seen_a(n + 1, false), seen_b(n + 1, false);
    for (size_t s = 0; s < A.size(); ++s) {
        if (A[s].size() != B[s].size()) throw std::invalid_argument("block size mismatch");
        if (A[s].empty()) throw std::invalid_argument("empty block");
        for (int v : A[s]) {
            if (v < 1 || v > n || seen_a[v]) throw std::invalid_argument("A blocks do not partition");
            seen_a[v] = true;
        }
        for (int v : B[s]) {
            if (v < 1 || v > n || seen_b[v]) throw std::invalid_argument("B blocks do not partition");
            seen_b[v] = true;
        }
    }
    for (int v = 1; v <= n; ++v)
        if (!seen_a[v] || !seen_b[v]) throw std::invalid_argument("partition misses a letter");
}

std::vector<Perm> permutations_respecting(int n, const BlockPartitionPair& pp) {
    pp.validate(n);
    std::vector<Perm> out;
    for (const Perm& alpha : all_perms(n)) {
        bool ok = true;
        for (size_t s = 0; s < pp.A.size() && ok; ++s) {
            std::vector<int> image;
            for (int v : pp.A[s]) image.push_back(alpha[v - 1]);
            std::sort(image.begin(), image.end());
            std::vector<int> want = pp.B[s];
            std::sort(want.begin(), want.end());
            ok = image == want;
        }
        if (ok) out.push_back(alpha);
    }
    return out;
}

bool check_block_condition(const Matrix& u, const BlockPartitionPair& pp, int n) {
    if (u.rows() != n || u.cols() != n) throw std::invalid_argument("matrix size mismatch");
    pp.validate(n);
    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, false));
    for (size_t s = 0; s < pp.A.size(); ++s)
        for (int row : pp.B[s])
            for (int col : pp.A[s]) allowed[row - 1][col - 1] = true;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!allowed[r][c] && std::abs(u(r, c)) >= 1e-12) return false;
    return true;
}

Matrix barycentric_exp(int n, const std::map<Perm, double>& weights) {
    double total = 0.0;
    Matrix sum(n, n);
    for (const auto& [alpha, weight] : weights) {
        if (static_cast<int>(alpha.size()) != n || !perm_is_valid(alpha))
            throw std::invalid_argument("weight attached to an invalid permutation");
        if (weight < 0.0) throw std::invalid_argument("weights must be nonnegative");
        total += weight;
        Matrix scaled = perm_log(alpha).A;
        scaled *= cplx(weight);
        sum += scaled;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");
    return hermitian_exp_i(sum);
}

FaceResidual face_block_residuals(int n, const std::vector<Perm>& face, const BlockPartitionPair& pp,
                                  int samples_per_edge) {
    FaceResidual out;
    if (face.size() < 2 || samples_per_edge < 1) return out;
    // barycentric grid over the face, coarse and deterministic
    for (int a = 0; a <= samples_per_edge; ++a) {
        for (int b = 0; a + b <= samples_per_edge; ++b) {
            std::map<Perm, double> weights;
            double wa = static_cast<double>(a) / samples_per_edge;
            double wb = static_cast<double>(b) / samples_per_edge;
            weights[face[0]] = wa;
            weights[face[1]] += wb;
            if (face.size() > 2)
                weights[face[2]] += 1.0 - wa - wb;
            else
                weights[face[1]] += 1.0 - wa - wb;
            Matrix u = barycentric_exp(n, weights);
            std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, false));
            for (size_t s = 0; s < pp.A.size(); ++s)
                for (int row : pp.B[s])
                    for (int col : pp.A[s]) allowed[row - 1][col - 1] = true;
            double worst = 0.0;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    if (!allowed[r][c]) worst = std::max(worst, std::abs(u(r, c)));
            out.per_sample.push_back(worst);
            out.worst = std::max(out.worst, worst);
        }
    }
    return out;
}

}  // namespace mvdyn
