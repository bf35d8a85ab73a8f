#pragma once

#include <map>
#include <vector>

#include "mvdyn/linalg.hpp"

namespace mvdyn {

// Permutation of {1..n} in one-line form: img[i-1] = alpha(i).
using Perm = std::vector<int>;

bool perm_is_valid(const Perm& alpha);
bool perm_is_even(const Perm& alpha);
Perm perm_identity(int n);
Perm perm_inverse(const Perm& alpha);
Perm perm_compose(const Perm& alpha, const Perm& beta);  // alpha after beta
Matrix perm_matrix(const Perm& alpha);

std::vector<Perm> all_perms(int n);  // lexicographic

// Even permutations first, then odd, lexicographic within each class.
std::vector<Perm> canonical_order(int n);
int canonical_rank(const Perm& alpha);

// Hermitian logarithm built cycle by cycle: each cycle block carries the
// shift eigenvalues with arguments in (-pi, pi], and the -1 eigenvalue of
// each even-length cycle takes +pi, -pi, ... alternating over cycles ordered
// by least moved element. Satisfies exp(iA) = U, norm(A) <= pi, and trace 0
// for even permutations, pi for odd ones.
struct PermLog {
    Perm alpha;
    Matrix U;
    Matrix A;
};
PermLog perm_log(const Perm& alpha);

// exp(i t A_alpha) assembled from the analytic cycle eigenpairs.
Matrix perm_log_exp(const PermLog& log, double t);

// U_alpha exp(i t A_{alpha^{-1} beta}) with the edge oriented by the
// canonical order (swapped and reversed otherwise). Endpoints return the
// exact permutation matrices.
Matrix skeleton_path(const Perm& alpha, const Perm& beta, double t);

struct BlockPartitionPair {
    std::vector<std::vector<int>> A;  // ordered blocks partitioning {1..n}
    std::vector<std::vector<int>> B;  // matched sizes
    void validate(int n) const;
};

std::vector<Perm> permutations_respecting(int n, const BlockPartitionPair& pp);

// true when every entry outside the union of B_s x A_s has modulus < 1e-12
bool check_block_condition(const Matrix& u, const BlockPartitionPair& pp, int n);

// exp(i sum_alpha weight_alpha A_alpha); weights nonnegative summing to 1.
// The block condition is reported by callers, never guaranteed here.
Matrix barycentric_exp(int n, const std::map<Perm, double>& weights);

// Experimental: worst block-condition residual of the barycentric map over a
// sampled face of the permutation simplex. Reported for exploration only.
struct FaceResidual {
    double worst = 0.0;
    std::vector<double> per_sample;
};
FaceResidual face_block_residuals(int n, const std::vector<Perm>& face, const BlockPartitionPair& pp,
                                  int samples_per_edge);

}  // namespace mvdyn
