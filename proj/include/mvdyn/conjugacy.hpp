#pragma once

#include <optional>
#include <vector>

#include "mvdyn/core.hpp"

namespace mvdyn {

// Labelled-map-forgetting multigraph: count[x][y] = number of maps sending x
// to y. Row sums equal n.
struct MultiGraph {
    int m = 0;
    std::vector<std::vector<int>> count;
};

MultiGraph forgetful_multigraph(const MultiSystem& sys);

// gamma is an index bijection X -> Y, alpha[x] is the permutation of map
// indices at x (1-based one-line form): tau_i(gamma(x)) = gamma(sigma_{alpha[x][i-1]}(x)).
struct PCWitness {
    std::vector<int> gamma;
    std::vector<std::vector<int>> alpha;
};

// Single global permutation: tau_i(gamma(x)) = gamma(sigma_{alpha[i-1]}(x)).
struct ConjugacyWitness {
    std::vector<int> gamma;
    std::vector<int> alpha;
};

bool check_pc_witness(const MultiSystem& a, const MultiSystem& b, const PCWitness& w);
bool check_conjugacy_witness(const MultiSystem& a, const MultiSystem& b, const ConjugacyWitness& w);

// Deterministic search: lexicographically least gamma, then least alpha per
// point. Returns nothing when the systems are not piecewise conjugate.
std::optional<PCWitness> are_piecewise_conjugate(const MultiSystem& a, const MultiSystem& b);

std::optional<ConjugacyWitness> are_conjugate(const MultiSystem& a, const MultiSystem& b);

}  // namespace mvdyn
