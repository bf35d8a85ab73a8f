#pragma once

#include <optional>
#include <vector>

#include "mvdyn/core.hpp"

namespace mvdyn {

// Witness that U admits no return: no point of U comes back to U along any
// composite map_u o map_w o map_v.
struct WanderingCert {
    std::vector<int> U;  // nonempty, sorted point set
    Word u;
    Word v;
};

struct StructuralProof {
    std::vector<bool> surjective;        // all true when the proof applies
    std::vector<std::vector<int>> sccs;  // SCC partition of the union graph
    int condensation_edges = 0;
};

struct SemisimpleVerdict {
    bool semisimple = false;
    std::optional<WanderingCert> certificate;  // populated when not semisimple
    std::optional<StructuralProof> proof;      // populated when semisimple
};

// reachability closure of x under all maps (walks of every length, incl. 0)
std::vector<int> reach_set(const MultiSystem& sys, int x);

bool is_wandering(const MultiSystem& sys, const std::vector<int>& U, const Word& u, const Word& v);

bool is_recurrent(const MultiSystem& sys, int x, const Word& u, const Word& v);

std::optional<WanderingCert> find_wandering(const MultiSystem& sys);

// The condensation-based branch of the search on its own: a singleton whose
// walk word leaves its component permanently, least point and least word.
std::optional<WanderingCert> scc_wandering_certificate(const MultiSystem& sys);

SemisimpleVerdict is_semisimple(const MultiSystem& sys);

// N = s_v h s_u with h the indicator of the certificate set.
struct NilpotentElement {
    Word v;
    CoeffFn h;
    Word u;
    Polynomial as_polynomial(const MultiSystem& sys) const;
};
NilpotentElement nilpotent_element(const MultiSystem& sys, const WanderingCert& cert);

// Tarjan components of the union graph x -> map_i(x), in a deterministic
// order; scc_id[x] indexes into the partition.
struct SccInfo {
    std::vector<std::vector<int>> components;
    std::vector<int> scc_id;
    int condensation_edges = 0;
};
SccInfo strongly_connected_components(const MultiSystem& sys);

}  // namespace mvdyn
