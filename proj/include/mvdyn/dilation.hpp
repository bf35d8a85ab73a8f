#pragma once

#include <cstdint>
#include <vector>

#include "mvdyn/core.hpp"
#include "mvdyn/fock.hpp"

namespace mvdyn {

enum class PairMode { Row, Separate };

// A point-diagonal representation on H = direct sum of per-point fibers,
// together with operator blocks A_i supported on the (map_i(x), x) fiber
// pairs. Mode records which contractivity bound the blocks satisfy.
struct CovariantPair {
    MultiSystem sys;
    std::vector<int> dims;    // fiber dimension per point
    std::vector<int> offset;  // fiber start per point
    PairMode mode = PairMode::Row;
    std::vector<Matrix> A;    // n matrices, h_dim x h_dim

    int h_dim = 0;
    void validate() const;  // shape + block support
};

// Blocks drawn from a SplitMix64 stream (map-major, then point, then row-major
// within the block; each entry one Gaussian polar pair), scaled to norm 0.9:
// the whole row in Row mode, each block in Separate mode.
CovariantPair random_covariant_pair(const MultiSystem& sys, const std::vector<int>& dims,
                                    uint64_t seed, PairMode mode);

Matrix row_matrix(const CovariantPair& pair);  // [A_1 ... A_n]
double row_norm(const CovariantPair& pair);

// A truncated covariant representation with a point-diagonal function action.
// Basis vectors carry a point label and an integer grade; enlargement rounds
// adjoin preimage layers at negative grades. The measured window is the set
// of grades in [0, depth); isometry and coverage claims are made there only.
struct CovariantRep {
    MultiSystem sys;
    std::vector<Matrix> S;
    std::vector<int> labels;
    std::vector<int> grades;
    int depth = 0;
    int h_dim = 0;  // size of the embedded grade-0 space H (pair order)

    int dim() const { return static_cast<int>(labels.size()); }
    Matrix diag_fn(const CoeffFn& f) const;
    Matrix window_projector() const;  // onto grades in [0, depth)
};

CovariantRep as_covariant(const FockRep& rep);

// Row-isometric dilation on H tensor the truncated Fock space: the Schaeffer
// block form with defect D = sqrt(I - A*A) feeding the first Fock layer.
// Requires Row mode and row norm <= 1.
CovariantRep fbp_row_dilation(const CovariantPair& pair, int depth);

// One isometric dilation per map with defects sqrt(I - A_i* A_i); requires
// Separate mode and each block norm <= 1.
CovariantRep separate_isometric_dilation(const CovariantPair& pair, int depth);

// || sum_i S_i S_i* - E(union of ranges) || on the window.
struct MaximalityReport {
    bool is_maximal_interior = false;
    double residual = 0.0;
};
MaximalityReport maximality_check(const CovariantRep& rep);
MaximalityReport maximality_check(const FockRep& rep);

// max_i || S_i S_i* - E(range_i) || on the window.
double fullness_residual(const CovariantRep& rep);

// max over maps and supplied functions of the covariance defect norm.
double covariance_residual(const CovariantRep& rep, const std::vector<CoeffFn>& fs);

// || (S_j* S_i - delta_ij I) P_window || maximised over pairs.
double interior_row_isometry_residual(const CovariantRep& rep);

// max_i || (S_i* S_i - I) P_window ||.
double separate_isometry_residual(const CovariantRep& rep);

struct EnlargeResult {
    CovariantRep rep;
    bool changed = false;
    double residual_before = 0.0;
    double residual_after = 0.0;
};

// One enlargement round: adjoin the uncovered window vectors with labels in
// range(map_i0) (least such i0) as a new grade-(-1) layer reached by map_i0
// from their least-index preimages, then re-dilate if the row stopped being
// isometric on the window. No-op when already maximal on the window.
EnlargeResult maximal_dilation_step(const CovariantRep& rep);

// One recursion round toward fullness: for every map, adjoin the part of the
// window that the range projection covers but S_i S_i* misses.
EnlargeResult full_dilation_round(const CovariantRep& rep);

}  // namespace mvdyn
