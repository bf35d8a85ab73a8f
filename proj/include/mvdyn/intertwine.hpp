#pragma once

#include <optional>
#include <vector>

#include "mvdyn/conjugacy.hpp"
#include "mvdyn/core.hpp"
#include "mvdyn/fock.hpp"

namespace mvdyn {

// A unitary matrix attached to each point. When a target system is present,
// a nonzero (i,j) entry at x asserts that target map i and source map j agree
// at x (the germ-support constraint that licenses the covariance swap).
struct UnitaryField {
    std::vector<Matrix> v;                // per point, n x n
    std::optional<MultiSystem> target;    // the system the intertwiners represent
};

void validate_field(const MultiSystem& sys, const UnitaryField& field);

// relabel the second system through gamma so both act on the same indices
MultiSystem pullback(const MultiSystem& target, const std::vector<int>& gamma);

// Permutation field of a piecewise-conjugacy witness: v(x) sends i to alpha_x(i).
UnitaryField field_from_assignment(const MultiSystem& source, const MultiSystem& target,
                                   const PCWitness& witness);

struct IntertwinerReport {
    double row_isometry_residual = 0.0;  // on the interior projection
    double covariance_residual = 0.0;    // against the target maps; 0 when no target
    double recovery_error = 0.0;         // generator reconstruction defect
};

// T_i = sum_j L_j pi(v_ij) built from explicit generator matrices.
std::vector<Matrix> intertwiners_from(const std::vector<Matrix>& generators, const FockRep& rep,
                                      const UnitaryField& field);

std::vector<Matrix> intertwiners(const MultiSystem& sys, const UnitaryField& field,
                                 const FockRep& rep, IntertwinerReport* report = nullptr);

// n = 2 rotation construction: h is 0 on X1, pi/2 on X2, pi/4 elsewhere, and
// the field mixes the two creation operators by the corresponding rotation.
std::pair<Matrix, Matrix> rotation_intertwiner_n2(const MultiSystem& sys, const std::vector<int>& x1,
                                                  const std::vector<int>& x2, const FockRep& rep);

}  // namespace mvdyn
