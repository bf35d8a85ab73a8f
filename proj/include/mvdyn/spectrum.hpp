#pragma once

#include <functional>
#include <vector>

#include "mvdyn/core.hpp"

namespace mvdyn {

// Which unit-ball constraint the character vector z satisfies: l2 for the
// row-contractive model, sup for the separately contractive one.
enum class BallModel { Tensor, Semicrossed };

struct Character {
    int x = 0;
    std::vector<cplx> z;  // one entry per map; zero off the fixed-letter set
    BallModel model = BallModel::Tensor;
};

void validate_character(const MultiSystem& sys, const Character& chi);

cplx eval_character(const MultiSystem& sys, const Polynomial& a, const Character& chi);

struct CharacterFiber {
    int x = 0;
    std::vector<int> fixed_letters;  // I_x
    int dim = 0;
    BallModel model = BallModel::Tensor;
    std::string shape;  // "ball" or "polydisc"
};
CharacterFiber character_fiber(const MultiSystem& sys, int x, BallModel model);

// Two-dimensional upper-triangular evaluation keyed to the edge x -> map_i(x):
// a polynomial maps to [[a_e(map_i(x)), a_i(x) z], [0, a_e(x)]].
struct NestRep {
    int x = 0;
    int letter = 1;
    cplx z = 1.0;
    BallModel model = BallModel::Tensor;
};
void validate_nest_rep(const MultiSystem& sys, const NestRep& rho);
Matrix nest_eval(const MultiSystem& sys, const NestRep& rho, const Polynomial& a);

// The several-parameter family over every map sending x to the same image y:
// the corner entry becomes the z-weighted sum of those coefficients. z must
// vanish on letters with a different image and fit the model ball.
struct MultiNestRep {
    int x = 0;
    int y = 0;
    std::vector<cplx> z;
    BallModel model = BallModel::Tensor;
};
void validate_multi_nest_rep(const MultiSystem& sys, const MultiNestRep& rho);
Matrix nest_eval(const MultiSystem& sys, const MultiNestRep& rho, const Polynomial& a);

// Conjugation by [[1, F],[0, 1]] with F read off the separating function;
// diagonalizes the function action when the two diagonal base points differ.
struct NestDiagonalization {
    bool applicable = false;  // false when the base points coincide
    Matrix transform;
};
NestDiagonalization diagonalize_nest(const std::function<Matrix(const CoeffFn&)>& rho, int y, int x,
                                     const CoeffFn& separating);

}  // namespace mvdyn
