#include "mvdyn/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace mvdyn {

void validate_character(const MultiSystem& sys, const Character& chi) {
    if (chi.x < 0 || chi.x >= sys.m) throw std::invalid_argument("character base point out of range");
    if (static_cast<int>(chi.z.size()) != sys.n)
        throw std::invalid_argument("character needs one coordinate per map");
    double l2 = 0.0, sup = 0.0;
    for (int i = 1; i <= sys.n; ++i) {
        if (sys.apply(i, chi.x) != chi.x && chi.z[i - 1] != cplx(0.0))
            throw std::invalid_argument("character coordinate nonzero off the fixed-letter set");
        l2 += std::norm(chi.z[i - 1]);
        sup = std::max(sup, std::abs(chi.z[i - 1]));
    }
    if (chi.model == BallModel::Tensor && std::sqrt(l2) > 1.0 + 1e-12)
        throw std::invalid_argument("character exceeds the unit ball");
    if (chi.model == BallModel::Semicrossed && sup > 1.0 + 1e-12)
        throw std::invalid_argument("character exceeds the unit polydisc");
}

cplx eval_character(const MultiSystem& sys, const Polynomial& a, const Character& chi) {
    validate_character(sys, chi);
    cplx out = 0.0;
    for (const auto& [w, f] : a.terms) {
        cplx factor = 1.0;
        for (int letter : w.letters) {
            factor *= chi.z[letter - 1];
            if (factor == cplx(0.0)) break;
        }
        out += f[chi.x] * factor;
    }
    return out;
}

CharacterFiber character_fiber(const MultiSystem& sys, int x, BallModel model) {
    if (x < 0 || x >= sys.m) throw std::invalid_argument("point index out of range");
    CharacterFiber fiber;
    fiber.x = x;
    fiber.model = model;
    for (int i = 1; i <= sys.n; ++i)
        if (sys.apply(i, x) == x) fiber.fixed_letters.push_back(i);
    fiber.dim = static_cast<int>(fiber.fixed_letters.size());
    fiber.shape = model == BallModel::Tensor ? "ball" : "polydisc";
    return fiber;
}

void validate_nest_rep(const MultiSystem& sys, const NestRep& rho) {
    if (rho.x < 0 || rho.x >= sys.m) throw std::invalid_argument("point index out of range");
    if (rho.letter < 1 || rho.letter > sys.n) throw std::invalid_argument("letter out of range");
    if (std::abs(rho.z) > 1.0 + 1e-12) throw std::invalid_argument("nest parameter exceeds the disc");
}

Matrix nest_eval(const MultiSystem& sys, const NestRep& rho, const Polynomial& a) {
    validate_nest_rep(sys, rho);
    const int y = sys.apply(rho.letter, rho.x);
    Matrix out(2, 2);
    auto constant = a.terms.find(Word{});
    if (constant != a.terms.end()) {
        out(0, 0) = constant->second[y];
        out(1, 1) = constant->second[rho.x];
    }
    auto edge = a.terms.find(Word{{rho.letter}});
    if (edge != a.terms.end()) out(0, 1) = edge->second[rho.x] * rho.z;
    return out;
}

void validate_multi_nest_rep(const MultiSystem& sys, const MultiNestRep& rho) {
    if (rho.x < 0 || rho.x >= sys.m || rho.y < 0 || rho.y >= sys.m)
        throw std::invalid_argument("point index out of range");
    if (static_cast<int>(rho.z.size()) != sys.n)
        throw std::invalid_argument("one parameter per map required");
    double l2 = 0.0, sup = 0.0;
    for (int i = 1; i <= sys.n; ++i) {
        if (sys.apply(i, rho.x) != rho.y && rho.z[i - 1] != cplx(0.0))
            throw std::invalid_argument("parameter nonzero on a map with a different image");
        l2 += std::norm(rho.z[i - 1]);
        sup = std::max(sup, std::abs(rho.z[i - 1]));
    }
    if (rho.model == BallModel::Tensor && std::sqrt(l2) > 1.0 + 1e-12)
        throw std::invalid_argument("parameters exceed the unit ball");
    if (rho.model == BallModel::Semicrossed && sup > 1.0 + 1e-12)
        throw std::invalid_argument("parameters exceed the unit polydisc");
}

Matrix nest_eval(const MultiSystem& sys, const MultiNestRep& rho, const Polynomial& a) {
    validate_multi_nest_rep(sys, rho);
    Matrix out(2, 2);
    auto constant = a.terms.find(Word{});
    if (constant != a.terms.end()) {
        out(0, 0) = constant->second[rho.y];
        out(1, 1) = constant->second[rho.x];
    }
    for (int i = 1; i <= sys.n; ++i) {
        if (rho.z[i - 1] == cplx(0.0)) continue;
        auto edge = a.terms.find(Word{{i}});
        if (edge != a.terms.end()) out(0, 1) += edge->second[rho.x] * rho.z[i - 1];
    }
    return out;
}

NestDiagonalization diagonalize_nest(const std::function<Matrix(const CoeffFn&)>& rho, int y, int x,
                                     const CoeffFn& separating) {
    NestDiagonalization out;
    if (y == x) {
        out.applicable = false;  // function action already scalar
        out.transform = Matrix::identity(2);
        return out;
    }
    if (separating[y] != cplx(1.0) || separating[x] != cplx(0.0))
        throw std::invalid_argument("separating function must be 1 at the image point and 0 at the base");
    Matrix value = rho(separating);
    out.applicable = true;
    out.transform = Matrix::identity(2);
    out.transform(0, 1) = value(0, 1);
    return out;
}

}  // namespace mvdyn
