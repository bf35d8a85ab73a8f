#include "mvdyn/intertwine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mvdyn {

void validate_field(const MultiSystem& sys, const UnitaryField& field) {
    if (static_cast<int>(field.v.size()) != sys.m)
        throw std::invalid_argument("field needs one matrix per point");
    for (int x = 0; x < sys.m; ++x) {
        const Matrix& u = field.v[x];
        if (u.rows() != sys.n || u.cols() != sys.n)
            throw std::invalid_argument("field matrices must be n x n");
        Matrix defect = gram_sparse(u, u) - Matrix::identity(sys.n);
        if (max_abs(defect) > 1e-12) throw std::invalid_argument("field matrix is not unitary");
        if (field.target) {
            for (int i = 1; i <= sys.n; ++i)
                for (int j = 1; j <= sys.n; ++j)
                    if (std::abs(u(i - 1, j - 1)) > 1e-12 &&
                        field.target->apply(i, x) != sys.apply(j, x))
                        throw std::invalid_argument("field entry violates the germ support");
        }
    }
}

MultiSystem pullback(const MultiSystem& target, const std::vector<int>& gamma) {
    std::vector<int> inverse(target.m, -1);
    for (int x = 0; x < target.m; ++x) inverse[gamma[x]] = x;
    std::vector<std::vector<int>> maps(target.n, std::vector<int>(target.m));
    for (int i = 1; i <= target.n; ++i)
        for (int x = 0; x < target.m; ++x) maps[i - 1][x] = inverse[target.apply(i, gamma[x])];
    return MultiSystem(target.m, std::move(maps));
}

UnitaryField field_from_assignment(const MultiSystem& source, const MultiSystem& target,
                                   const PCWitness& witness) {
    if (!check_pc_witness(source, target, witness))
        throw std::invalid_argument("witness does not validate");
    UnitaryField field;
    field.target = pullback(target, witness.gamma);
    field.v.reserve(source.m);
    for (int x = 0; x < source.m; ++x) {
        Matrix u(source.n, source.n);
        for (int i = 1; i <= source.n; ++i) u(i - 1, witness.alpha[x][i - 1] - 1) = 1.0;
        field.v.push_back(std::move(u));
    }
    validate_field(source, field);
    return field;
}

std::vector<Matrix> intertwiners_from(const std::vector<Matrix>& generators, const FockRep& rep,
                                      const UnitaryField& field) {
    const int n = rep.sys.n;
    std::vector<Matrix> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) {
        Matrix t(rep.dim(), rep.dim());
        for (int j = 1; j <= n; ++j) {
            CoeffFn vij(rep.sys.m);
            for (int x = 0; x < rep.sys.m; ++x) vij[x] = field.v[x](i - 1, j - 1);
            if (sup_norm(vij) == 0.0) continue;
            t += matmul(generators[j - 1], rep.diag_fn(vij));
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Matrix> intertwiners(const MultiSystem& sys, const UnitaryField& field,
                                 const FockRep& rep, IntertwinerReport* report) {
    validate_field(sys, field);
    std::vector<Matrix> gens;
    for (int i = 1; i <= sys.n; ++i) gens.push_back(rep.creation(i));
    std::vector<Matrix> ts = intertwiners_from(gens, rep, field);

    if (report) {
        *report = IntertwinerReport{};
        Matrix interior = rep.grade_projector(rep.depth - 1);

        for (int i = 0; i < sys.n; ++i) {
            for (int k = 0; k < sys.n; ++k) {
                Matrix g = gram_sparse(ts[k], ts[i]);
                if (i == k) g -= Matrix::identity(rep.dim());
                report->row_isometry_residual =
                    std::max(report->row_isometry_residual, operator_norm(matmul(g, interior)));
            }
        }

        if (field.target) {
            SplitMix64 rng(0x1720u);
            for (int trial = 0; trial < 8; ++trial) {
                CoeffFn f(sys.m);
                for (auto& value : f) value = gaussian_cplx(rng);
                Matrix left = rep.diag_fn(f);
                for (int i = 1; i <= sys.n; ++i) {
                    Matrix right = rep.diag_fn(compose(*field.target, f, Word{{i}}));
                    Matrix defect = matmul(left, ts[i - 1]) - matmul(ts[i - 1], right);
                    report->covariance_residual =
                        std::max(report->covariance_residual, operator_norm(defect));
                }
            }
        }

        // s_k = sum_i T_i pi(conj(v_ik))
        for (int k = 1; k <= sys.n; ++k) {
            Matrix rebuilt(rep.dim(), rep.dim());
            for (int i = 1; i <= sys.n; ++i) {
                CoeffFn vik(sys.m);
                for (int x = 0; x < sys.m; ++x) vik[x] = std::conj(field.v[x](i - 1, k - 1));
                rebuilt += matmul(ts[i - 1], rep.diag_fn(vik));
            }
            report->recovery_error = std::max(report->recovery_error, max_abs(rebuilt - gens[k - 1]));
        }
    }
    return ts;
}

std::pair<Matrix, Matrix> rotation_intertwiner_n2(const MultiSystem& sys, const std::vector<int>& x1,
                                                  const std::vector<int>& x2, const FockRep& rep) {
    if (sys.n != 2) throw std::invalid_argument("rotation construction needs exactly two maps");
    std::vector<int> zone(sys.m, 0);
    for (int x : x1) {
        if (x < 0 || x >= sys.m) throw std::invalid_argument("point index out of range");
        zone[x] = 1;
    }
    for (int x : x2) {
        if (x < 0 || x >= sys.m) throw std::invalid_argument("point index out of range");
        if (zone[x] == 1) throw std::invalid_argument("the two sets must be disjoint");
        zone[x] = 2;
    }
    UnitaryField field;
    field.v.reserve(sys.m);
    const double quarter = std::numbers::pi / 4.0;
    for (int x = 0; x < sys.m; ++x) {
        double h = zone[x] == 1 ? 0.0 : zone[x] == 2 ? 2.0 * quarter : quarter;
        Matrix u(2, 2);
        u(0, 0) = std::sin(h);
        u(0, 1) = std::cos(h);
        u(1, 0) = std::cos(h);
        u(1, 1) = -std::sin(h);
        field.v.push_back(std::move(u));
    }
    std::vector<Matrix> gens{rep.creation(1), rep.creation(2)};
    auto ts = intertwiners_from(gens, rep, field);
    return {std::move(ts[0]), std::move(ts[1])};
}

}  // namespace mvdyn
