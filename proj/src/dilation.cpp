#include "mvdyn/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mvdyn {

namespace {

std::vector<int> fiber_offsets(const std::vector<int>& dims) {
    std::vector<int> off(dims.size() + 1, 0);
    for (size_t x = 0; x < dims.size(); ++x) off[x + 1] = off[x] + dims[x];
    return off;
}

Matrix submatrix(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) out(static_cast<int>(i), static_cast<int>(j)) = m(rows[i], cols[j]);
    return out;
}

double window_norm(const Matrix& m, const std::vector<int>& window) {
    return operator_norm(submatrix(m, window, window));
}

int least_preimage(const MultiSystem& sys, int letter, int y) {
    for (int x = 0; x < sys.m; ++x)
        if (sys.apply(letter, x) == y) return x;
    throw std::runtime_error("no preimage for a range point");
}

}  // namespace

void CovariantPair::validate() const {
    sys.validate();
    if (static_cast<int>(dims.size()) != sys.m) throw std::invalid_argument("one fiber dimension per point required");
    for (int d : dims)
        if (d < 1) throw std::invalid_argument("fiber dimensions must be positive");
    if (static_cast<int>(A.size()) != sys.n) throw std::invalid_argument("one block matrix per map required");
    for (int i = 1; i <= sys.n; ++i) {
        const Matrix& a = A[i - 1];
        if (a.rows() != h_dim || a.cols() != h_dim) throw std::invalid_argument("block matrix shape mismatch");
        for (int x = 0; x < sys.m; ++x) {
            int y = sys.apply(i, x);
            for (int col = offset[x]; col < offset[x] + dims[x]; ++col) {
                for (int row = 0; row < h_dim; ++row) {
                    bool allowed = row >= offset[y] && row < offset[y] + dims[y];
                    if (!allowed && a(row, col) != cplx(0.0))
                        throw std::invalid_argument("block entry outside the covariant support");
                }
            }
        }
    }
}

CovariantPair random_covariant_pair(const MultiSystem& sys, const std::vector<int>& dims,
                                    uint64_t seed, PairMode mode) {
    if (static_cast<int>(dims.size()) != sys.m) throw std::invalid_argument("one fiber dimension per point required");
    for (int d : dims)
        if (d < 1) throw std::invalid_argument("fiber dimensions must be positive");
    CovariantPair pair;
    pair.sys = sys;
    pair.dims = dims;
    pair.offset = fiber_offsets(dims);
    pair.mode = mode;
    pair.h_dim = pair.offset[sys.m];

    SplitMix64 rng(seed);
    for (int i = 1; i <= sys.n; ++i) {
        Matrix a(pair.h_dim, pair.h_dim);
        for (int x = 0; x < sys.m; ++x) {
            int y = sys.apply(i, x);
            for (int r = 0; r < dims[y]; ++r)
                for (int c = 0; c < dims[x]; ++c)
                    a(pair.offset[y] + r, pair.offset[x] + c) = gaussian_cplx(rng);
        }
        pair.A.push_back(std::move(a));
    }

    if (mode == PairMode::Row) {
        double norm = row_norm(pair);
        if (norm > 0.0)
            for (auto& a : pair.A) a *= cplx(0.9 / norm);
    } else {
        for (auto& a : pair.A) {
            double norm = operator_norm(a);
            if (norm > 0.0) a *= cplx(0.9 / norm);
        }
    }
    return pair;
}

Matrix row_matrix(const CovariantPair& pair) {
    const int h = pair.h_dim;
    Matrix row(h, h * pair.sys.n);
    for (int i = 0; i < pair.sys.n; ++i)
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < h; ++c) row(r, i * h + c) = pair.A[i](r, c);
    return row;
}

double row_norm(const CovariantPair& pair) { return operator_norm(row_matrix(pair)); }

Matrix CovariantRep::diag_fn(const CoeffFn& f) const {
    Matrix d(dim(), dim());
    for (int k = 0; k < dim(); ++k) d(k, k) = f[labels[k]];
    return d;
}

Matrix CovariantRep::window_projector() const {
    Matrix p(dim(), dim());
    for (int k = 0; k < dim(); ++k)
        if (grades[k] >= 0 && grades[k] < depth) p(k, k) = 1.0;
    return p;
}

CovariantRep as_covariant(const FockRep& rep) {
    CovariantRep out;
    out.sys = rep.sys;
    out.labels = rep.labels;
    out.grades = rep.grades;
    out.depth = rep.depth;
    out.h_dim = static_cast<int>(rep.sites.size());
    for (int i = 1; i <= rep.sys.n; ++i) out.S.push_back(rep.creation(i));
    return out;
}

namespace {

CovariantRep dilation_shell(const CovariantPair& pair, int depth) {
    CovariantRep rep;
    rep.sys = pair.sys;
    rep.depth = depth;
    rep.h_dim = pair.h_dim;
    FockBasis basis = FockBasis::build(pair.sys.n, depth);
    const int h = pair.h_dim;
    rep.labels.reserve(static_cast<size_t>(basis.dim()) * h);
    for (int k = 0; k < basis.dim(); ++k) {
        for (int x = 0; x < pair.sys.m; ++x) {
            int label = evaluate_word(pair.sys, basis.words[k], x);
            for (int r = 0; r < pair.dims[x]; ++r) {
                rep.labels.push_back(label);
                rep.grades.push_back(basis.grade(k));
            }
        }
    }
    return rep;
}

// shift part shared by both dilations: word w column block feeds word iw
void fill_shifts(Matrix& s, const FockBasis& basis, int letter, int h) {
    for (int k = 1; k < basis.dim(); ++k) {
        const Word& w = basis.words[k];
        if (w.size() == basis.depth) continue;
        int target = basis.index.at(concat(Word{{letter}}, w));
        for (int r = 0; r < h; ++r) s(target * h + r, k * h + r) = 1.0;
    }
}

}  // namespace

CovariantRep fbp_row_dilation(const CovariantPair& pair, int depth) {
    pair.validate();
    if (pair.mode != PairMode::Row) throw std::invalid_argument("row dilation needs a row-contractive pair");
    if (depth < 1) throw std::invalid_argument("dilation depth must be at least 1");
    if (row_norm(pair) > 1.0 + 1e-10) throw std::invalid_argument("row norm exceeds 1");

    const int h = pair.h_dim;
    const int n = pair.sys.n;
    FockBasis basis = FockBasis::build(n, depth);
    CovariantRep rep = dilation_shell(pair, depth);
    const int dim = basis.dim() * h;

    Matrix row = row_matrix(pair);
    Matrix defect_sq = Matrix::identity(n * h) - gram_sparse(row, row);
    Matrix defect = hermitian_sqrt(defect_sq);

    for (int i = 1; i <= n; ++i) {
        Matrix s(dim, dim);
        fill_shifts(s, basis, i, h);
        for (int col = 0; col < h; ++col) {
            for (int r = 0; r < h; ++r) s(r, col) = pair.A[i - 1](r, col);
            // defect rows feed the grade-1 layers: word [j] has basis index j
            for (int j = 1; j <= n; ++j)
                for (int r = 0; r < h; ++r)
                    s(j * h + r, col) = defect((j - 1) * h + r, (i - 1) * h + col);
        }
        rep.S.push_back(std::move(s));
    }
    return rep;
}

CovariantRep separate_isometric_dilation(const CovariantPair& pair, int depth) {
    pair.validate();
    if (pair.mode != PairMode::Separate)
        throw std::invalid_argument("separate dilation needs a separately contractive pair");
    if (depth < 1) throw std::invalid_argument("dilation depth must be at least 1");
    for (const auto& a : pair.A)
        if (operator_norm(a) > 1.0 + 1e-10) throw std::invalid_argument("block norm exceeds 1");

    const int h = pair.h_dim;
    const int n = pair.sys.n;
    FockBasis basis = FockBasis::build(n, depth);
    CovariantRep rep = dilation_shell(pair, depth);
    const int dim = basis.dim() * h;

    for (int i = 1; i <= n; ++i) {
        const Matrix& a = pair.A[i - 1];
        Matrix defect = hermitian_sqrt(Matrix::identity(h) - gram_sparse(a, a));
        Matrix s(dim, dim);
        fill_shifts(s, basis, i, h);
        for (int col = 0; col < h; ++col) {
            for (int r = 0; r < h; ++r) s(r, col) = a(r, col);
            for (int r = 0; r < h; ++r) s(i * h + r, col) = defect(r, col);
        }
        rep.S.push_back(std::move(s));
    }
    return rep;
}

namespace {

std::vector<int> window_indices(const CovariantRep& rep) {
    std::vector<int> idx;
    for (int k = 0; k < rep.dim(); ++k)
        if (rep.grades[k] >= 0 && rep.grades[k] < rep.depth) idx.push_back(k);
    return idx;
}

Matrix range_sum(const CovariantRep& rep) {
    Matrix sum(rep.dim(), rep.dim());
    for (const auto& s : rep.S) sum += gram_sparse(adjoint(s), adjoint(s));  // S S*
    return sum;
}

std::set<int> union_of_ranges(const MultiSystem& sys) {
    std::set<int> out;
    for (int i = 1; i <= sys.n; ++i) {
        auto r = sys.range_of(i);
        out.insert(r.begin(), r.end());
    }
    return out;
}

}  // namespace

MaximalityReport maximality_check(const CovariantRep& rep) {
    Matrix residual = range_sum(rep);
    std::set<int> covered = union_of_ranges(rep.sys);
    for (int k = 0; k < rep.dim(); ++k)
        if (covered.count(rep.labels[k])) residual(k, k) -= 1.0;
    MaximalityReport report;
    report.residual = window_norm(residual, window_indices(rep));
    report.is_maximal_interior = report.residual < 1e-10;
    return report;
}

MaximalityReport maximality_check(const FockRep& rep) { return maximality_check(as_covariant(rep)); }

double fullness_residual(const CovariantRep& rep) {
    auto window = window_indices(rep);
    double worst = 0.0;
    for (int i = 1; i <= rep.sys.n; ++i) {
        Matrix residual = gram_sparse(adjoint(rep.S[i - 1]), adjoint(rep.S[i - 1]));
        auto range = rep.sys.range_of(i);
        std::set<int> in_range(range.begin(), range.end());
        for (int k = 0; k < rep.dim(); ++k)
            if (in_range.count(rep.labels[k])) residual(k, k) -= 1.0;
        worst = std::max(worst, window_norm(residual, window));
    }
    return worst;
}

double covariance_residual(const CovariantRep& rep, const std::vector<CoeffFn>& fs) {
    double worst = 0.0;
    for (const auto& f : fs) {
        Matrix left = rep.diag_fn(f);
        for (int i = 1; i <= rep.sys.n; ++i) {
            Matrix right = rep.diag_fn(compose(rep.sys, f, Word{{i}}));
            worst = std::max(worst, operator_norm(matmul(left, rep.S[i - 1]) - matmul(rep.S[i - 1], right)));
        }
    }
    return worst;
}

double interior_row_isometry_residual(const CovariantRep& rep) {
    Matrix window = rep.window_projector();
    double worst = 0.0;
    for (int i = 1; i <= rep.sys.n; ++i) {
        for (int j = 1; j <= rep.sys.n; ++j) {
            Matrix g = gram_sparse(rep.S[j - 1], rep.S[i - 1]);
            if (i == j) g -= Matrix::identity(rep.dim());
            worst = std::max(worst, operator_norm(matmul(g, window)));
        }
    }
    return worst;
}

double separate_isometry_residual(const CovariantRep& rep) {
    Matrix window = rep.window_projector();
    double worst = 0.0;
    for (int i = 1; i <= rep.sys.n; ++i) {
        Matrix g = gram_sparse(rep.S[i - 1], rep.S[i - 1]) - Matrix::identity(rep.dim());
        worst = std::max(worst, operator_norm(matmul(g, window)));
    }
    return worst;
}

namespace {

// eigenvectors (one label class at a time) of the defect with eigenvalue
// above 1/2, embedded back into the full space
struct AdjoinLayer {
    std::vector<std::vector<cplx>> vectors;
    std::vector<int> new_labels;
};

AdjoinLayer threshold_defect(const CovariantRep& rep, const Matrix& defect, int letter) {
    AdjoinLayer layer;
    auto window = window_indices(rep);
    for (int y : rep.sys.range_of(letter)) {
        std::vector<int> idx;
        for (int k : window)
            if (rep.labels[k] == y) idx.push_back(k);
        if (idx.empty()) continue;
        HermEig eig = eig_hermitian(submatrix(defect, idx, idx));
        for (int j = static_cast<int>(idx.size()) - 1; j >= 0; --j) {
            if (eig.values[j] <= 0.5) break;
            std::vector<cplx> vec(rep.dim(), cplx(0.0));
            for (size_t t = 0; t < idx.size(); ++t) vec[idx[t]] = eig.vectors(static_cast<int>(t), j);
            layer.vectors.push_back(std::move(vec));
            layer.new_labels.push_back(least_preimage(rep.sys, letter, y));
        }
    }
    return layer;
}

CovariantRep adjoin(const CovariantRep& rep, const std::vector<AdjoinLayer>& layers) {
    int extra = 0;
    for (const auto& l : layers) extra += static_cast<int>(l.vectors.size());
    int new_grade = 0;
    for (int g : rep.grades) new_grade = std::min(new_grade, g);
    --new_grade;

    CovariantRep out;
    out.sys = rep.sys;
    out.depth = rep.depth;
    out.h_dim = rep.h_dim;
    out.labels = rep.labels;
    out.grades = rep.grades;
    const int dim = rep.dim();
    for (int i = 0; i < rep.sys.n; ++i) {
        Matrix s(dim + extra, dim + extra);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) s(r, c) = rep.S[i](r, c);
        out.S.push_back(std::move(s));
    }
    int slot = dim;
    for (size_t i = 0; i < layers.size(); ++i) {
        for (size_t t = 0; t < layers[i].vectors.size(); ++t) {
            for (int r = 0; r < dim; ++r) out.S[i](r, slot) = layers[i].vectors[t][r];
            out.labels.push_back(layers[i].new_labels[t]);
            out.grades.push_back(new_grade);
            ++slot;
        }
    }
    return out;
}

// regroup a representation by point label and redo the row dilation; used
// when an enlargement breaks the window isometry
CovariantPair extract_pair(const CovariantRep& rep, PairMode mode) {
    CovariantPair pair;
    pair.sys = rep.sys;
    pair.mode = mode;
    pair.dims.assign(rep.sys.m, 0);
    std::vector<int> position(rep.dim());
    std::vector<std::vector<int>> by_label(rep.sys.m);
    for (int k = 0; k < rep.dim(); ++k) by_label[rep.labels[k]].push_back(k);
    for (int x = 0; x < rep.sys.m; ++x) pair.dims[x] = std::max(1, static_cast<int>(by_label[x].size()));
    pair.offset = fiber_offsets(pair.dims);
    pair.h_dim = pair.offset[rep.sys.m];
    std::vector<int> embed;  // old index -> grouped index
    embed.resize(rep.dim());
    for (int x = 0; x < rep.sys.m; ++x)
        for (size_t t = 0; t < by_label[x].size(); ++t) embed[by_label[x][t]] = pair.offset[x] + static_cast<int>(t);
    for (int i = 0; i < rep.sys.n; ++i) {
        Matrix a(pair.h_dim, pair.h_dim);
        for (int r = 0; r < rep.dim(); ++r)
            for (int c = 0; c < rep.dim(); ++c)
                if (rep.S[i](r, c) != cplx(0.0)) a(embed[r], embed[c]) = rep.S[i](r, c);
        pair.A.push_back(std::move(a));
    }
    return pair;
}

}  // namespace

EnlargeResult maximal_dilation_step(const CovariantRep& rep) {
    EnlargeResult result;
    result.residual_before = maximality_check(rep).residual;
    if (result.residual_before < 1e-10) {
        result.rep = rep;
        result.changed = false;
        result.residual_after = result.residual_before;
        return result;
    }
    Matrix defect = Matrix::identity(rep.dim()) - range_sum(rep);
    for (int i = 1; i <= rep.sys.n; ++i) {
        AdjoinLayer layer = threshold_defect(rep, defect, i);
        if (layer.vectors.empty()) continue;
        std::vector<AdjoinLayer> layers(rep.sys.n);
        layers[i - 1] = std::move(layer);
        result.rep = adjoin(rep, layers);
        result.changed = true;
        if (interior_row_isometry_residual(result.rep) > 1e-10)
            result.rep = fbp_row_dilation(extract_pair(result.rep, PairMode::Row), rep.depth);
        result.residual_after = maximality_check(result.rep).residual;
        return result;
    }
    // nothing adjoinable: the uncovered part lies outside every range
    result.rep = rep;
    result.changed = false;
    result.residual_after = result.residual_before;
    return result;
}

EnlargeResult full_dilation_round(const CovariantRep& rep) {
    EnlargeResult result;
    result.residual_before = fullness_residual(rep);
    std::vector<AdjoinLayer> layers;
    bool any = false;
    for (int i = 1; i <= rep.sys.n; ++i) {
        Matrix defect = Matrix::identity(rep.dim()) -
                        gram_sparse(adjoint(rep.S[i - 1]), adjoint(rep.S[i - 1]));
        layers.push_back(threshold_defect(rep, defect, i));
        if (!layers.back().vectors.empty()) any = true;
    }
    if (!any) {
        result.rep = rep;
        result.changed = false;
        result.residual_after = result.residual_before;
        return result;
    }
    result.rep = adjoin(rep, layers);
    result.changed = true;
    if (separate_isometry_residual(result.rep) > 1e-10)
        result.rep = separate_isometric_dilation(extract_pair(result.rep, PairMode::Separate), rep.depth);
    result.residual_after = fullness_residual(result.rep);
    return result;
}

}  // namespace mvdyn
