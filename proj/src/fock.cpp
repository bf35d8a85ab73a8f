#include "mvdyn/fock.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mvdyn {

FockBasis FockBasis::build(int n, int depth) {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    FockBasis b;
    b.n = n;
    b.depth = depth;
    b.words = words_up_to(n, depth);
    for (int k = 0; k < static_cast<int>(b.words.size()); ++k) b.index.emplace(b.words[k], k);
    return b;
}

namespace {

FockRep build_rep(const MultiSystem& sys, std::vector<int> sites, int depth) {
    FockRep rep;
    rep.sys = sys;
    rep.depth = depth;
    rep.sites = std::move(sites);
    rep.basis = FockBasis::build(sys.n, depth);
    const int block = rep.basis.dim();
    rep.labels.reserve(rep.sites.size() * block);
    rep.grades.reserve(rep.sites.size() * block);
    for (int x : rep.sites) {
        for (int k = 0; k < block; ++k) {
            rep.labels.push_back(evaluate_word(sys, rep.basis.words[k], x));
            rep.grades.push_back(rep.basis.grade(k));
        }
    }
    return rep;
}

}  // namespace

FockRep orbit_rep(const MultiSystem& sys, int x, int depth) {
    if (x < 0 || x >= sys.m) throw std::invalid_argument("point index out of range");
    return build_rep(sys, {x}, depth);
}

FockRep full_fock_rep(const MultiSystem& sys, int depth) {
    std::vector<int> sites(sys.m);
    for (int x = 0; x < sys.m; ++x) sites[x] = x;
    return build_rep(sys, std::move(sites), depth);
}

Matrix FockRep::creation(int letter) const {
    if (letter < 1 || letter > sys.n) throw std::invalid_argument("letter out of range");
    const int b = block();
    Matrix l(dim(), dim());
    for (size_t s = 0; s < sites.size(); ++s) {
        for (int k = 0; k < b; ++k) {
            const Word& w = basis.words[k];
            if (w.size() == depth) continue;  // top grade is annihilated
            Word lw = concat(Word{{letter}}, w);
            l(static_cast<int>(s) * b + basis.index.at(lw), static_cast<int>(s) * b + k) = 1.0;
        }
    }
    return l;
}

Matrix FockRep::diag_fn(const CoeffFn& f) const {
    Matrix d(dim(), dim());
    for (int k = 0; k < dim(); ++k) d(k, k) = f[labels[k]];
    return d;
}

Matrix FockRep::grade_projector(int max_grade) const {
    Matrix p(dim(), dim());
    for (int k = 0; k < dim(); ++k)
        if (grades[k] <= max_grade) p(k, k) = 1.0;
    return p;
}

Matrix represent(const FockRep& rep, const Polynomial& a) {
    const int b = rep.basis.dim();
    Matrix mat(rep.dim(), rep.dim());
    for (const auto& [w, f] : a.terms) {
        for (size_t s = 0; s < rep.sites.size(); ++s) {
            const int base = static_cast<int>(s) * b;
            for (int k = 0; k < b; ++k) {
                const Word& v = rep.basis.words[k];
                if (v.size() + w.size() > rep.depth) continue;
                int target = rep.basis.index.at(concat(w, v));
                mat(base + target, base + k) += f[rep.labels[base + k]];
            }
        }
    }
    return mat;
}

double norm_estimate(const MultiSystem& sys, const Polynomial& a, int depth) {
    FockRep rep = full_fock_rep(sys, depth);
    return operator_norm(represent(rep, a));
}

Matrix gauge_projection(const FockRep& rep, const Matrix& mat, int k) {
    if (mat.rows() != rep.dim() || mat.cols() != rep.dim())
        throw std::invalid_argument("matrix does not match the representation dimension");
    const int r = 2 * rep.depth + 1;
    Matrix out(mat.rows(), mat.cols());
    for (int j = 0; j < r; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / r;
        const cplx weight = std::exp(cplx(0.0, -angle * k)) / static_cast<double>(r);
        for (int p = 0; p < mat.rows(); ++p) {
            for (int q = 0; q < mat.cols(); ++q) {
                // U M U^* scales the (p,q) entry by omega^{j(grade(p)-grade(q))}
                cplx rot = std::exp(cplx(0.0, angle * (rep.grades[p] - rep.grades[q])));
                out(p, q) += weight * rot * mat(p, q);
            }
        }
    }
    return out;
}

Polynomial gauge_projection(const Polynomial& a, int k) {
    Polynomial out;
    for (const auto& [w, f] : a.terms)
        if (w.size() == k) out.terms.emplace(w, f);
    return out;
}

Polynomial abelian_projection(const Polynomial& a, const std::vector<int>& exponents) {
    Polynomial out;
    for (const auto& [w, f] : a.terms) {
        std::vector<int> counts(exponents.size(), 0);
        bool fits = true;
        for (int letter : w.letters) {
            if (letter > static_cast<int>(exponents.size())) {
                fits = false;
                break;
            }
            ++counts[letter - 1];
        }
        if (fits && counts == exponents) out.terms.emplace(w, f);
    }
    return out;
}

CoeffFn fourier_coefficient(const Polynomial& a, const Word& w, int m) {
    auto it = a.terms.find(w);
    if (it == a.terms.end()) return CoeffFn(m, cplx(0.0));
    return it->second;
}

Polynomial cesaro(const Polynomial& a, int k) {
    if (k < 1) throw std::invalid_argument("cesaro order must be positive");
    Polynomial out;
    for (const auto& [w, f] : a.terms) {
        if (w.size() >= k) continue;
        double weight = 1.0 - static_cast<double>(w.size()) / k;
        CoeffFn scaled = f;
        for (auto& v : scaled) v *= weight;
        out.terms.emplace(w, std::move(scaled));
    }
    out.normalize();
    return out;
}

std::map<Word, Polynomial> factor_tail(const Polynomial& a, int k) {
    if (k < 1) throw std::invalid_argument("tail grade must be positive");
    for (const auto& [w, f] : a.terms)
        if (w.size() < k)
            throw std::invalid_argument("nonzero coefficient below the tail grade at word " +
                                        word_string(w));
    std::map<Word, Polynomial> out;
    for (const auto& [w, f] : a.terms) {
        Word prefix{std::vector<int>(w.letters.begin(), w.letters.begin() + k)};
        Word rest{std::vector<int>(w.letters.begin() + k, w.letters.end())};
        out[prefix].terms.emplace(std::move(rest), f);
    }
    return out;
}

double factor_tail_norm(const MultiSystem& sys, const Polynomial& a, int k, int depth) {
    auto tail = factor_tail(a, k);
    FockRep rep = full_fock_rep(sys, depth);
    // the row of length-k creations is an isometry on grades <= depth-k, so
    // the tail factors are compressed there; the identity with the norm of a
    // is then exact at every depth
    Matrix interior = rep.grade_projector(rep.depth - k);
    Matrix sum(rep.dim(), rep.dim());
    for (const auto& [w, aw] : tail) {
        Matrix mat = matmul(interior, represent(rep, aw));
        sum += gram_sparse(mat, mat);
    }
    return std::sqrt(operator_norm(sum));
}

}  // namespace mvdyn
