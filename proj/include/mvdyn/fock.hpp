#pragma once

#include <map>
#include <vector>

#include "mvdyn/core.hpp"

namespace mvdyn {

// All words of length <= depth, graded lexicographic, with index lookup.
struct FockBasis {
    int n = 0;
    int depth = 0;
    std::vector<Word> words;
    std::map<Word, int> index;

    static FockBasis build(int n, int depth);
    int dim() const { return static_cast<int>(words.size()); }
    int grade(int idx) const { return words[idx].size(); }
};

// Truncated Fock-space representation: a direct sum of per-site blocks, one
// per listed point. Creation matrices append a letter and annihilate the top
// grade; the diagonal part evaluates functions along each site's orbit.
struct FockRep {
    MultiSystem sys;
    int depth = 0;
    std::vector<int> sites;
    FockBasis basis;
    std::vector<int> labels;  // point attached to each basis vector
    std::vector<int> grades;

    int block() const { return basis.dim(); }
    int dim() const { return static_cast<int>(labels.size()); }

    Matrix creation(int letter) const;           // L_letter
    Matrix diag_fn(const CoeffFn& f) const;      // diagonal action of f
    Matrix grade_projector(int max_grade) const; // onto grades <= max_grade
};

FockRep orbit_rep(const MultiSystem& sys, int x, int depth);
FockRep full_fock_rep(const MultiSystem& sys, int depth);

Matrix represent(const FockRep& rep, const Polynomial& a);

// Largest singular value of the full Fock matrix of a at the given depth;
// a monotone lower approximation of the universal norm.
double norm_estimate(const MultiSystem& sys, const Polynomial& a, int depth);

// Grade extraction by averaging over 2*depth+1 gauge rotations (matrix path)
// and by filtering terms (symbolic path).
Matrix gauge_projection(const FockRep& rep, const Matrix& mat, int k);
Polynomial gauge_projection(const Polynomial& a, int k);

// Terms whose letter counts match the given exponent vector (one per map).
Polynomial abelian_projection(const Polynomial& a, const std::vector<int>& exponents);

// Stored coefficient of the word (zero function when absent).
CoeffFn fourier_coefficient(const Polynomial& a, const Word& w, int m);

Polynomial cesaro(const Polynomial& a, int k);

// Splits a = sum over |w|=k of s_w a_w when every coefficient below grade k
// vanishes; throws naming the offending word otherwise. Words absent from
// the result have a_w = 0.
std::map<Word, Polynomial> factor_tail(const Polynomial& a, int k);

// sqrt of the norm of sum_w adjoint(A_w) A_w over the tail factors, with the
// matrices taken in the full Fock representation at the given depth.
double factor_tail_norm(const MultiSystem& sys, const Polynomial& a, int k, int depth);

}  // namespace mvdyn
