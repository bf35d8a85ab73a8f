#pragma once

#include <map>
#include <string>
#include <vector>

#include "mvdyn/linalg.hpp"

namespace mvdyn {

// A finite point set {0,..,m-1} with n total self-maps. Map indices and word
// letters are 1-based everywhere (letter L acts through maps[L-1]); points
// are 0-based indices, labels are display-only.
struct MultiSystem {
    int m = 0;
    int n = 0;
    std::vector<std::vector<int>> maps;  // maps[i][x] = image of x under map i+1
    std::vector<std::string> labels;

    MultiSystem() = default;
    MultiSystem(int m_, std::vector<std::vector<int>> maps_, std::vector<std::string> labels_ = {});

    void validate() const;  // throws std::invalid_argument

    int apply(int letter, int x) const { return maps[letter - 1][x]; }
    std::vector<int> range_of(int letter) const;  // sorted distinct image of map
    bool surjective(int letter) const;
};

// Free-semigroup word. Letters are listed leftmost-first but applied
// rightmost-first: evaluate([i_k,...,i_1], x) = map_{i_k}(...map_{i_1}(x)...).
// Every module relies on this single convention.
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> l) : letters(std::move(l)) {}

    int size() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }

    // graded lexicographic order (doubles as the Fock basis order)
    bool operator<(const Word& other) const {
        if (letters.size() != other.letters.size()) return letters.size() < other.letters.size();
        return letters < other.letters;
    }
    bool operator==(const Word& other) const { return letters == other.letters; }
};

// vw: v's letters to the left (applied last)
Word concat(const Word& v, const Word& w);

std::string word_string(const Word& w);

// A function on the point set: one complex value per point.
using CoeffFn = std::vector<cplx>;

CoeffFn indicator(int m, const std::vector<int>& points);
CoeffFn compose(const MultiSystem& sys, const CoeffFn& f, const Word& w);  // f of map_w
double sup_norm(const CoeffFn& f);
void validate_coeff(const CoeffFn& f);  // finite entries

// Finitely supported formal sum of terms word * coefficient-function.
struct Polynomial {
    std::map<Word, CoeffFn> terms;

    static Polynomial function(CoeffFn f);                 // grade-0 term
    static Polynomial monomial(Word w, CoeffFn f);
    static Polynomial generator(int letter, int m);        // single letter, coefficient 1

    int degree() const;  // max word length, -1 when zero

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator*=(cplx scale);

    // drop terms whose max-abs coefficient falls below 1e-15
    void normalize();

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Polynomial& other) const { return terms == other.terms; }
};

Polynomial operator+(Polynomial lhs, const Polynomial& rhs);
Polynomial operator-(const Polynomial& lhs, const Polynomial& rhs);

int evaluate_word(const MultiSystem& sys, const Word& w, int x);

// least set containing x and closed under every map (breadth-first)
std::vector<int> orbit(const MultiSystem& sys, int x);

struct StructureSummary {
    std::vector<bool> surjective;                 // per map
    std::vector<int> range_union;                 // sorted union of all map images
    std::vector<int> z_set;                       // points where the images collide
    std::vector<std::vector<int>> fixed_letters;  // per point: letters fixing it
};
StructureSummary structure_summary(const MultiSystem& sys);

// (s_v f)(s_w g) = s_{vw} (f of map_w) g, extended bilinearly
Polynomial poly_mul(const MultiSystem& sys, const Polynomial& a, const Polynomial& b);

// all words over {1..n} of length <= max_len, graded lexicographic
std::vector<Word> words_up_to(int n, int max_len);

}  // namespace mvdyn
