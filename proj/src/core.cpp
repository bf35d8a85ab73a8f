#include "mvdyn/core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace mvdyn {

MultiSystem::MultiSystem(int m_, std::vector<std::vector<int>> maps_, std::vector<std::string> labels_)
    : m(m_), n(static_cast<int>(maps_.size())), maps(std::move(maps_)), labels(std::move(labels_)) {
    if (labels.empty()) {
        labels.reserve(m);
        for (int x = 0; x < m; ++x) labels.push_back("p" + std::to_string(x));
    }
    validate();
}

void MultiSystem::validate() const {
    if (m < 1) throw std::invalid_argument("system needs at least one point");
    if (n < 1) throw std::invalid_argument("system needs at least one map");
    if (static_cast<int>(maps.size()) != n) throw std::invalid_argument("map count mismatch");
    for (const auto& table : maps) {
        if (static_cast<int>(table.size()) != m)
            throw std::invalid_argument("every map must be total (length m)");
        for (int y : table)
            if (y < 0 || y >= m) throw std::invalid_argument("map value out of range");
    }
    if (static_cast<int>(labels.size()) != m) throw std::invalid_argument("label count mismatch");
}

std::vector<int> MultiSystem::range_of(int letter) const {
    std::set<int> image(maps[letter - 1].begin(), maps[letter - 1].end());
    return {image.begin(), image.end()};
}

bool MultiSystem::surjective(int letter) const {
    return static_cast<int>(range_of(letter).size()) == m;
}

Word concat(const Word& v, const Word& w) {
    Word out = v;
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    return out;
}

std::string word_string(const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (size_t k = 0; k < w.letters.size(); ++k) {
        if (k) s += '.';
        s += std::to_string(w.letters[k]);
    }
    return s;
}

CoeffFn indicator(int m, const std::vector<int>& points) {
    CoeffFn f(m, cplx(0.0));
    for (int x : points) f[x] = 1.0;
    return f;
}

CoeffFn compose(const MultiSystem& sys, const CoeffFn& f, const Word& w) {
    CoeffFn out(sys.m);
    for (int x = 0; x < sys.m; ++x) out[x] = f[evaluate_word(sys, w, x)];
    return out;
}

double sup_norm(const CoeffFn& f) {
    double best = 0.0;
    for (const auto& v : f) best = std::max(best, std::abs(v));
    return best;
}

void validate_coeff(const CoeffFn& f) {
    for (const auto& v : f)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("coefficient function has a non-finite entry");
}

Polynomial Polynomial::function(CoeffFn f) {
    Polynomial p;
    p.terms.emplace(Word{}, std::move(f));
    p.normalize();
    return p;
}

Polynomial Polynomial::monomial(Word w, CoeffFn f) {
    Polynomial p;
    p.terms.emplace(std::move(w), std::move(f));
    p.normalize();
    return p;
}

Polynomial Polynomial::generator(int letter, int m) {
    return monomial(Word{{letter}}, CoeffFn(m, cplx(1.0)));
}

int Polynomial::degree() const {
    int deg = -1;
    for (const auto& [w, f] : terms) deg = std::max(deg, w.size());
    return deg;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    for (const auto& [w, f] : other.terms) {
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, f);
        } else {
            for (size_t k = 0; k < f.size(); ++k) it->second[k] += f[k];
        }
    }
    normalize();
    return *this;
}

Polynomial& Polynomial::operator*=(cplx scale) {
    for (auto& [w, f] : terms)
        for (auto& v : f) v *= scale;
    normalize();
    return *this;
}

void Polynomial::normalize() {
    for (auto it = terms.begin(); it != terms.end();) {
        double peak = 0.0;
        for (const auto& v : it->second) peak = std::max(peak, std::abs(v));
        if (peak < 1e-15)
            it = terms.erase(it);
        else
            ++it;
    }
}

Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }

Polynomial operator-(const Polynomial& lhs, const Polynomial& rhs) {
    Polynomial neg = rhs;
    neg *= cplx(-1.0);
    return neg += lhs;
}

int evaluate_word(const MultiSystem& sys, const Word& w, int x) {
    if (x < 0 || x >= sys.m) throw std::invalid_argument("point index out of range");
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (*it < 1 || *it > sys.n) throw std::invalid_argument("word letter out of range");
        x = sys.apply(*it, x);
    }
    return x;
}

std::vector<int> orbit(const MultiSystem& sys, int x) {
    if (x < 0 || x >= sys.m) throw std::invalid_argument("point index out of range");
    std::vector<bool> seen(sys.m, false);
    std::deque<int> queue{x};
    seen[x] = true;
    while (!queue.empty()) {
        int y = queue.front();
        queue.pop_front();
        for (int i = 1; i <= sys.n; ++i) {
            int z = sys.apply(i, y);
            if (!seen[z]) {
                seen[z] = true;
                queue.push_back(z);
            }
        }
    }
    std::vector<int> out;
    for (int y = 0; y < sys.m; ++y)
        if (seen[y]) out.push_back(y);
    return out;
}

StructureSummary structure_summary(const MultiSystem& sys) {
    StructureSummary s;
    std::set<int> all;
    for (int i = 1; i <= sys.n; ++i) {
        auto range = sys.range_of(i);
        s.surjective.push_back(static_cast<int>(range.size()) == sys.m);
        all.insert(range.begin(), range.end());
    }
    s.range_union.assign(all.begin(), all.end());
    s.fixed_letters.resize(sys.m);
    for (int x = 0; x < sys.m; ++x) {
        std::set<int> images;
        for (int i = 1; i <= sys.n; ++i) {
            images.insert(sys.apply(i, x));
            if (sys.apply(i, x) == x) s.fixed_letters[x].push_back(i);
        }
        if (static_cast<int>(images.size()) < sys.n) s.z_set.push_back(x);
    }
    return s;
}

Polynomial poly_mul(const MultiSystem& sys, const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [v, f] : a.terms) {
        for (const auto& [w, g] : b.terms) {
            Word vw = concat(v, w);
            CoeffFn coeff(sys.m);
            for (int x = 0; x < sys.m; ++x) coeff[x] = f[evaluate_word(sys, w, x)] * g[x];
            auto it = out.terms.find(vw);
            if (it == out.terms.end()) {
                out.terms.emplace(std::move(vw), std::move(coeff));
            } else {
                for (int x = 0; x < sys.m; ++x) it->second[x] += coeff[x];
            }
        }
    }
    out.normalize();
    return out;
}

std::vector<Word> words_up_to(int n, int max_len) {
    // graded lexicographic: appending letters in order to the previous grade
    // (itself in lex order) emits each grade already sorted
    std::vector<Word> out{Word{}};
    size_t grade_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        size_t grade_end = out.size();
        for (size_t k = grade_begin; k < grade_end; ++k) {
            for (int i = 1; i <= n; ++i) {
                Word w = out[k];
                w.letters.push_back(i);
                out.push_back(std::move(w));
            }
        }
        grade_begin = grade_end;
    }
    return out;
}

}  // namespace mvdyn
