#pragma once

#include "mvdyn/core.hpp"
#include "mvdyn/linalg.hpp"

namespace mvdyn::testing {

// the two-point pair used throughout: identity+swap vs the two constants
inline MultiSystem id_swap() { return MultiSystem(2, {{0, 1}, {1, 0}}); }
inline MultiSystem constants() { return MultiSystem(2, {{0, 0}, {1, 1}}); }

inline MultiSystem cycle(int m) {
    std::vector<int> shift(m);
    for (int x = 0; x < m; ++x) shift[x] = (x + 1) % m;
    return MultiSystem(m, {shift});
}

inline MultiSystem random_system(SplitMix64& rng, int max_m, int max_n) {
    int m = 1 + static_cast<int>(rng.below(max_m));
    int n = 1 + static_cast<int>(rng.below(max_n));
    std::vector<std::vector<int>> maps(n, std::vector<int>(m));
    for (auto& table : maps)
        for (auto& y : table) y = static_cast<int>(rng.below(m));
    return MultiSystem(m, std::move(maps));
}

inline Word random_word(SplitMix64& rng, int n, int max_len) {
    Word w;
    int len = static_cast<int>(rng.below(max_len + 1));
    for (int k = 0; k < len; ++k) w.letters.push_back(1 + static_cast<int>(rng.below(n)));
    return w;
}

inline CoeffFn random_fn(SplitMix64& rng, int m) {
    CoeffFn f(m);
    for (auto& v : f) v = gaussian_cplx(rng);
    return f;
}

// small Gaussian-integer coefficients keep polynomial arithmetic exact
inline CoeffFn random_int_fn(SplitMix64& rng, int m) {
    CoeffFn f(m);
    for (auto& v : f)
        v = cplx(static_cast<double>(rng.below(7)) - 3.0, static_cast<double>(rng.below(7)) - 3.0);
    return f;
}

inline Polynomial random_poly(SplitMix64& rng, const MultiSystem& sys, int max_deg, int terms,
                              bool integer = false) {
    Polynomial a;
    for (int t = 0; t < terms; ++t) {
        Word w = random_word(rng, sys.n, max_deg);
        CoeffFn f = integer ? random_int_fn(rng, sys.m) : random_fn(rng, sys.m);
        a += Polynomial::monomial(std::move(w), std::move(f));
    }
    return a;
}

}  // namespace mvdyn::testing
