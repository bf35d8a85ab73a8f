#include "mvdyn/conjugacy.hpp"

#include <algorithm>
#include <functional>

namespace mvdyn {

MultiGraph forgetful_multigraph(const MultiSystem& sys) {
    MultiGraph g;
    g.m = sys.m;
    g.count.assign(sys.m, std::vector<int>(sys.m, 0));
    for (int i = 1; i <= sys.n; ++i)
        for (int x = 0; x < sys.m; ++x) ++g.count[x][sys.apply(i, x)];
    return g;
}

bool check_pc_witness(const MultiSystem& a, const MultiSystem& b, const PCWitness& w) {
    if (a.m != b.m || a.n != b.n) return false;
    if (static_cast<int>(w.gamma.size()) != a.m || static_cast<int>(w.alpha.size()) != a.m)
        return false;
    std::vector<bool> hit(a.m, false);
    for (int y : w.gamma) {
        if (y < 0 || y >= a.m || hit[y]) return false;
        hit[y] = true;
    }
    for (int x = 0; x < a.m; ++x) {
        std::vector<bool> used(a.n + 1, false);
        for (int i = 1; i <= a.n; ++i) {
            int j = w.alpha[x][i - 1];
            if (j < 1 || j > a.n || used[j]) return false;
            used[j] = true;
            if (b.apply(i, w.gamma[x]) != w.gamma[a.apply(j, x)]) return false;
        }
    }
    return true;
}

bool check_conjugacy_witness(const MultiSystem& a, const MultiSystem& b, const ConjugacyWitness& w) {
    PCWitness pw;
    pw.gamma = w.gamma;
    pw.alpha.assign(a.m, w.alpha);
    return check_pc_witness(a, b, pw);
}

namespace {

// sorted multiset invariants (out-counts, in-counts) per vertex
std::vector<std::pair<std::vector<int>, std::vector<int>>> vertex_profiles(const MultiGraph& g) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> prof(g.m);
    for (int x = 0; x < g.m; ++x) {
        std::vector<int> out, in;
        for (int y = 0; y < g.m; ++y) {
            if (g.count[x][y] > 0) out.push_back(g.count[x][y]);
            if (g.count[y][x] > 0) in.push_back(g.count[y][x]);
        }
        std::sort(out.begin(), out.end());
        std::sort(in.begin(), in.end());
        prof[x] = {std::move(out), std::move(in)};
    }
    return prof;
}

// lexicographically least multigraph isomorphism, if any
std::optional<std::vector<int>> multigraph_isomorphism(const MultiGraph& ga, const MultiGraph& gb) {
    if (ga.m != gb.m) return std::nullopt;
    const int m = ga.m;
    auto pa = vertex_profiles(ga);
    auto pb = vertex_profiles(gb);

    std::vector<int> gamma(m, -1);
    std::vector<bool> used(m, false);
    std::function<bool(int)> assign = [&](int x) {
        if (x == m) return true;
        for (int y = 0; y < m; ++y) {
            if (used[y] || pa[x] != pb[y]) continue;
            bool ok = true;
            for (int x2 = 0; x2 < x && ok; ++x2) {
                if (ga.count[x][x2] != gb.count[y][gamma[x2]]) ok = false;
                if (ok && ga.count[x2][x] != gb.count[gamma[x2]][y]) ok = false;
            }
            if (ok && ga.count[x][x] != gb.count[y][y]) ok = false;
            if (!ok) continue;
            gamma[x] = y;
            used[y] = true;
            if (assign(x + 1)) return true;
            gamma[x] = -1;
            used[y] = false;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;
    return gamma;
}

// least per-point permutation matching tau_i(gamma(x)) = gamma(sigma_j(x))
std::vector<int> recover_alpha(const MultiSystem& a, const MultiSystem& b,
                               const std::vector<int>& gamma, int x) {
    const int n = a.n;
    std::vector<int> alpha(n, 0);
    std::vector<bool> taken(n + 1, false);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (taken[j]) continue;
            if (b.apply(i, gamma[x]) == gamma[a.apply(j, x)]) {
                alpha[i - 1] = j;
                taken[j] = true;
                break;
            }
        }
    }
    return alpha;
}

}  // namespace

std::optional<PCWitness> are_piecewise_conjugate(const MultiSystem& a, const MultiSystem& b) {
    if (a.m != b.m || a.n != b.n) return std::nullopt;
    auto gamma = multigraph_isomorphism(forgetful_multigraph(a), forgetful_multigraph(b));
    if (!gamma) return std::nullopt;
    PCWitness w;
    w.gamma = *gamma;
    w.alpha.reserve(a.m);
    for (int x = 0; x < a.m; ++x) w.alpha.push_back(recover_alpha(a, b, w.gamma, x));
    return w;
}

std::optional<ConjugacyWitness> are_conjugate(const MultiSystem& a, const MultiSystem& b) {
    if (a.m != b.m || a.n != b.n) return std::nullopt;
    const int n = a.n;
    std::vector<int> alpha(n);
    for (int i = 0; i < n; ++i) alpha[i] = i + 1;
    do {
        // backtracking for the least gamma intertwining tau_i with sigma_{alpha(i)};
        // every constraint with both endpoints assigned is checked, so a
        // completed assignment is a valid witness
        std::vector<int> gamma(a.m, -1);
        std::vector<bool> used(a.m, false);
        auto consistent = [&]() {
            for (int x0 = 0; x0 < a.m; ++x0) {
                if (gamma[x0] == -1) continue;
                for (int i = 1; i <= n; ++i) {
                    int xs = a.apply(alpha[i - 1], x0);
                    int yt = b.apply(i, gamma[x0]);
                    if (gamma[xs] != -1 && gamma[xs] != yt) return false;
                    if (gamma[xs] == -1 && used[yt]) return false;
                }
            }
            return true;
        };
        std::function<bool(int)> assign = [&](int x) {
            if (x == a.m) return true;
            for (int y = 0; y < a.m; ++y) {
                if (used[y]) continue;
                gamma[x] = y;
                used[y] = true;
                if (consistent() && assign(x + 1)) return true;
                gamma[x] = -1;
                used[y] = false;
            }
            return false;
        };
        if (assign(0)) {
            ConjugacyWitness w;
            w.gamma = gamma;
            w.alpha = alpha;
            return w;
        }
    } while (std::next_permutation(alpha.begin(), alpha.end()));
    return std::nullopt;
}

}  // namespace mvdyn
