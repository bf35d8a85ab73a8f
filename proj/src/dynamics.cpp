#include "mvdyn/dynamics.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace mvdyn {

std::vector<int> reach_set(const MultiSystem& sys, int x) { return orbit(sys, x); }

bool is_wandering(const MultiSystem& sys, const std::vector<int>& U, const Word& u, const Word& v) {
    if (U.empty()) throw std::invalid_argument("wandering set must be nonempty");
    std::vector<bool> in_u(sys.m, false);
    for (int x : U) {
        if (x < 0 || x >= sys.m) throw std::invalid_argument("wandering set point out of range");
        in_u[x] = true;
    }
    for (int x : U) {
        // sigma_{uwv}(x) over all w = map_u image of the reachability closure
        // of map_v(x); quantifying over w collapses to one BFS
        for (int y : reach_set(sys, evaluate_word(sys, v, x)))
            if (in_u[evaluate_word(sys, u, y)]) return false;
    }
    return true;
}

bool is_recurrent(const MultiSystem& sys, int x, const Word& u, const Word& v) {
    if (x < 0 || x >= sys.m) throw std::invalid_argument("point index out of range");
    for (int y : reach_set(sys, evaluate_word(sys, v, x)))
        if (evaluate_word(sys, u, y) == x) return true;
    return false;
}

SccInfo strongly_connected_components(const MultiSystem& sys) {
    SccInfo info;
    info.scc_id.assign(sys.m, -1);
    std::vector<int> index(sys.m, -1), low(sys.m, 0);
    std::vector<bool> on_stack(sys.m, false);
    std::vector<int> stack;
    int counter = 0;

    // iterative Tarjan; neighbor order follows the map order for determinism
    struct Frame {
        int v;
        int edge;
    };
    for (int root = 0; root < sys.m; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < sys.n) {
                int w = sys.apply(f.edge + 1, f.v);
                ++f.edge;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    for (int w : comp) info.scc_id[w] = static_cast<int>(info.components.size());
                    info.components.push_back(std::move(comp));
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }

    std::set<std::pair<int, int>> edges;
    for (int x = 0; x < sys.m; ++x)
        for (int i = 1; i <= sys.n; ++i) {
            int y = sys.apply(i, x);
            if (info.scc_id[x] != info.scc_id[y]) edges.insert({info.scc_id[x], info.scc_id[y]});
        }
    info.condensation_edges = static_cast<int>(edges.size());
    return info;
}

namespace {

// shortest word leaving the SCC of x for good, least in graded-lex order
Word shortest_leaving_word(const MultiSystem& sys, int x, const SccInfo& scc) {
    // BFS for the leaving distance first, then scan only that grade
    std::vector<int> dist(sys.m, -1);
    std::deque<int> queue{x};
    dist[x] = 0;
    int leave_dist = -1;
    while (!queue.empty() && leave_dist == -1) {
        int y = queue.front();
        queue.pop_front();
        for (int i = 1; i <= sys.n; ++i) {
            int z = sys.apply(i, y);
            if (dist[z] != -1) continue;
            dist[z] = dist[y] + 1;
            if (scc.scc_id[z] != scc.scc_id[x]) {
                leave_dist = dist[z];
                break;
            }
            queue.push_back(z);
        }
    }
    if (leave_dist == -1) return Word{};  // terminal component, cannot leave

    // walks that stay inside the component until the last step; growing the
    // frontier with the new letter outermost keeps each grade in lex order
    std::vector<Word> frontier{Word{}};
    for (int len = 1; len <= leave_dist; ++len) {
        std::vector<Word> next;
        for (int i = 1; i <= sys.n; ++i) {
            for (const Word& w : frontier) {
                Word grown = concat(Word{{i}}, w);  // new letter applied last
                if (scc.scc_id[evaluate_word(sys, grown, x)] != scc.scc_id[x]) {
                    if (len == leave_dist) return grown;
                } else if (len < leave_dist) {
                    next.push_back(std::move(grown));
                }
            }
        }
        frontier = std::move(next);
    }
    return Word{};
}

}  // namespace

std::optional<WanderingCert> scc_wandering_certificate(const MultiSystem& sys) {
    SccInfo scc = strongly_connected_components(sys);
    if (scc.condensation_edges == 0) return std::nullopt;
    for (int x = 0; x < sys.m; ++x) {
        Word w = shortest_leaving_word(sys, x, scc);
        if (!w.empty()) {
            WanderingCert cert;
            cert.U = {x};
            cert.v = w;
            return cert;
        }
    }
    return std::nullopt;
}

std::optional<WanderingCert> find_wandering(const MultiSystem& sys) {
    for (int i = 1; i <= sys.n; ++i) {
        auto range = sys.range_of(i);
        if (static_cast<int>(range.size()) == sys.m) continue;
        std::vector<bool> hit(sys.m, false);
        for (int y : range) hit[y] = true;
        WanderingCert cert;
        for (int x = 0; x < sys.m; ++x)
            if (!hit[x]) cert.U.push_back(x);
        cert.u = Word{{i}};
        return cert;
    }
    return scc_wandering_certificate(sys);
}

SemisimpleVerdict is_semisimple(const MultiSystem& sys) {
    SemisimpleVerdict verdict;
    auto cert = find_wandering(sys);
    if (cert) {
        verdict.semisimple = false;
        verdict.certificate = std::move(cert);
        return verdict;
    }
    verdict.semisimple = true;
    StructuralProof proof;
    for (int i = 1; i <= sys.n; ++i) proof.surjective.push_back(sys.surjective(i));
    SccInfo scc = strongly_connected_components(sys);
    proof.sccs = scc.components;
    proof.condensation_edges = scc.condensation_edges;
    verdict.proof = std::move(proof);
    return verdict;
}

Polynomial NilpotentElement::as_polynomial(const MultiSystem& sys) const {
    // s_v h s_u = s_{vu} (h of map_u)
    return Polynomial::monomial(concat(v, u), compose(sys, h, u));
}

NilpotentElement nilpotent_element(const MultiSystem& sys, const WanderingCert& cert) {
    if (!is_wandering(sys, cert.U, cert.u, cert.v))
        throw std::invalid_argument("certificate set is not wandering for the given words");
    NilpotentElement out;
    out.v = cert.v;
    out.u = cert.u;
    out.h = indicator(sys.m, cert.U);
    return out;
}

}  // namespace mvdyn
