#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pforient/complex.hpp"
#include "pforient/enumerate.hpp"
#include "pforient/errors.hpp"
#include "pforient/gf2.hpp"
#include "pforient/incidence.hpp"

namespace pforient {

/// Directed bipartite graph on R (a row basis of the incidence matrix) and
/// the surviving faces, with an arc face -> r-edge whenever the edge lies on
/// the face's boundary. Balanced: |R| = number of surviving faces.
struct MatchGraph {
    std::vector<int> r_edges;                 // edge ids, ascending
    std::vector<int> faces;                   // surviving face ids, ascending
    std::vector<std::vector<int>> face_to_r;  // per face index: r indices, ascending
    std::vector<std::vector<int>> r_to_face;  // per r index: face indices, ascending

    int size() const { return static_cast<int>(r_edges.size()); }
};

/// Pairing of every face with one of its R-edges, stored as the permutation
/// r index -> face index.
struct PerfectMatching {
    std::vector<int> face_of_r;

    int r_of_face(int face_index) const {
        for (int i = 0; i < static_cast<int>(face_of_r.size()); ++i)
            if (face_of_r[i] == face_index) return i;
        return -1;
    }

    bool operator==(const PerfectMatching&) const = default;
};

/// Greedy lexicographic row basis of the mod-2 incidence matrix: scan edges
/// in id order, keep each row that is independent of those already kept.
/// The basis size must come out to the number of surviving faces.
inline std::vector<int> select_row_basis(const PuncturedComplex& pk) {
    const IncidenceMatrix im = incidence_matrix(pk);
    const Gf2Matrix rows = to_gf2(im.mat);
    std::vector<int> basis;
    std::vector<BitVec> reduced; // independent rows, echelon-reduced
    for (int e = 0; e < static_cast<int>(rows.rows()); ++e) {
        BitVec v = rows.row(e);
        for (const BitVec& b : reduced) {
            const std::size_t lead = b.first_set();
            if (v.get(lead)) v ^= b;
        }
        if (v.any()) {
            basis.push_back(e);
            reduced.push_back(std::move(v));
            // Keep rows in echelon form so reduction above stays correct.
            std::sort(reduced.begin(), reduced.end(),
                      [](const BitVec& a, const BitVec& b) { return a.first_set() < b.first_set(); });
        }
    }
    if (static_cast<int>(basis.size()) != pk.surviving_face_count())
        throw RankDeficient("incidence rank " + std::to_string(basis.size()) + " but " +
                            std::to_string(pk.surviving_face_count()) + " faces survive");
    return basis;
}

inline MatchGraph build_match_graph(const PuncturedComplex& pk, const std::vector<int>& r) {
    MatchGraph g;
    g.r_edges = r;
    g.faces = pk.surviving_faces();
    g.face_to_r.resize(g.faces.size());
    g.r_to_face.resize(r.size());
    std::vector<int> r_index(pk.base.edges.size(), -1);
    for (int i = 0; i < static_cast<int>(r.size()); ++i) r_index[r[i]] = i;
    for (int j = 0; j < static_cast<int>(g.faces.size()); ++j) {
        for (const BoundarySlot& s : pk.base.faces[g.faces[j]].boundary) {
            const int i = r_index[s.edge];
            if (i < 0) continue;
            // A face visiting the edge twice still yields one arc.
            if (g.face_to_r[j].empty() || g.face_to_r[j].back() != i) {
                if (std::find(g.face_to_r[j].begin(), g.face_to_r[j].end(), i) ==
                    g.face_to_r[j].end())
                    g.face_to_r[j].push_back(i);
            }
        }
        std::sort(g.face_to_r[j].begin(), g.face_to_r[j].end());
        for (int i : g.face_to_r[j]) g.r_to_face[i].push_back(j);
    }
    return g;
}

/// All perfect matchings by backtracking over r vertices in order, faces
/// tried ascending; results are in lexicographic order of face_of_r.
inline std::vector<PerfectMatching> enumerate_matchings(const MatchGraph& g,
                                                        std::uint64_t cap = 1000000) {
    const int n = g.size();
    std::vector<PerfectMatching> out;
    std::vector<int> face_of_r(n, -1);
    std::vector<char> face_used(n, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            if (out.size() >= cap)
                throw CapExceeded("more than " + std::to_string(cap) + " perfect matchings");
            out.push_back({face_of_r});
            return;
        }
        for (int j : g.r_to_face[i]) {
            if (face_used[j]) continue;
            face_used[j] = 1;
            face_of_r[i] = j;
            self(self, i + 1);
            face_used[j] = 0;
        }
        face_of_r[i] = -1;
    };
    rec(rec, 0);
    return out;
}

/// Square submatrix of the incidence matrix: rows the R-edges, columns the
/// surviving faces. Its determinant equals the signed matching sum.
inline IntMatrix boundary_submatrix(const MatchGraph& g, const PuncturedComplex& pk) {
    IntMatrix m(g.r_edges.size(), g.faces.size());
    for (std::size_t i = 0; i < g.r_edges.size(); ++i)
        for (std::size_t j = 0; j < g.faces.size(); ++j)
            m.at(i, j) = incidence_number(pk.base, g.faces[j], g.r_edges[i]);
    return m;
}

namespace detail {
inline int permutation_sign(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}
} // namespace detail

/// Sign of a matching: sign of its permutation times the product of the
/// incidence numbers of the matched pairs.
inline int matching_sign(const MatchGraph& g, const PerfectMatching& m,
                         const PuncturedComplex& pk) {
    int sign = detail::permutation_sign(m.face_of_r);
    for (int i = 0; i < g.size(); ++i) {
        const int inc = incidence_number(pk.base, g.faces[m.face_of_r[i]], g.r_edges[i]);
        if (inc == 0)
            throw ZeroIncidence("matched pair (face " + std::to_string(g.faces[m.face_of_r[i]]) +
                                ", edge " + std::to_string(g.r_edges[i]) +
                                ") has incidence number 0");
        sign *= inc;
    }
    return sign;
}

/// Face-level successor digraph of the matching-reversed graph: an arc
/// u -> w whenever the edge matched to w also lies on face u (u != w).
/// Cycles here are exactly the alternating cycles of the reversed graph.
inline std::vector<std::vector<int>> face_cycle_digraph(const MatchGraph& g,
                                                        const PerfectMatching& m) {
    std::vector<std::vector<int>> adj(g.faces.size());
    for (int i = 0; i < g.size(); ++i) {
        const int w = m.face_of_r[i];
        for (int u : g.r_to_face[i])
            if (u != w) adj[u].push_back(w);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

inline bool is_acyclic(const MatchGraph& g, const PerfectMatching& m) {
    const auto adj = face_cycle_digraph(g, m);
    const int n = static_cast<int>(adj.size());
    std::vector<int> indeg(n, 0);
    for (const auto& a : adj)
        for (int w : a) ++indeg[w];
    std::vector<int> queue;
    for (int u = 0; u < n; ++u)
        if (indeg[u] == 0) queue.push_back(u);
    int removed = 0;
    while (!queue.empty()) {
        const int u = queue.back();
        queue.pop_back();
        ++removed;
        for (int w : adj[u])
            if (--indeg[w] == 0) queue.push_back(w);
    }
    return removed == n;
}

/// All directed cycles of the face-level digraph, each listed in arc order.
/// Every face has at most one incoming arc (the edge matched to it lies on at
/// most one other face), so the cycles are vertex-disjoint.
inline std::vector<std::vector<int>> find_gm_cycles(const MatchGraph& g,
                                                    const PerfectMatching& m) {
    const int n = static_cast<int>(g.faces.size());
    // pred[w] = the unique u with an arc u -> w, if any.
    std::vector<int> pred(n, -1);
    for (int i = 0; i < g.size(); ++i) {
        const int w = m.face_of_r[i];
        for (int u : g.r_to_face[i])
            if (u != w) pred[w] = u;
    }
    std::vector<std::vector<int>> cycles;
    std::vector<int> color(n, 0); // 0 new, 1 on current walk, 2 finished
    for (int start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        std::vector<int> walk;
        int w = start;
        while (w != -1 && color[w] == 0) {
            color[w] = 1;
            walk.push_back(w);
            w = pred[w];
        }
        if (w != -1 && color[w] == 1) {
            // walk re-entered itself: the tail from w onward is a cycle,
            // recorded against the predecessor direction to give arc order.
            const auto it = std::find(walk.begin(), walk.end(), w);
            std::vector<int> cyc(it, walk.end());
            std::reverse(cyc.begin(), cyc.end());
            cycles.push_back(std::move(cyc));
        }
        for (int u : walk) color[u] = 2;
    }
    return cycles;
}

/// Reverse the first cycle (keyed by its sorted face-id tuple) of the
/// matching's alternating-cycle set: each cycle face takes over the matched
/// edge of its successor. Sign-reversing, self-inverse, fixed-point-free.
inline PerfectMatching involution(const MatchGraph& g, const PerfectMatching& m) {
    auto cycles = find_gm_cycles(g, m);
    if (cycles.empty()) throw NotCyclic("matching has no alternating cycle");

    auto key_of = [&g](const std::vector<int>& cyc) {
        std::vector<int> ids;
        ids.reserve(cyc.size());
        for (int j : cyc) ids.push_back(g.faces[j]);
        std::sort(ids.begin(), ids.end());
        return ids;
    };
    std::size_t best = 0;
    std::vector<int> best_key = key_of(cycles[0]);
    for (std::size_t c = 1; c < cycles.size(); ++c) {
        auto key = key_of(cycles[c]);
        if (key < best_key) {
            best_key = std::move(key);
            best = c;
        }
    }
    const std::vector<int>& cyc = cycles[best]; // arc order: cyc[t] -> cyc[t+1]

    std::vector<int> r_of_face(g.faces.size(), -1);
    for (int i = 0; i < g.size(); ++i) r_of_face[m.face_of_r[i]] = i;
    PerfectMatching out = m;
    const std::size_t k = cyc.size();
    for (std::size_t t = 0; t < k; ++t) {
        // face cyc[t] adopts the edge matched to its successor on the cycle
        const int successor = cyc[(t + 1) % k];
        out.face_of_r[r_of_face[successor]] = cyc[t];
    }
    return out;
}

struct PeelResult {
    PerfectMatching matching;
    std::vector<int> peel_faces; // face indices in processing order
};

/// Deterministic greedy peel: repeatedly take the lowest-index face whose
/// boundary holds exactly one live R-edge, match the two, and delete both.
/// Such a face always exists for valid inputs, and the result is acyclic.
inline PeelResult find_acyclic_matching(const MatchGraph& g) {
    const int n = g.size();
    PeelResult res;
    res.matching.face_of_r.assign(n, -1);
    std::vector<char> r_live(n, 1), face_live(n, 1);
    std::vector<int> live_count(n, 0);
    for (int j = 0; j < n; ++j) live_count[j] = static_cast<int>(g.face_to_r[j].size());
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int j = 0; j < n; ++j)
            if (face_live[j] && live_count[j] == 1) {
                pick = j;
                break;
            }
        if (pick == -1)
            throw PeelingStuck("no live face with exactly one live basis edge after " +
                               std::to_string(step) + " steps");
        int edge = -1;
        for (int i : g.face_to_r[pick])
            if (r_live[i]) edge = i;
        res.matching.face_of_r[edge] = pick;
        res.peel_faces.push_back(pick);
        face_live[pick] = 0;
        r_live[edge] = 0;
        for (int j : g.r_to_face[edge])
            if (face_live[j]) --live_count[j];
    }
    return res;
}

/// Build one admissible orientation constructively: start from the reference
/// directions and walk the peel order, flipping each face's matched edge
/// exactly when the face still has an even number of good slots. A flipped
/// edge never lies on an earlier-processed face, so fixed parities stay
/// fixed; this is re-checked as the flips happen.
inline Orientation construct_orientation(const PuncturedComplex& pk) {
    const std::vector<int> r = select_row_basis(pk);
    const MatchGraph g = build_match_graph(pk, r);
    const PeelResult peel = find_acyclic_matching(g);

    Orientation o = reference_orientation(pk.base);
    std::vector<char> processed(g.faces.size(), 0);
    for (int j : peel.peel_faces) {
        const int fid = g.faces[j];
        if (face_good_slots(pk.base, o, fid) % 2 == 0) {
            const int edge = g.r_edges[peel.matching.r_of_face(j)];
            for (int u : g.r_to_face[peel.matching.r_of_face(j)])
                if (processed[u])
                    throw Error("internal: flip of edge " + std::to_string(edge) +
                                " would disturb finished face " + std::to_string(g.faces[u]));
            o.bits[edge] ^= 1;
        }
        processed[j] = 1;
    }
    if (!is_pfaffian(pk, o))
        throw Error("internal: constructed orientation failed the parity check");
    return o;
}

/// Graphviz rendering of the bipartite graph; with a matching, matched arcs
/// are reversed and highlighted (the matching-reversed graph).
inline std::string to_dot(const MatchGraph& g, const PerfectMatching* m = nullptr) {
    std::string s = "digraph match_graph {\n  rankdir=LR;\n";
    for (int j = 0; j < static_cast<int>(g.faces.size()); ++j)
        s += "  f" + std::to_string(g.faces[j]) + " [shape=box];\n";
    for (int i = 0; i < g.size(); ++i)
        s += "  e" + std::to_string(g.r_edges[i]) + " [shape=circle];\n";
    for (int j = 0; j < static_cast<int>(g.faces.size()); ++j) {
        for (int i : g.face_to_r[j]) {
            const bool matched = m && m->face_of_r[i] == j;
            const std::string fv = "f" + std::to_string(g.faces[j]);
            const std::string ev = "e" + std::to_string(g.r_edges[i]);
            if (matched)
                s += "  " + ev + " -> " + fv + " [color=red, penwidth=2];\n";
            else
                s += "  " + fv + " -> " + ev + ";\n";
        }
    }
    s += "}\n";
    return s;
}

} // namespace pforient
