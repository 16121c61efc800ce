#pragma once

#include <charconv>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pforient/complex.hpp"
#include "pforient/errors.hpp"

namespace pforient {

/// Build a complex from faces given as directed vertex cycles. Edges are
/// created on first traversal (reference direction = traversal direction) and
/// matched on the second; suitable for simple polyhedra without loops or
/// parallel edges.
inline CellComplex from_vertex_cycles(std::string name, int vertex_count,
                                      const std::vector<std::vector<int>>& cycles) {
    CellComplex k;
    k.name = std::move(name);
    k.vertex_count = vertex_count;
    std::map<std::pair<int, int>, int> by_pair; // (min,max) endpoint -> edge id
    for (const auto& cyc : cycles) {
        Face f;
        f.id = k.face_count();
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const int a = cyc[i];
            const int b = cyc[(i + 1) % cyc.size()];
            if (a == b) throw InvalidParameter("vertex cycle repeats vertex " + std::to_string(a));
            const auto key = std::minmax(a, b);
            auto it = by_pair.find(key);
            if (it == by_pair.end()) {
                Edge e;
                e.id = k.edge_count();
                e.tail = a;
                e.head = b;
                by_pair.emplace(key, e.id);
                f.boundary.push_back({e.id, +1});
                k.edges.push_back(e);
            } else {
                const Edge& e = k.edges[it->second];
                if (e.tail == b && e.head == a) f.boundary.push_back({e.id, -1});
                else if (e.tail == a && e.head == b) f.boundary.push_back({e.id, +1});
                else throw InvalidParameter("edge {" + std::to_string(a) + "," + std::to_string(b) +
                                            "} reused with mismatched endpoints");
            }
        }
        k.faces.push_back(std::move(f));
    }
    return k;
}

inline CellComplex make_tetrahedron() {
    return from_vertex_cycles("tetrahedron", 4,
                              {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

inline CellComplex make_cube() {
    return from_vertex_cycles("cube", 8,
                              {{0, 3, 2, 1},
                               {4, 5, 6, 7},
                               {0, 1, 5, 4},
                               {1, 2, 6, 5},
                               {2, 3, 7, 6},
                               {3, 0, 4, 7}});
}

/// n-gonal prism: bottom cycle 0..n-1, top cycle n..2n-1, n quads between.
inline CellComplex make_prism(int n) {
    if (n < 3) throw InvalidParameter("prism requires n >= 3");
    std::vector<std::vector<int>> cycles;
    std::vector<int> bottom, top;
    for (int i = n - 1; i >= 0; --i) bottom.push_back(i);
    for (int i = 0; i < n; ++i) top.push_back(n + i);
    cycles.push_back(bottom);
    cycles.push_back(top);
    for (int i = 0; i < n; ++i)
        cycles.push_back({i, (i + 1) % n, n + (i + 1) % n, n + i});
    return from_vertex_cycles("prism_" + std::to_string(n), 2 * n, cycles);
}

/// m-by-n quadrangulated torus. Vertices are (i,j) with i < m, j < n; edge
/// ids: horizontal h(i,j) = i*n+j running (i,j)->(i,j+1), then vertical
/// v(i,j) = m*n + i*n+j running (i,j)->(i+1,j), indices wrapping. Face (i,j)
/// (row-major id i*n+j) walks h(i,j), v(i,j+1), h(i+1,j) reversed, v(i,j)
/// reversed. Degenerate m or n = 1 gives faces that visit an edge twice.
inline CellComplex make_torus_grid(int m, int n) {
    if (m < 1 || n < 1) throw InvalidParameter("torus_grid requires m,n >= 1");
    CellComplex k;
    k.name = "torus_grid_" + std::to_string(m) + "x" + std::to_string(n);
    k.vertex_count = m * n;
    auto vid = [n](int i, int j) { return i * n + j; };
    auto h = [n](int i, int j) { return i * n + j; };
    auto v = [m, n](int i, int j) { return m * n + i * n + j; };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            k.edges.push_back({h(i, j), vid(i, j), vid(i, (j + 1) % n)});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            k.edges.push_back({v(i, j), vid(i, j), vid((i + 1) % m, j)});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            Face f;
            f.id = i * n + j;
            f.boundary = {{h(i, j), +1},
                          {v(i, (j + 1) % n), +1},
                          {h((i + 1) % m, j), -1},
                          {v(i, j), -1}};
            k.faces.push_back(std::move(f));
        }
    return k;
}

/// Genus-g surface as a single 4g-gon with the standard edge identification:
/// the boundary word a_1 b_1 a_1' b_1' ... a_g b_g a_g' b_g' on one vertex.
inline CellComplex make_genus_polygon(int g) {
    if (g < 1) throw InvalidParameter("genus polygon requires g >= 1");
    CellComplex k;
    k.name = "genus_poly_" + std::to_string(g);
    k.vertex_count = 1;
    for (int e = 0; e < 2 * g; ++e) k.edges.push_back({e, 0, 0});
    Face f;
    f.id = 0;
    for (int i = 0; i < g; ++i) {
        f.boundary.push_back({2 * i, +1});
        f.boundary.push_back({2 * i + 1, +1});
        f.boundary.push_back({2 * i, -1});
        f.boundary.push_back({2 * i + 1, -1});
    }
    k.faces.push_back(std::move(f));
    return k;
}

namespace detail {
inline bool parse_int(std::string_view s, int& out) {
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}
} // namespace detail

/// Canonical builtin fixture names, as accepted by make_fixture.
inline std::vector<std::string> builtin_fixture_names() {
    return {"tetrahedron", "cube",          "prism_3",
            "torus_grid_2x2", "torus_grid_3x3", "genus_poly_2"};
}

/// Resolve a fixture name: tetrahedron, cube, square_torus, prism_N,
/// torus_grid_MxN, genus_poly_G.
inline CellComplex make_fixture(const std::string& name) {
    if (name == "tetrahedron") return make_tetrahedron();
    if (name == "cube") return make_cube();
    if (name == "square_torus") {
        CellComplex k = make_genus_polygon(1);
        k.name = "square_torus";
        return k;
    }
    using std::string_view;
    const string_view sv(name);
    int a = 0, b = 0;
    if (sv.starts_with("prism_") && detail::parse_int(sv.substr(6), a)) return make_prism(a);
    if (sv.starts_with("genus_poly_") && detail::parse_int(sv.substr(11), a))
        return make_genus_polygon(a);
    if (sv.starts_with("torus_grid_")) {
        const string_view rest = sv.substr(11);
        const std::size_t x = rest.find('x');
        if (x != string_view::npos && detail::parse_int(rest.substr(0, x), a) &&
            detail::parse_int(rest.substr(x + 1), b))
            return make_torus_grid(a, b);
    }
    throw InvalidParameter("unknown fixture '" + name +
                           "' (expected tetrahedron, cube, square_torus, prism_N, "
                           "torus_grid_MxN, or genus_poly_G)");
}

/// Split face `fid` along a chord between two boundary gaps g1 < g2, adding
/// one edge and one face. Preserves validity and genus.
inline void split_face(CellComplex& k, int fid, int g1, int g2) {
    Face& f = k.faces[fid];
    const int len = static_cast<int>(f.boundary.size());
    if (g1 < 0 || g2 <= g1 || g2 >= len)
        throw InvalidParameter("split_face: bad gap positions");
    const int chord = k.edge_count();
    k.edges.push_back({chord, std::nullopt, std::nullopt});
    std::vector<BoundarySlot> part1(f.boundary.begin() + g1, f.boundary.begin() + g2);
    std::vector<BoundarySlot> part2(f.boundary.begin() + g2, f.boundary.end());
    part2.insert(part2.end(), f.boundary.begin(), f.boundary.begin() + g1);
    part1.push_back({chord, -1});
    part2.push_back({chord, +1});
    f.boundary = std::move(part1);
    Face nf;
    nf.id = k.face_count();
    nf.boundary = std::move(part2);
    k.faces.push_back(std::move(nf));
}

/// Insert a vertex in the middle of edge `eid`, adding one edge and one
/// vertex. Preserves validity and genus.
inline void subdivide_edge(CellComplex& k, int eid) {
    const int w = k.vertex_count++;
    const int fresh = k.edge_count();
    Edge ne;
    ne.id = fresh;
    ne.tail = w;
    ne.head = k.edges[eid].head;
    k.edges[eid].head = w;
    k.edges.push_back(ne);
    for (Face& f : k.faces) {
        std::vector<BoundarySlot> nb;
        nb.reserve(f.boundary.size() + 1);
        for (const BoundarySlot& s : f.boundary) {
            if (s.edge != eid) {
                nb.push_back(s);
            } else if (s.sign == +1) {
                nb.push_back({eid, +1});
                nb.push_back({fresh, +1});
            } else {
                nb.push_back({fresh, -1});
                nb.push_back({eid, -1});
            }
        }
        f.boundary = std::move(nb);
    }
}

/// Apply `steps` random face splits / edge subdivisions. Each move adds one
/// edge; genus is invariant throughout.
inline void refine_randomly(CellComplex& k, int steps, std::mt19937& rng) {
    for (int t = 0; t < steps; ++t) {
        if (rng() % 2 == 0) {
            const int fid = static_cast<int>(rng() % k.faces.size());
            const int len = static_cast<int>(k.faces[fid].boundary.size());
            if (len < 2) {
                --t;
                continue;
            }
            int g1 = static_cast<int>(rng() % len);
            int g2 = static_cast<int>(rng() % len);
            while (g2 == g1) g2 = static_cast<int>(rng() % len);
            if (g1 > g2) std::swap(g1, g2);
            split_face(k, fid, g1, g2);
        } else {
            subdivide_edge(k, static_cast<int>(rng() % k.edges.size()));
        }
    }
}

inline CellComplex random_sphere(unsigned seed, int steps) {
    CellComplex k = make_tetrahedron();
    std::mt19937 rng(seed);
    refine_randomly(k, steps, rng);
    k.name = "random_sphere_seed" + std::to_string(seed) + "_steps" + std::to_string(steps);
    return k;
}

inline CellComplex random_torus(unsigned seed, int steps) {
    CellComplex k = make_torus_grid(2, 2);
    std::mt19937 rng(seed);
    refine_randomly(k, steps, rng);
    k.name = "random_torus_seed" + std::to_string(seed) + "_steps" + std::to_string(steps);
    return k;
}

} // namespace pforient
