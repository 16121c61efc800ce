#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "pforient/errors.hpp"

namespace pforient {

/// One appearance of an edge on a face's cyclic boundary walk. sign = +1 when
/// the walk traverses the edge along its stored reference direction, -1 when
/// against it.
struct BoundarySlot {
    int edge = -1;
    int sign = 0;

    bool operator==(const BoundarySlot&) const = default;
};

/// Reference-directed edge. Endpoints are informational: the algorithms only
/// consume boundary slots, so loops and parallel edges are fine.
struct Edge {
    int id = -1;
    std::optional<int> tail;
    std::optional<int> head;

    bool operator==(const Edge&) const = default;
};

struct Face {
    int id = -1;
    std::vector<BoundarySlot> boundary;

    bool operator==(const Face&) const = default;
};

/// Closed orientable cellulated surface: every edge appears in exactly two
/// boundary slots (possibly on the same face) carrying opposite signs, and
/// the faces form a single component under shared-edge adjacency.
struct CellComplex {
    std::string name;
    int vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<Face> faces;

    int edge_count() const { return static_cast<int>(edges.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }

    bool operator==(const CellComplex&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    /// Non-fatal oddities, e.g. an edge visited twice by the same face (its
    /// incidence number degenerates to 0).
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
};

/// Faces sharing at least one edge are adjacent. Result is indexed by face id.
inline std::vector<std::vector<int>> face_adjacency(const CellComplex& k) {
    // slot_faces[e] collects the faces whose boundaries visit edge e.
    std::vector<std::vector<int>> slot_faces(k.edges.size());
    for (const Face& f : k.faces)
        for (const BoundarySlot& s : f.boundary)
            if (s.edge >= 0 && s.edge < k.edge_count()) slot_faces[s.edge].push_back(f.id);

    std::vector<std::vector<int>> adj(k.faces.size());
    for (const auto& fs : slot_faces) {
        if (fs.size() != 2) continue;
        if (fs[0] != fs[1]) {
            adj[fs[0]].push_back(fs[1]);
            adj[fs[1]].push_back(fs[0]);
        }
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

/// Check every structural invariant; violations are reported, never thrown.
inline ValidationReport validate(const CellComplex& k) {
    ValidationReport rep;
    auto bad = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

    if (k.vertex_count < 0) bad("vertex_count is negative");
    for (int i = 0; i < k.edge_count(); ++i)
        if (k.edges[i].id != i)
            bad("edge at position " + std::to_string(i) + " has id " +
                std::to_string(k.edges[i].id) + " (ids must be dense, in order)");
    for (int i = 0; i < k.face_count(); ++i)
        if (k.faces[i].id != i)
            bad("face at position " + std::to_string(i) + " has id " +
                std::to_string(k.faces[i].id) + " (ids must be dense, in order)");

    bool slots_ok = true;
    for (const Face& f : k.faces) {
        if (f.boundary.empty()) bad("face " + std::to_string(f.id) + " has empty boundary");
        for (const BoundarySlot& s : f.boundary) {
            if (s.edge < 0 || s.edge >= k.edge_count()) {
                bad("face " + std::to_string(f.id) + " references unknown edge " +
                    std::to_string(s.edge));
                slots_ok = false;
            }
            if (s.sign != 1 && s.sign != -1) {
                bad("face " + std::to_string(f.id) + " slot on edge " + std::to_string(s.edge) +
                    " has sign " + std::to_string(s.sign) + " (must be +1 or -1)");
                slots_ok = false;
            }
        }
    }
    if (!slots_ok) return rep; // per-edge accounting below would misfire

    std::vector<int> slot_count(k.edges.size(), 0);
    std::vector<int> sign_sum(k.edges.size(), 0);
    std::vector<int> face_visits(k.edges.size(), -1); // last face seen, for the warning
    for (const Face& f : k.faces) {
        for (const BoundarySlot& s : f.boundary) {
            ++slot_count[s.edge];
            sign_sum[s.edge] += s.sign;
            if (face_visits[s.edge] == f.id)
                rep.warnings.push_back("edge " + std::to_string(s.edge) + " is visited twice by face " +
                                       std::to_string(f.id) + " (incidence number 0)");
            face_visits[s.edge] = f.id;
        }
    }
    for (int e = 0; e < k.edge_count(); ++e) {
        if (slot_count[e] != 2)
            bad("edge " + std::to_string(e) + " appears in " + std::to_string(slot_count[e]) +
                " slot(s), expected exactly 2");
        else if (sign_sum[e] != 0)
            bad("edge " + std::to_string(e) + " has two slots of equal sign (orientability violated)");
    }

    if (k.face_count() > 0) {
        const auto adj = face_adjacency(k);
        std::vector<char> seen(k.faces.size(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            const int f = q.front();
            q.pop();
            for (int g : adj[f])
                if (!seen[g]) {
                    seen[g] = 1;
                    q.push(g);
                }
        }
        for (int f = 0; f < k.face_count(); ++f)
            if (!seen[f])
                bad("face " + std::to_string(f) + " is disconnected from face 0 in the face-adjacency graph");
    }
    return rep;
}

/// Euler characteristic chi = v - d + p and genus g with chi = 2 - 2g.
/// Throws when the numbers cannot come from a closed orientable surface.
inline std::pair<int, int> euler_and_genus(const CellComplex& k) {
    const int chi = k.vertex_count - k.edge_count() + k.face_count();
    if (chi % 2 != 0)
        throw NonOrientableOrInvalid("Euler characteristic " + std::to_string(chi) + " is odd");
    if (chi > 2)
        throw NonOrientableOrInvalid("Euler characteristic " + std::to_string(chi) + " exceeds 2");
    return {chi, (2 - chi) / 2};
}

/// Closed complex with one face removed. An edge is external when at least one
/// of its two slots lay on the removed face; internal edges keep both slots.
struct PuncturedComplex {
    CellComplex base;
    int removed_face = -1;
    std::vector<int> internal_edges; // ascending edge ids
    std::vector<int> external_edges; // ascending edge ids

    bool is_internal(int edge) const {
        return std::binary_search(internal_edges.begin(), internal_edges.end(), edge);
    }

    /// Ids of the faces that survive the puncture, ascending.
    std::vector<int> surviving_faces() const {
        std::vector<int> out;
        out.reserve(base.faces.size() - 1);
        for (const Face& f : base.faces)
            if (f.id != removed_face) out.push_back(f.id);
        return out;
    }

    int surviving_face_count() const { return base.face_count() - 1; }

    /// Total boundary slots over surviving faces (the variable count s).
    int slot_count() const {
        int s = 0;
        for (const Face& f : base.faces)
            if (f.id != removed_face) s += static_cast<int>(f.boundary.size());
        return s;
    }
};

inline PuncturedComplex puncture(const CellComplex& k, int face) {
    if (face < 0 || face >= k.face_count())
        throw UnknownFace("no face with id " + std::to_string(face));
    PuncturedComplex pk;
    pk.base = k;
    pk.removed_face = face;
    std::vector<char> external(k.edges.size(), 0);
    for (const BoundarySlot& s : k.faces[face].boundary) external[s.edge] = 1;
    for (int e = 0; e < k.edge_count(); ++e)
        (external[e] ? pk.external_edges : pk.internal_edges).push_back(e);
    return pk;
}

} // namespace pforient
