#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pforient/complex.hpp"
#include "pforient/errors.hpp"
#include "pforient/gf2.hpp"

namespace pforient {

/// Sum of slot signs of `edge` on the boundary of `face`: +1 / -1 when the
/// face traverses the edge once with / against its reference direction, 0
/// when absent or visited twice with cancelling signs.
inline int incidence_number(const CellComplex& k, int face, int edge) {
    int n = 0;
    for (const BoundarySlot& s : k.faces[face].boundary)
        if (s.edge == edge) n += s.sign;
    return n;
}

/// Integer incidence matrix: rows are edges in id order, columns the listed
/// faces. For a punctured complex the removed face's column is dropped.
struct IncidenceMatrix {
    IntMatrix mat;
    std::vector<int> col_faces;
};

namespace detail {
inline IncidenceMatrix incidence_from(const CellComplex& k, int skip_face) {
    IncidenceMatrix im;
    for (const Face& f : k.faces)
        if (f.id != skip_face) im.col_faces.push_back(f.id);
    im.mat = IntMatrix(k.edges.size(), im.col_faces.size());
    for (std::size_t j = 0; j < im.col_faces.size(); ++j)
        for (const BoundarySlot& s : k.faces[im.col_faces[j]].boundary)
            im.mat.at(s.edge, j) += s.sign;
    return im;
}
} // namespace detail

inline IncidenceMatrix incidence_matrix(const CellComplex& k) {
    return detail::incidence_from(k, -1);
}

inline IncidenceMatrix incidence_matrix(const PuncturedComplex& pk) {
    return detail::incidence_from(pk.base, pk.removed_face);
}

/// One unknown per boundary slot of a surviving face: "does the assigned
/// arrow on this edge oppose the direction this face's walk induces?"
struct SlotVar {
    int face = -1; // surviving face id
    int slot = -1; // position within that face's boundary list
    int edge = -1;
    int sign = 0;  // slot sign, copied for convenience
};

/// Linear system over GF(2) whose solutions correspond to the admissible
/// orientations: one odd-parity equation per surviving face, one coherence
/// equation tying the two surviving slots of each internal edge, right-hand
/// side all ones.
struct PfaffianSystem {
    Gf2Matrix matrix; // rows: face equations then edge equations
    BitVec rhs;
    std::vector<SlotVar> vars;        // column order: faces by id, slots in walk order
    std::vector<int> face_ids;        // face-equation row labels
    std::vector<int> edge_row_edges;  // edge-equation row labels (internal edges, ascending)
    std::vector<std::vector<int>> edge_vars; // per edge id: its surviving slots' var indices
    std::vector<int> uncovered_edges; // edges with no surviving slot (free orientation bits)
    int total_edges = 0;

    int rows() const { return static_cast<int>(matrix.rows()); }
    int cols() const { return static_cast<int>(matrix.cols()); }
};

inline PfaffianSystem build_system(const PuncturedComplex& pk) {
    const CellComplex& k = pk.base;
    PfaffianSystem sys;
    sys.total_edges = k.edge_count();
    sys.edge_vars.resize(k.edges.size());

    for (const Face& f : k.faces) {
        if (f.id == pk.removed_face) continue;
        sys.face_ids.push_back(f.id);
        for (int pos = 0; pos < static_cast<int>(f.boundary.size()); ++pos) {
            const BoundarySlot& s = f.boundary[pos];
            sys.edge_vars[s.edge].push_back(static_cast<int>(sys.vars.size()));
            sys.vars.push_back({f.id, pos, s.edge, s.sign});
        }
    }
    for (int e = 0; e < k.edge_count(); ++e) {
        if (sys.edge_vars[e].size() == 2) sys.edge_row_edges.push_back(e);
        else if (sys.edge_vars[e].empty()) sys.uncovered_edges.push_back(e);
    }

    const std::size_t rows = sys.face_ids.size() + sys.edge_row_edges.size();
    sys.matrix = Gf2Matrix(rows, sys.vars.size());
    sys.rhs = BitVec::ones(rows);
    std::size_t r = 0;
    std::size_t var = 0;
    for (int fid : sys.face_ids) {
        const std::size_t len = k.faces[fid].boundary.size();
        for (std::size_t c = 0; c < len; ++c) sys.matrix.set(r, var + c, true);
        var += len;
        ++r;
    }
    for (int e : sys.edge_row_edges) {
        sys.matrix.set(r, sys.edge_vars[e][0], true);
        sys.matrix.set(r, sys.edge_vars[e][1], true);
        ++r;
    }
    return sys;
}

/// Dimension of the solution space, counting the free bits of edges with no
/// surviving slot. Always d - p + 1 for a valid complex; anything else throws.
inline int system_nullity(const PfaffianSystem& sys) {
    const int nullity = sys.cols() - static_cast<int>(rank_gf2(sys.matrix)) +
                        static_cast<int>(sys.uncovered_edges.size());
    const int expected = sys.total_edges - static_cast<int>(sys.face_ids.size());
    if (nullity != expected)
        throw NullityMismatch("solution-space dimension " + std::to_string(nullity) +
                              " but d - p + 1 = " + std::to_string(expected));
    return nullity;
}

/// Outcome of the structured reduction: columns regrouped as
/// [one column per covered edge | one column per internal edge], rows still
/// [face equations | edge equations], giving the block matrix
/// [ B 0 ; 0 I ] with B the mod-2 incidence transpose over covered edges.
struct ReducedSystem {
    Gf2Matrix a_prime;
    std::vector<int> covered_edges;  // left-block column labels (edge ids, ascending)
    std::vector<int> identity_edges; // right-block column labels (= internal edges)
    int identity_order = 0;
};

/// Run the reduction schedule (add each internal edge's later slot column
/// into its earlier one, then clear the later columns from the face rows) and
/// verify the resulting block structure entry by entry.
inline ReducedSystem reduce_system(const PfaffianSystem& sys, const PuncturedComplex& pk) {
    Gf2Matrix a = sys.matrix;
    const std::size_t nf = sys.face_ids.size();

    std::vector<int> first_var;        // per covered edge: earlier slot var
    std::vector<int> later_var;        // per internal edge: later slot var
    std::vector<int> first_of_internal; // per internal edge: its earlier slot var
    ReducedSystem red;
    for (int e = 0; e < sys.total_edges; ++e) {
        const auto& vs = sys.edge_vars[e];
        if (vs.empty()) continue;
        red.covered_edges.push_back(e);
        first_var.push_back(vs[0]);
        if (vs.size() == 2) {
            red.identity_edges.push_back(e);
            later_var.push_back(vs[1]);
            first_of_internal.push_back(vs[0]);
        }
    }
    red.identity_order = static_cast<int>(red.identity_edges.size());

    // Column stage: col[first] += col[later] for every internal edge.
    for (std::size_t i = 0; i < later_var.size(); ++i)
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (a.get(r, later_var[i]))
                a.set(r, first_of_internal[i], !a.get(r, first_of_internal[i]));

    // Row stage: each edge row is now a unit vector at its later slot; add it
    // into every face row holding that slot.
    for (std::size_t i = 0; i < later_var.size(); ++i)
        for (std::size_t r = 0; r < nf; ++r)
            if (a.get(r, later_var[i])) a.xor_row(r, nf + i);

    // Regroup columns: covered edges' first slots, then internal edges' later slots.
    red.a_prime = Gf2Matrix(a.rows(), first_var.size() + later_var.size());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < first_var.size(); ++c)
            red.a_prime.set(r, c, a.get(r, first_var[c]));
        for (std::size_t c = 0; c < later_var.size(); ++c)
            red.a_prime.set(r, first_var.size() + c, a.get(r, later_var[c]));
    }
    // Columns outside the regrouping must not exist: every variable is some
    // covered edge's first or later slot.
    if (first_var.size() + later_var.size() != a.cols())
        throw ReductionMismatch("slot variables do not partition into first/later slots");

    // Verify blocks.
    const std::size_t nb = first_var.size();
    for (std::size_t r = 0; r < red.a_prime.rows(); ++r)
        for (std::size_t c = 0; c < red.a_prime.cols(); ++c) {
            bool expect = false;
            if (r < nf && c < nb) {
                const int fid = sys.face_ids[r];
                const int eid = red.covered_edges[c];
                int visits = 0;
                for (const BoundarySlot& s : pk.base.faces[fid].boundary)
                    if (s.edge == eid) ++visits;
                expect = visits % 2 != 0; // mod-2 incidence number
            } else if (r >= nf && c >= nb) {
                expect = (r - nf) == (c - nb);
            }
            if (red.a_prime.get(r, c) != expect)
                throw ReductionMismatch("block structure failed at row " + std::to_string(r) +
                                        ", column " + std::to_string(c));
        }
    if (rank_gf2(red.a_prime) != rank_gf2(sys.matrix))
        throw ReductionMismatch("reduction changed the rank");
    return red;
}

} // namespace pforient
