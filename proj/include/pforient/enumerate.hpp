#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "pforient/complex.hpp"
#include "pforient/errors.hpp"
#include "pforient/gf2.hpp"
#include "pforient/incidence.hpp"

namespace pforient {

/// Direction assignment: one bit per edge id, 0 = reference direction,
/// 1 = reversed.
struct Orientation {
    std::string complex_name;
    std::vector<std::uint8_t> bits;

    bool operator==(const Orientation& o) const { return bits == o.bits; }
};

inline Orientation reference_orientation(const CellComplex& k) {
    return {k.name, std::vector<std::uint8_t>(k.edges.size(), 0)};
}

/// A slot is good when the assigned arrow opposes the direction the face's
/// walk induces on the edge.
inline bool slot_is_good(const Orientation& o, const BoundarySlot& s) {
    return (o.bits[s.edge] != 0) != (s.sign == -1);
}

inline int face_good_slots(const CellComplex& k, const Orientation& o, int face) {
    int good = 0;
    for (const BoundarySlot& s : k.faces[face].boundary)
        if (slot_is_good(o, s)) ++good;
    return good;
}

/// True when every surviving face has an odd number of good slots.
inline bool is_pfaffian(const PuncturedComplex& pk, const Orientation& o) {
    if (o.bits.size() != pk.base.edges.size())
        throw LengthMismatch("orientation has " + std::to_string(o.bits.size()) +
                             " bits for " + std::to_string(pk.base.edges.size()) + " edges");
    for (const Face& f : pk.base.faces)
        if (f.id != pk.removed_face && face_good_slots(pk.base, o, f.id) % 2 == 0)
            return false;
    return true;
}

/// Orientation -> slot-variable vector: variable = 1 iff the slot is good.
inline BitVec encode(const PfaffianSystem& sys, const Orientation& o) {
    if (static_cast<int>(o.bits.size()) != sys.total_edges)
        throw LengthMismatch("encode: orientation/edge count mismatch");
    BitVec x(sys.vars.size());
    for (std::size_t i = 0; i < sys.vars.size(); ++i) {
        const SlotVar& v = sys.vars[i];
        x.set(i, (o.bits[v.edge] != 0) != (v.sign == -1));
    }
    return x;
}

/// Invert encode. Edges with no surviving slot take their bits from
/// `uncovered_bits` (aligned with sys.uncovered_edges; missing entries are 0).
/// Throws Incoherent when the two slots of an edge imply opposite arrows.
inline Orientation decode(const PfaffianSystem& sys, const BitVec& x,
                          const std::vector<std::uint8_t>& uncovered_bits = {}) {
    if (x.size() != sys.vars.size()) throw LengthMismatch("decode: wrong vector length");
    Orientation o;
    o.bits.assign(sys.total_edges, 0);
    for (int e = 0; e < sys.total_edges; ++e) {
        const auto& vs = sys.edge_vars[e];
        if (vs.empty()) continue;
        std::uint8_t bit = 0, prev = 0;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const SlotVar& v = sys.vars[vs[i]];
            bit = static_cast<std::uint8_t>(x.get(vs[i]) != (v.sign == -1));
            if (i > 0 && bit != prev)
                throw Incoherent("slots of edge " + std::to_string(e) +
                                 " disagree on its direction");
            prev = bit;
        }
        o.bits[e] = bit;
    }
    for (std::size_t i = 0; i < sys.uncovered_edges.size(); ++i)
        if (i < uncovered_bits.size()) o.bits[sys.uncovered_edges[i]] = uncovered_bits[i];
    return o;
}

/// Exact power of two; the counts grow past 64 bits quickly, but only the
/// exponent is ever needed internally.
struct Pow2 {
    int exponent = 0;

    bool operator==(const Pow2&) const = default;

    /// Full decimal expansion of 2^exponent.
    std::string decimal() const {
        std::string digits = "1"; // little-endian decimal
        for (int t = 0; t < exponent; ++t) {
            int carry = 0;
            for (char& ch : digits) {
                const int d = (ch - '0') * 2 + carry;
                ch = static_cast<char>('0' + d % 10);
                carry = d / 10;
            }
            if (carry) digits.push_back(static_cast<char>('0' + carry));
        }
        return {digits.rbegin(), digits.rend()};
    }
};

/// Number of admissible orientations, computed from the linear system and
/// cross-checked against the Euler count v - 1 + 2g.
inline Pow2 count_pfaffian(const PuncturedComplex& pk) {
    const PfaffianSystem sys = build_system(pk);
    const int nullity = system_nullity(sys);
    const auto [chi, genus] = euler_and_genus(pk.base);
    (void)chi;
    const int euler_exponent = pk.base.vertex_count - 1 + 2 * genus;
    if (nullity != euler_exponent)
        throw FormulaMismatch("solution dimension " + std::to_string(nullity) +
                              " != v - 1 + 2g = " + std::to_string(euler_exponent));
    if (!solve_affine(sys.matrix, sys.rhs))
        throw FormulaMismatch("system is inconsistent; no orientation satisfies it");
    return Pow2{nullity};
}

struct EnumerationResult {
    std::vector<Orientation> items;
    bool truncated = false;
    int total_exponent = 0; // full count is 2^total_exponent
};

/// Walk the whole solution coset (particular xor subsets of the nullspace
/// basis, plus free bits of uncovered edges) in Gray-code order, decoding
/// each solution, stopping after `limit` orientations.
inline EnumerationResult enumerate_orientations(const PuncturedComplex& pk,
                                                std::uint64_t limit) {
    const PfaffianSystem sys = build_system(pk);
    EnumerationResult out;
    out.total_exponent = system_nullity(sys);
    const auto sol = solve_affine(sys.matrix, sys.rhs);
    if (!sol) throw FormulaMismatch("system is inconsistent; no orientation satisfies it");

    const std::size_t nb = sol->nullspace_basis.size();
    const std::size_t nu = sys.uncovered_edges.size();
    const std::size_t dim = nb + nu;
    BitVec x = sol->particular;
    std::vector<std::uint8_t> ubits(nu, 0);

    std::uint64_t emitted = 0;
    std::uint64_t total_steps = dim >= 63 ? ~std::uint64_t(0) : (std::uint64_t(1) << dim);
    for (std::uint64_t i = 0;; ++i) {
        if (emitted >= limit) {
            out.truncated = i < total_steps;
            break;
        }
        if (i >= total_steps) break;
        if (i > 0) {
            const unsigned j = static_cast<unsigned>(std::countr_zero(i));
            if (j < nb) x ^= sol->nullspace_basis[j];
            else ubits[j - nb] ^= 1;
        }
        Orientation o = decode(sys, x, ubits);
        o.complex_name = pk.base.name;
        out.items.push_back(std::move(o));
        ++emitted;
    }
    return out;
}

/// Count admissible orientations by sweeping all 2^d bit assignments with a
/// Gray-code walk, maintaining each face's good-slot parity incrementally.
/// Deliberately independent of the linear system.
inline std::uint64_t brute_force_count(const PuncturedComplex& pk, int cap = 24) {
    const int d = pk.base.edge_count();
    if (d > cap)
        throw TooLarge("brute force over 2^" + std::to_string(d) + " orientations exceeds cap 2^" +
                       std::to_string(cap));

    std::vector<int> face_index(pk.base.faces.size(), -1);
    int nf = 0;
    for (const Face& f : pk.base.faces)
        if (f.id != pk.removed_face) face_index[f.id] = nf++;

    // Per edge: the surviving faces whose parity toggles when the edge flips
    // (a face visiting the edge twice toggles twice, i.e. not at all).
    std::vector<std::vector<int>> toggles(d);
    std::vector<std::uint8_t> parity(nf, 0); // good-slot parity per face
    int odd_faces = 0;
    for (const Face& f : pk.base.faces) {
        if (f.id == pk.removed_face) continue;
        for (const BoundarySlot& s : f.boundary) {
            toggles[s.edge].push_back(face_index[f.id]);
            if (s.sign == -1) parity[face_index[f.id]] ^= 1; // good at reference orientation
        }
    }
    for (std::uint8_t p : parity) odd_faces += p;

    std::uint64_t count = (odd_faces == nf) ? 1 : 0;
    const std::uint64_t end = std::uint64_t(1) << d;
    for (std::uint64_t i = 1; i < end; ++i) {
        const int e = std::countr_zero(i); // Gray-code transition: flip edge e
        for (int fi : toggles[e]) {
            parity[fi] ^= 1;
            odd_faces += parity[fi] ? 1 : -1;
        }
        if (odd_faces == nf) ++count;
    }
    return count;
}

} // namespace pforient
