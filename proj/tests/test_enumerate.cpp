#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <set>

#include "oracle_helpers.hpp"
#include "pforient/generators.hpp"
#include "pforient/matching.hpp"

using namespace pforient;

namespace {

std::uint32_t bits_as_mask(const Orientation& o) {
    std::uint32_t m = 0;
    for (std::size_t e = 0; e < o.bits.size(); ++e)
        if (o.bits[e]) m |= std::uint32_t(1) << e;
    return m;
}

Orientation mask_as_bits(std::uint32_t m, int d) {
    Orientation o;
    o.bits.resize(d);
    for (int e = 0; e < d; ++e) o.bits[e] = (m >> e) & 1;
    return o;
}

/// All admissible orientations of a small complex, as bit masks.
std::set<std::uint32_t> brute_pfaffian_set(const PuncturedComplex& pk) {
    const int d = pk.base.edge_count();
    REQUIRE(d <= 16);
    std::set<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (std::uint32_t(1) << d); ++m)
        if (is_pfaffian(pk, mask_as_bits(m, d))) out.insert(m);
    return out;
}

} // namespace

TEST_CASE("good slots and parity on the tetrahedron") {
    const CellComplex k = make_tetrahedron();
    const Orientation ref = reference_orientation(k);
    // at the reference orientation a slot is good exactly when its sign is -1
    CHECK(face_good_slots(k, ref, 0) == 0); // face 0 walks all edges forward
    CHECK(face_good_slots(k, ref, 1) == 1);
    CHECK(face_good_slots(k, ref, 2) == 2);

    Orientation o = ref;
    o.bits[1] = 1; // edge 1 sits on faces 0 and 3 once each
    CHECK(face_good_slots(k, o, 0) == 1);
    CHECK(face_good_slots(k, o, 3) == 2);
}

TEST_CASE("admissibility is vacuous with no surviving face") {
    const PuncturedComplex pk = puncture(make_fixture("square_torus"), 0);
    for (std::uint32_t m = 0; m < 4; ++m) CHECK(is_pfaffian(pk, mask_as_bits(m, 2)));
}

TEST_CASE("orientation length is enforced") {
    const PuncturedComplex pk = puncture(make_tetrahedron(), 0);
    Orientation o;
    o.bits.assign(5, 0);
    REQUIRE_THROWS_AS(is_pfaffian(pk, o), LengthMismatch);
}

TEST_CASE("flipping one edge of an admissible orientation") {
    SECTION("breaks admissibility when every slot pair is split across faces") {
        for (const std::string& name : {"tetrahedron", "cube"}) {
            const PuncturedComplex pk = puncture(make_fixture(name), 0);
            const Orientation o = construct_orientation(pk);
            for (int e = 0; e < pk.base.edge_count(); ++e) {
                Orientation flipped = o;
                flipped.bits[e] ^= 1;
                CHECK_FALSE(is_pfaffian(pk, flipped));
            }
        }
    }
    SECTION("is harmless on an edge the face visits twice") {
        const PuncturedComplex pk = puncture(make_torus_grid(1, 2), 1);
        const Orientation o = construct_orientation(pk);
        Orientation both = o;
        both.bits[0] ^= 1; // both slots of edge 0 lie on face 0
        CHECK(is_pfaffian(pk, both));
        Orientation once = o;
        once.bits[2] ^= 1; // face 0 holds exactly one slot of edge 2
        CHECK_FALSE(is_pfaffian(pk, once));
    }
}

TEST_CASE("encode and decode are inverse bijections") {
    const PuncturedComplex pk = puncture(make_tetrahedron(), 3);
    const PfaffianSystem sys = build_system(pk);
    for (std::uint32_t m = 0; m < 64; ++m) {
        const Orientation o = mask_as_bits(m, 6);
        const BitVec x = encode(sys, o);
        // edge-coherence rows are satisfied by construction
        for (int r = static_cast<int>(sys.face_ids.size()); r < sys.rows(); ++r) {
            const BitVec row = sys.matrix.row(r);
            int parity = 0;
            for (std::size_t c = 0; c < x.size(); ++c)
                if (row.get(c) && x.get(c)) parity ^= 1;
            CHECK(parity == 1);
        }
        CHECK(decode(sys, x) == o);
    }
}

TEST_CASE("incoherent slot vectors are rejected") {
    const PuncturedComplex pk = puncture(make_tetrahedron(), 3);
    const PfaffianSystem sys = build_system(pk);
    BitVec x = encode(sys, reference_orientation(pk.base));
    REQUIRE(sys.edge_vars[0].size() == 2);
    x.flip(sys.edge_vars[0][0]); // the two slots of edge 0 now disagree
    REQUIRE_THROWS_AS(decode(sys, x), Incoherent);
}

TEST_CASE("uncovered edges take their bits from the side channel") {
    const PuncturedComplex pk = puncture(make_torus_grid(1, 2), 1);
    const PfaffianSystem sys = build_system(pk);
    REQUIRE(sys.uncovered_edges == std::vector<int>{1});
    const BitVec x = encode(sys, reference_orientation(pk.base));
    CHECK(decode(sys, x).bits[1] == 0);
    CHECK(decode(sys, x, {1}).bits[1] == 1);
}

TEST_CASE("power-of-two decimal expansion") {
    for (int k = 0; k <= 63; ++k)
        CHECK(Pow2{k}.decimal() == std::to_string(std::uint64_t(1) << k));
    CHECK(Pow2{70}.decimal() == "1180591620717411303424");
    CHECK(Pow2{100}.decimal() == "1267650600228229401496703205376");
}

TEST_CASE("orientation counts on the named fixtures") {
    struct Row {
        std::string name;
        int exponent;
        std::string decimal;
    };
    for (const Row& r : std::vector<Row>{{"tetrahedron", 3, "8"},
                                         {"cube", 7, "128"},
                                         {"prism_3", 5, "32"},
                                         {"torus_grid_2x2", 5, "32"},
                                         {"torus_grid_3x3", 10, "1024"},
                                         {"genus_poly_2", 4, "16"},
                                         {"square_torus", 2, "4"}}) {
        INFO(r.name);
        const Pow2 c = count_pfaffian(puncture(make_fixture(r.name), 0));
        CHECK(c.exponent == r.exponent);
        CHECK(c.decimal() == r.decimal);
    }
}

TEST_CASE("count does not depend on the removed face") {
    for (const std::string& n : builtin_fixture_names()) {
        const CellComplex k = make_fixture(n);
        const int expected = count_pfaffian(puncture(k, 0)).exponent;
        for (const Face& f : k.faces)
            CHECK(count_pfaffian(puncture(k, f.id)).exponent == expected);
    }
}

TEST_CASE("three counting methods agree on small fixtures") {
    for (const std::string& n :
         {"tetrahedron", "prism_3", "torus_grid_2x2", "genus_poly_2", "square_torus", "cube"}) {
        const CellComplex k = make_fixture(n);
        for (const Face& f : k.faces) {
            const PuncturedComplex pk = puncture(k, f.id);
            INFO(n << " minus face " << f.id);
            const std::uint64_t gray = brute_force_count(pk);
            const std::uint64_t naive = oracle::naive_pfaffian_count(pk);
            CHECK(gray == naive);
            CHECK(Pow2{count_pfaffian(pk).exponent} == Pow2{std::countr_zero(gray)});
            CHECK(std::popcount(gray) == 1); // always a power of two
        }
    }
    const PuncturedComplex degenerate = puncture(make_torus_grid(1, 2), 1);
    CHECK(brute_force_count(degenerate) == 8);
    CHECK(oracle::naive_pfaffian_count(degenerate) == 8);
    CHECK(count_pfaffian(degenerate).exponent == 3);
}

TEST_CASE("brute force refuses oversized sweeps") {
    REQUIRE_THROWS_AS(brute_force_count(puncture(make_torus_grid(5, 3), 0)), TooLarge);
    REQUIRE_THROWS_AS(brute_force_count(puncture(make_tetrahedron(), 0), 5), TooLarge);
}

TEST_CASE("counting rejects structurally broken complexes") {
    CellComplex k = make_tetrahedron();
    CellComplex k2 = k;
    k2.vertex_count = 8;
    for (const Edge& e : k.edges) {
        Edge e2 = e;
        e2.id += k.edge_count();
        k2.edges.push_back(e2);
    }
    for (const Face& f : k.faces) {
        Face f2 = f;
        f2.id += k.face_count();
        for (BoundarySlot& s : f2.boundary) s.edge += k.edge_count();
        k2.faces.push_back(f2);
    }
    // two disjoint spheres: no single-surface count exists
    REQUIRE_THROWS_AS(count_pfaffian(puncture(k2, 0)), Error);
}

TEST_CASE("enumeration walks the whole solution set") {
    SECTION("punctured tetrahedron") {
        const PuncturedComplex pk = puncture(make_tetrahedron(), 3);
        const EnumerationResult full = enumerate_orientations(pk, 100);
        CHECK(full.total_exponent == 3);
        CHECK_FALSE(full.truncated);
        REQUIRE(full.items.size() == 8);

        std::set<std::uint32_t> seen;
        for (const Orientation& o : full.items) {
            CHECK(is_pfaffian(pk, o));
            CHECK(o.complex_name == "tetrahedron");
            seen.insert(bits_as_mask(o));
        }
        CHECK(seen.size() == 8);
        CHECK(seen == brute_pfaffian_set(pk));
    }
    SECTION("truncation") {
        const PuncturedComplex pk = puncture(make_tetrahedron(), 3);
        const EnumerationResult cut = enumerate_orientations(pk, 3);
        CHECK(cut.items.size() == 3);
        CHECK(cut.truncated);
        const EnumerationResult exact = enumerate_orientations(pk, 8);
        CHECK(exact.items.size() == 8);
        CHECK_FALSE(exact.truncated);
    }
    SECTION("free bits of uncovered edges are enumerated too") {
        const PuncturedComplex pk = puncture(make_torus_grid(1, 2), 1);
        const EnumerationResult full = enumerate_orientations(pk, 100);
        CHECK(full.total_exponent == 3);
        REQUIRE(full.items.size() == 8);
        std::set<std::uint32_t> seen;
        for (const Orientation& o : full.items) {
            CHECK(is_pfaffian(pk, o));
            seen.insert(bits_as_mask(o));
        }
        CHECK(seen == brute_pfaffian_set(pk));
    }
    SECTION("no surviving face: every assignment is emitted") {
        const PuncturedComplex pk = puncture(make_fixture("square_torus"), 0);
        const EnumerationResult full = enumerate_orientations(pk, 100);
        REQUIRE(full.items.size() == 4);
        std::set<std::uint32_t> seen;
        for (const Orientation& o : full.items) seen.insert(bits_as_mask(o));
        CHECK(seen == std::set<std::uint32_t>{0, 1, 2, 3});
    }
}

TEST_CASE("admissible sets are affine subspaces over GF(2)") {
    for (const std::string& n :
         {"tetrahedron", "cube", "prism_3", "torus_grid_2x2", "genus_poly_2", "square_torus"}) {
        const CellComplex k = make_fixture(n);
        const PuncturedComplex pk = puncture(k, 0);
        const std::set<std::uint32_t> p = brute_pfaffian_set(pk);
        REQUIRE_FALSE(p.empty());
        const std::uint32_t base = *p.begin();
        // translate by one member; the result must be closed under xor
        std::set<std::uint32_t> t;
        for (std::uint32_t m : p) t.insert(m ^ base);
        bool closed = true;
        for (std::uint32_t a : t)
            for (std::uint32_t b : t)
                if (!t.count(a ^ b)) closed = false;
        INFO(n);
        CHECK(closed);
        CHECK(std::popcount(static_cast<std::uint64_t>(p.size())) == 1);
    }
}
