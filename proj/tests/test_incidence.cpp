#include <catch2/catch_amalgamated.hpp>

#include "oracle_helpers.hpp"
#include "pforient/generators.hpp"
#include "pforient/incidence.hpp"

using namespace pforient;

namespace {

std::vector<CellComplex> fixture_sweep() {
    std::vector<CellComplex> out;
    for (const std::string& n : builtin_fixture_names()) out.push_back(make_fixture(n));
    out.push_back(make_fixture("square_torus"));
    out.push_back(make_torus_grid(1, 2));
    return out;
}

} // namespace

TEST_CASE("incidence numbers on the tetrahedron") {
    const CellComplex k = make_tetrahedron();
    // face 0 walks edges 0,1,2 along their reference directions
    CHECK(incidence_number(k, 0, 0) == 1);
    CHECK(incidence_number(k, 0, 1) == 1);
    CHECK(incidence_number(k, 0, 3) == 0);
    // face 1 walks edge 0 against it
    CHECK(incidence_number(k, 1, 0) == -1);
}

TEST_CASE("a face visiting an edge twice has incidence number zero") {
    const CellComplex k = make_torus_grid(1, 2);
    CHECK(incidence_number(k, 0, 0) == 0);
    CHECK(incidence_number(k, 1, 1) == 0);
}

TEST_CASE("closed-complex incidence columns cancel") {
    for (const CellComplex& k : fixture_sweep()) {
        const IncidenceMatrix im = incidence_matrix(k);
        REQUIRE(im.mat.rows() == static_cast<std::size_t>(k.edge_count()));
        REQUIRE(im.mat.cols() == static_cast<std::size_t>(k.face_count()));
        for (std::size_t e = 0; e < im.mat.rows(); ++e) {
            long long sum = 0;
            for (std::size_t j = 0; j < im.mat.cols(); ++j) sum += im.mat.at(e, j);
            CHECK(sum == 0); // the two slots of each edge carry opposite signs
        }
    }
}

TEST_CASE("punctured tetrahedron incidence matrix") {
    const IncidenceMatrix im = incidence_matrix(puncture(make_tetrahedron(), 3));
    REQUIRE(im.mat.rows() == 6);
    REQUIRE(im.mat.cols() == 3);
    CHECK(im.col_faces == std::vector<int>{0, 1, 2});
    for (std::size_t j = 0; j < 3; ++j) {
        int nonzero = 0;
        for (std::size_t e = 0; e < 6; ++e)
            if (im.mat.at(e, j) != 0) ++nonzero;
        CHECK(nonzero == 3); // triangles touch three distinct edges
    }
}

TEST_CASE("punctured incidence matrices have full column rank") {
    for (const CellComplex& k : fixture_sweep()) {
        for (const Face& f : k.faces) {
            const PuncturedComplex pk = puncture(k, f.id);
            const IncidenceMatrix im = incidence_matrix(pk);
            INFO(k.name << " minus face " << f.id);

            // over GF(2), twice against independent implementations
            const Gf2Matrix g = to_gf2(im.mat);
            CHECK(rank_gf2(g) == static_cast<std::size_t>(k.face_count() - 1));
            CHECK(oracle::naive_rank(oracle::unpack(g)) == k.face_count() - 1);
        }
    }
}

TEST_CASE("system shape on the punctured tetrahedron") {
    const PuncturedComplex pk = puncture(make_tetrahedron(), 3);
    const PfaffianSystem sys = build_system(pk);
    CHECK(sys.cols() == 9);
    CHECK(sys.rows() == 6); // 3 face equations + 3 edge equations
    CHECK(sys.face_ids == std::vector<int>{0, 1, 2});
    CHECK(sys.edge_row_edges == std::vector<int>{0, 2, 3});
    CHECK(sys.uncovered_edges.empty());
    CHECK(sys.rhs.popcount() == 6);

    // face rows weigh |boundary|, edge rows weigh exactly 2
    for (int r = 0; r < 3; ++r) CHECK(sys.matrix.row(r).popcount() == 3);
    for (int r = 3; r < 6; ++r) CHECK(sys.matrix.row(r).popcount() == 2);

    // slot variables appear in face-id, walk order
    CHECK(sys.vars.size() == 9);
    CHECK(sys.vars[0].face == 0);
    CHECK(sys.vars[0].slot == 0);
    CHECK(sys.vars[8].face == 2);
    CHECK(sys.vars[8].edge == 3);
}

TEST_CASE("system shape on the 3x3 torus grid") {
    const PfaffianSystem sys = build_system(puncture(make_torus_grid(3, 3), 8));
    CHECK(sys.cols() == 32);
    CHECK(sys.rows() == 22); // 8 face equations + 14 edge equations
    CHECK(sys.face_ids.size() == 8);
    CHECK(sys.edge_row_edges.size() == 14);
    for (int r = 0; r < 8; ++r) CHECK(sys.matrix.row(r).popcount() == 4);
    for (int r = 8; r < 22; ++r) CHECK(sys.matrix.row(r).popcount() == 2);
}

TEST_CASE("edges losing both slots become free bits") {
    // removing face 1 of the 1x2 torus grid uncovers edge 1 entirely
    const PfaffianSystem sys = build_system(puncture(make_torus_grid(1, 2), 1));
    CHECK(sys.uncovered_edges == std::vector<int>{1});
    CHECK(sys.cols() == 4);
    CHECK(sys.rows() == 2); // 1 face equation + 1 edge equation (edge 0)
    CHECK(sys.edge_row_edges == std::vector<int>{0});
}

TEST_CASE("solution-space dimension equals d - p + 1") {
    struct Row {
        std::string name;
        int face;
        int nullity;
    };
    for (const Row& r : std::vector<Row>{{"tetrahedron", 3, 3},
                                         {"torus_grid_3x3", 8, 10},
                                         {"square_torus", 0, 2},
                                         {"cube", 0, 7},
                                         {"prism_3", 2, 5},
                                         {"genus_poly_2", 0, 4}}) {
        INFO(r.name);
        const PfaffianSystem sys = build_system(puncture(make_fixture(r.name), r.face));
        CHECK(system_nullity(sys) == r.nullity);
    }
    // the degenerate grid needs its uncovered-edge bit to reach d - p + 1 = 3
    CHECK(system_nullity(build_system(puncture(make_torus_grid(1, 2), 1))) == 3);
}

TEST_CASE("nullity does not depend on the removed face") {
    for (const CellComplex& k : fixture_sweep()) {
        int expected = -1;
        for (const Face& f : k.faces) {
            const int n = system_nullity(build_system(puncture(k, f.id)));
            if (expected < 0) expected = n;
            CHECK(n == expected);
        }
    }
}

TEST_CASE("exhaustive solution count matches the rank bound") {
    for (const std::string& name : {"tetrahedron", "square_torus"}) {
        for (int f = 0; f < make_fixture(name).face_count(); ++f) {
            const PfaffianSystem sys = build_system(puncture(make_fixture(name), f));
            REQUIRE(sys.cols() <= 16);
            const std::uint64_t naive = oracle::naive_solution_count(sys.matrix, sys.rhs);
            const std::size_t rank = rank_gf2(sys.matrix);
            CHECK(naive == std::uint64_t(1) << (sys.cols() - static_cast<int>(rank)));
        }
    }
}

TEST_CASE("reduction produces the advertised block matrix") {
    SECTION("punctured tetrahedron: identity block of order 3") {
        const PuncturedComplex pk = puncture(make_tetrahedron(), 3);
        const PfaffianSystem sys = build_system(pk);
        const ReducedSystem red = reduce_system(sys, pk);
        CHECK(red.identity_order == 3);
        CHECK(red.identity_edges == std::vector<int>{0, 2, 3});
        CHECK(red.covered_edges == std::vector<int>{0, 1, 2, 3, 4, 5});
        CHECK(red.a_prime.rows() == 6);
        CHECK(red.a_prime.cols() == 9);
        // top-left block = mod-2 incidence, faces by row
        const IncidenceMatrix im = incidence_matrix(pk);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 6; ++c)
                CHECK(red.a_prime.get(r, c) == (im.mat.at(c, r) % 2 != 0));
    }
    SECTION("3x3 torus grid: identity block of order 14") {
        const PuncturedComplex pk = puncture(make_torus_grid(3, 3), 8);
        const ReducedSystem red = reduce_system(build_system(pk), pk);
        CHECK(red.identity_order == 14);
        CHECK(red.a_prime.rows() == 22);
        CHECK(red.a_prime.cols() == 32);
    }
    SECTION("degenerate grid: identity order counts internal edges") {
        const PuncturedComplex pk = puncture(make_torus_grid(1, 2), 1);
        const ReducedSystem red = reduce_system(build_system(pk), pk);
        CHECK(red.identity_order == 1);
        CHECK(red.covered_edges == std::vector<int>{0, 2, 3});
    }
    SECTION("every fixture and puncture reduces cleanly") {
        for (const CellComplex& k : fixture_sweep())
            for (const Face& f : k.faces) {
                const PuncturedComplex pk = puncture(k, f.id);
                const PfaffianSystem sys = build_system(pk);
                CHECK_NOTHROW(reduce_system(sys, pk));
            }
    }
}

TEST_CASE("reduction detects a corrupted system") {
    const PuncturedComplex pk = puncture(make_tetrahedron(), 3);
    PfaffianSystem sys = build_system(pk);
    // flip one coefficient: face row 0, the second slot of internal edge 0
    REQUIRE(sys.edge_vars[0].size() == 2);
    const int var = sys.edge_vars[0][1];
    sys.matrix.set(0, var, !sys.matrix.get(0, var));
    REQUIRE_THROWS_AS(reduce_system(sys, pk), ReductionMismatch);
}
