// Command-line front end: validation, Euler data, counting, construction,
// enumeration, matching diagnostics, matrix dumps, and the selftest suite.
//
// Exit codes: 0 success, 1 validation-level failure, 2 I/O or parse error,
// 3 cap exceeded. Failures also emit one machine-readable JSON object on
// stderr: {"error": <kind>, "message": <text>}.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pforient/pforient.hpp"

namespace pf = pforient;
using pf::json;

namespace {

struct Options {
    std::string fixture;
    std::string input;
    std::string puncture;
    std::string out;
    std::string format = "text";
    std::string orientation_file;
    std::string dump;
    std::uint64_t limit = 0; // 0 = everything (when small enough)
    std::uint64_t match_cap = 1000000;
    int brute_cap = 24;
    unsigned seed = 7;
    bool list = false;
    bool signs = false;
    bool involution_check = false;
    bool dot = false;
    bool dot_matched = false;
};

int fail_with(const std::exception& ex) {
    const char* kind = "Error";
    int code = 1;
    if (dynamic_cast<const pf::ParseError*>(&ex)) {
        kind = "ParseError";
        code = 2;
    } else if (dynamic_cast<const pf::CapExceeded*>(&ex)) {
        kind = "CapExceeded";
        code = 3;
    } else if (dynamic_cast<const pf::TooLarge*>(&ex)) {
        kind = "TooLarge";
        code = 3;
    } else if (dynamic_cast<const pf::UnknownFace*>(&ex)) {
        kind = "UnknownFace";
    } else if (dynamic_cast<const pf::InvalidParameter*>(&ex)) {
        kind = "InvalidParameter";
    } else if (dynamic_cast<const pf::LengthMismatch*>(&ex)) {
        kind = "LengthMismatch";
    } else if (dynamic_cast<const pf::NonOrientableOrInvalid*>(&ex)) {
        kind = "NonOrientableOrInvalid";
    } else if (dynamic_cast<const pf::NullityMismatch*>(&ex)) {
        kind = "NullityMismatch";
    } else if (dynamic_cast<const pf::FormulaMismatch*>(&ex)) {
        kind = "FormulaMismatch";
    } else if (dynamic_cast<const pf::RankDeficient*>(&ex)) {
        kind = "RankDeficient";
    } else if (dynamic_cast<const pf::ReductionMismatch*>(&ex)) {
        kind = "ReductionMismatch";
    } else if (dynamic_cast<const pf::PeelingStuck*>(&ex)) {
        kind = "PeelingStuck";
    } else if (dynamic_cast<const pf::ZeroIncidence*>(&ex)) {
        kind = "ZeroIncidence";
    } else if (dynamic_cast<const pf::NotCyclic*>(&ex)) {
        kind = "NotCyclic";
    } else if (dynamic_cast<const pf::Incoherent*>(&ex)) {
        kind = "Incoherent";
    }
    std::cerr << json{{"error", kind}, {"message", ex.what()}}.dump() << '\n';
    return code;
}

void add_input_opts(CLI::App* cmd, Options& o) {
    auto* f = cmd->add_option("--fixture", o.fixture,
                              "builtin fixture (tetrahedron, cube, square_torus, prism_N, "
                              "torus_grid_MxN, genus_poly_G)");
    auto* i = cmd->add_option("--input", o.input, "complex JSON file");
    f->excludes(i);
    i->excludes(f);
}

pf::CellComplex load_input(const Options& o) {
    if (!o.fixture.empty()) return pf::make_fixture(o.fixture);
    if (!o.input.empty()) return pf::load_complex(o.input);
    throw pf::ParseError("one of --fixture or --input is required");
}

/// Validate before running any algorithm; exit-1-worthy when violated.
void require_valid(const pf::CellComplex& k) {
    const pf::ValidationReport rep = pf::validate(k);
    if (!rep.ok()) {
        std::string msg = "input fails validation:";
        for (const std::string& v : rep.violations) msg += " [" + v + "]";
        throw pf::NonOrientableOrInvalid(msg);
    }
}

std::vector<int> resolve_punctures(const pf::CellComplex& k, const std::string& sel,
                                   bool allow_all) {
    if (sel.empty())
        throw pf::ParseError(allow_all ? "--puncture is required (face id or 'all')"
                                       : "--puncture is required (face id)");
    if (sel == "all") {
        if (!allow_all) throw pf::ParseError("--puncture all is not supported here");
        std::vector<int> all(k.faces.size());
        for (int i = 0; i < k.face_count(); ++i) all[i] = i;
        return all;
    }
    int id = 0;
    if (!pf::detail::parse_int(sel, id))
        throw pf::ParseError("--puncture must be a face id or 'all' (got '" + sel + "')");
    return {id};
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) std::cout << text;
    else {
        std::ofstream f(o.out);
        if (!f) throw pf::ParseError("cannot open '" + o.out + "' for writing");
        f << text;
    }
}

int cmd_validate(const Options& o) {
    const pf::CellComplex k = load_input(o);
    const pf::ValidationReport rep = pf::validate(k);
    if (o.format == "json") {
        json j{{"ok", rep.ok()}, {"violations", rep.violations}, {"warnings", rep.warnings}};
        std::cout << j.dump(2) << '\n';
    } else {
        if (rep.ok()) std::cout << "ok\n";
        for (const std::string& v : rep.violations) std::cout << "violation: " << v << '\n';
        for (const std::string& w : rep.warnings) std::cout << "warning: " << w << '\n';
    }
    if (!rep.ok()) {
        std::cerr << json{{"error", "ValidationFailure"},
                          {"message", std::to_string(rep.violations.size()) + " violation(s)"}}
                         .dump()
                  << '\n';
        return 1;
    }
    return 0;
}

int cmd_euler(const Options& o) {
    const pf::CellComplex k = load_input(o);
    require_valid(k);
    const auto [chi, genus] = pf::euler_and_genus(k);
    if (o.format == "json")
        std::cout << json{{"chi", chi}, {"genus", genus}}.dump() << '\n';
    else
        std::cout << "chi=" << chi << " genus=" << genus << '\n';
    return 0;
}

int cmd_count(const Options& o, bool brute) {
    const pf::CellComplex k = load_input(o);
    require_valid(k);
    json results = json::array();
    std::string text;
    for (int fid : resolve_punctures(k, o.puncture, true)) {
        const pf::PuncturedComplex pk = pf::puncture(k, fid);
        std::string value;
        if (brute) value = std::to_string(pf::brute_force_count(pk, o.brute_cap));
        else value = pf::count_pfaffian(pk).decimal();
        text += value + '\n';
        results.push_back({{"puncture", fid}, {"count", value}});
    }
    if (o.format == "json")
        std::cout << json{{"complex", k.name}, {"counts", results}}.dump(2) << '\n';
    else
        std::cout << text;
    return 0;
}

int cmd_construct(const Options& o) {
    const pf::CellComplex k = load_input(o);
    require_valid(k);
    const int fid = resolve_punctures(k, o.puncture, false).front();
    const pf::Orientation orient = pf::construct_orientation(pf::puncture(k, fid));
    emit(o, pf::orientation_to_json(orient).dump(2) + "\n");
    return 0;
}

int cmd_enumerate(const Options& o) {
    const pf::CellComplex k = load_input(o);
    require_valid(k);
    const int fid = resolve_punctures(k, o.puncture, false).front();
    const pf::PuncturedComplex pk = pf::puncture(k, fid);

    std::uint64_t limit = o.limit;
    if (limit == 0) {
        const int exponent = pf::system_nullity(pf::build_system(pk));
        if (exponent > 20)
            throw pf::InvalidParameter("2^" + std::to_string(exponent) +
                                       " orientations; pass --limit to truncate");
        limit = std::uint64_t(1) << exponent;
    }
    const pf::EnumerationResult res = pf::enumerate_orientations(pk, limit);
    json items = json::array();
    for (const pf::Orientation& orient : res.items) items.push_back(pf::orientation_to_json(orient));
    json j{{"complex", k.name},
           {"puncture", fid},
           {"total_exponent", res.total_exponent},
           {"truncated", res.truncated},
           {"orientations", items}};
    emit(o, j.dump(2) + "\n");
    return 0;
}

int cmd_check(const Options& o) {
    const pf::CellComplex k = load_input(o);
    require_valid(k);
    const int fid = resolve_punctures(k, o.puncture, false).front();
    const pf::PuncturedComplex pk = pf::puncture(k, fid);
    const pf::Orientation orient = pf::load_orientation(o.orientation_file);
    if (pf::is_pfaffian(pk, orient)) {
        std::cout << "PFAFFIAN\n";
        return 0;
    }
    std::cout << "NOT PFAFFIAN\n";
    for (const pf::Face& f : k.faces)
        if (f.id != fid && pf::face_good_slots(k, orient, f.id) % 2 == 0)
            std::cout << "face " << f.id << " has even good-slot count\n";
    std::cerr << json{{"error", "NotPfaffian"}, {"message", "orientation fails the parity check"}}
                     .dump()
              << '\n';
    return 1;
}

int cmd_matchings(const Options& o) {
    const pf::CellComplex k = load_input(o);
    require_valid(k);
    const int fid = resolve_punctures(k, o.puncture, false).front();
    const pf::PuncturedComplex pk = pf::puncture(k, fid);
    const std::vector<int> r = pf::select_row_basis(pk);
    const pf::MatchGraph g = pf::build_match_graph(pk, r);

    if (o.dot || o.format == "dot") {
        emit(o, pf::to_dot(g));
        return 0;
    }
    if (o.dot_matched) {
        const pf::PeelResult peel = pf::find_acyclic_matching(g);
        emit(o, pf::to_dot(g, &peel.matching));
        return 0;
    }

    const std::vector<pf::PerfectMatching> all = pf::enumerate_matchings(g, o.match_cap);
    long long sum = 0, cyclic_sum = 0;
    int acyclic = 0;
    for (const pf::PerfectMatching& m : all) {
        const int s = pf::matching_sign(g, m, pk);
        sum += s;
        if (pf::is_acyclic(g, m)) ++acyclic;
        else cyclic_sum += s;
    }
    const long long det = pf::det_int(pf::boundary_submatrix(g, pk));

    std::string text;
    if (o.list) {
        for (std::size_t i = 0; i < all.size(); ++i) {
            text += "matching " + std::to_string(i) + ":";
            for (int ri = 0; ri < g.size(); ++ri)
                text += " (f" + std::to_string(g.faces[all[i].face_of_r[ri]]) + ",e" +
                        std::to_string(g.r_edges[ri]) + ")";
            text += '\n';
        }
    }
    if (o.signs) {
        for (std::size_t i = 0; i < all.size(); ++i)
            text += "matching " + std::to_string(i) +
                    " sign=" + std::to_string(pf::matching_sign(g, all[i], pk)) + '\n';
    }
    if (o.involution_check) {
        int pairs = 0;
        for (const pf::PerfectMatching& m : all) {
            if (pf::is_acyclic(g, m)) continue;
            const pf::PerfectMatching m2 = pf::involution(g, m);
            if (m2 == m || pf::is_acyclic(g, m2) || !(pf::involution(g, m2) == m) ||
                pf::matching_sign(g, m2, pk) != -pf::matching_sign(g, m, pk))
                throw pf::Error("involution check failed on a cyclic matching");
            ++pairs;
        }
        text += "involution-check: ok (" + std::to_string(pairs) + " cyclic matchings, sum " +
                std::to_string(cyclic_sum) + ")\n";
    }
    text += "faces " + std::to_string(g.faces.size()) + '\n';
    text += "r_edges";
    for (int e : r) text += ' ' + std::to_string(e);
    text += '\n';
    text += "matchings " + std::to_string(all.size()) + '\n';
    text += "acyclic " + std::to_string(acyclic) + '\n';
    text += "cyclic " + std::to_string(all.size() - acyclic) + '\n';
    text += "sign_sum " + std::to_string(sum) + '\n';
    text += "det " + std::to_string(det) + '\n';
    emit(o, text);
    return 0;
}

int cmd_matrix(const Options& o) {
    const pf::CellComplex k = load_input(o);
    require_valid(k);
    std::string text;
    auto dump_gf2 = [&text](const pf::Gf2Matrix& m) {
        text += "# " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()) + '\n';
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (c) text += ' ';
                text += m.get(r, c) ? '1' : '0';
            }
            text += '\n';
        }
    };
    if (o.dump == "incidence") {
        pf::IncidenceMatrix im;
        if (o.puncture.empty()) im = pf::incidence_matrix(k);
        else
            im = pf::incidence_matrix(
                pf::puncture(k, resolve_punctures(k, o.puncture, false).front()));
        text += "# " + std::to_string(im.mat.rows()) + " x " + std::to_string(im.mat.cols()) + '\n';
        for (std::size_t r = 0; r < im.mat.rows(); ++r) {
            for (std::size_t c = 0; c < im.mat.cols(); ++c) {
                if (c) text += ' ';
                text += std::to_string(im.mat.at(r, c));
            }
            text += '\n';
        }
    } else if (o.dump == "pfaffian") {
        const int fid = resolve_punctures(k, o.puncture, false).front();
        dump_gf2(pf::build_system(pf::puncture(k, fid)).matrix);
    } else if (o.dump == "reduced") {
        const int fid = resolve_punctures(k, o.puncture, false).front();
        const pf::PuncturedComplex pk = pf::puncture(k, fid);
        const pf::PfaffianSystem sys = pf::build_system(pk);
        const pf::ReducedSystem red = pf::reduce_system(sys, pk);
        text += "# identity block order " + std::to_string(red.identity_order) + '\n';
        dump_gf2(red.a_prime);
    } else {
        throw pf::ParseError("--dump must be incidence, pfaffian, or reduced");
    }
    emit(o, text);
    return 0;
}

int cmd_selftest(const Options& o) {
    const pf::SelftestReport rep = pf::run_selftest(o.seed);
    std::cout << rep.text;
    if (!rep.pass) {
        std::cerr << json{{"error", "SelftestFailure"}, {"message", "one or more checks failed"}}
                         .dump()
                  << '\n';
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pfaffian orientations of punctured cellulated surfaces"};
    app.require_subcommand(1);
    Options o;

    CLI::App* c_validate = app.add_subcommand("validate", "check the structural invariants");
    add_input_opts(c_validate, o);
    c_validate->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* c_euler = app.add_subcommand("euler", "Euler characteristic and genus");
    add_input_opts(c_euler, o);
    c_euler->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* c_count = app.add_subcommand("count", "count admissible orientations (closed form)");
    add_input_opts(c_count, o);
    c_count->add_option("--puncture", o.puncture, "face id or 'all'");
    c_count->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* c_brute =
        app.add_subcommand("brute-count", "count admissible orientations by exhaustive sweep");
    add_input_opts(c_brute, o);
    c_brute->add_option("--puncture", o.puncture, "face id or 'all'");
    c_brute->add_option("--cap", o.brute_cap, "largest edge count to sweep (default 24)");
    c_brute->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* c_construct =
        app.add_subcommand("construct", "build one admissible orientation (JSON)");
    add_input_opts(c_construct, o);
    c_construct->add_option("--puncture", o.puncture, "face id");
    c_construct->add_option("--out", o.out, "write JSON here instead of stdout");

    CLI::App* c_enum = app.add_subcommand("enumerate", "list admissible orientations (JSON)");
    add_input_opts(c_enum, o);
    c_enum->add_option("--puncture", o.puncture, "face id");
    c_enum->add_option("--limit", o.limit, "emit at most this many orientations");
    c_enum->add_option("--out", o.out, "write JSON here instead of stdout");

    CLI::App* c_check = app.add_subcommand("check", "test an orientation file for admissibility");
    add_input_opts(c_check, o);
    c_check->add_option("--puncture", o.puncture, "face id");
    c_check->add_option("--orientation", o.orientation_file, "orientation JSON file")->required();

    CLI::App* c_match = app.add_subcommand("matchings", "matching diagnostics on the basis graph");
    add_input_opts(c_match, o);
    c_match->add_option("--puncture", o.puncture, "face id");
    c_match->add_flag("--list", o.list, "print every perfect matching");
    c_match->add_flag("--signs", o.signs, "print each matching's sign");
    c_match->add_flag("--involution-check", o.involution_check,
                      "verify the cycle-reversal pairing on cyclic matchings");
    c_match->add_flag("--dot", o.dot, "emit the bipartite graph as DOT");
    c_match->add_flag("--dot-matched", o.dot_matched,
                      "emit DOT with an acyclic matching's arcs reversed");
    c_match->add_option("--cap", o.match_cap, "matching enumeration cap (default 10^6)");
    c_match->add_option("--format", o.format)->check(CLI::IsMember({"text", "dot"}));
    c_match->add_option("--out", o.out, "write output here instead of stdout");

    CLI::App* c_matrix = app.add_subcommand("matrix", "dump a matrix");
    add_input_opts(c_matrix, o);
    c_matrix->add_option("--dump", o.dump, "incidence | pfaffian | reduced")->required();
    c_matrix->add_option("--puncture", o.puncture, "face id (optional for incidence)");
    c_matrix->add_option("--out", o.out, "write output here instead of stdout");

    CLI::App* c_self = app.add_subcommand("selftest", "run the invariant suite");
    c_self->add_option("--seed", o.seed, "seed for the random cellulations (default 7)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(c_validate)) return cmd_validate(o);
        if (app.got_subcommand(c_euler)) return cmd_euler(o);
        if (app.got_subcommand(c_count)) return cmd_count(o, false);
        if (app.got_subcommand(c_brute)) return cmd_count(o, true);
        if (app.got_subcommand(c_construct)) return cmd_construct(o);
        if (app.got_subcommand(c_enum)) return cmd_enumerate(o);
        if (app.got_subcommand(c_check)) return cmd_check(o);
        if (app.got_subcommand(c_match)) return cmd_matchings(o);
        if (app.got_subcommand(c_matrix)) return cmd_matrix(o);
        if (app.got_subcommand(c_self)) return cmd_selftest(o);
    } catch (const std::exception& ex) {
        return fail_with(ex);
    }
    return 2;
}
