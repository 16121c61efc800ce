#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "pforient/complex.hpp"
#include "pforient/enumerate.hpp"
#include "pforient/errors.hpp"

namespace pforient {

using json = nlohmann::ordered_json;

inline json complex_to_json(const CellComplex& k) {
    json j;
    j["name"] = k.name;
    j["vertex_count"] = k.vertex_count;
    j["edges"] = json::array();
    for (const Edge& e : k.edges) {
        json je;
        je["id"] = e.id;
        je["tail"] = e.tail ? json(*e.tail) : json(nullptr);
        je["head"] = e.head ? json(*e.head) : json(nullptr);
        j["edges"].push_back(std::move(je));
    }
    j["faces"] = json::array();
    for (const Face& f : k.faces) {
        json jf;
        jf["id"] = f.id;
        jf["boundary"] = json::array();
        for (const BoundarySlot& s : f.boundary)
            jf["boundary"].push_back({{"edge", s.edge}, {"sign", s.sign}});
        j["faces"].push_back(std::move(jf));
    }
    return j;
}

inline CellComplex complex_from_json(const json& j) {
    try {
        CellComplex k;
        k.name = j.value("name", std::string{});
        k.vertex_count = j.at("vertex_count").get<int>();
        int next_edge = 0;
        for (const json& je : j.at("edges")) {
            Edge e;
            e.id = je.at("id").get<int>();
            if (e.id != next_edge++)
                throw ParseError("edge ids must be 0-based, dense, in list order (got " +
                                 std::to_string(e.id) + ")");
            if (je.contains("tail") && !je.at("tail").is_null()) e.tail = je.at("tail").get<int>();
            if (je.contains("head") && !je.at("head").is_null()) e.head = je.at("head").get<int>();
            k.edges.push_back(e);
        }
        int next_face = 0;
        for (const json& jf : j.at("faces")) {
            Face f;
            f.id = jf.at("id").get<int>();
            if (f.id != next_face++)
                throw ParseError("face ids must be 0-based, dense, in list order (got " +
                                 std::to_string(f.id) + ")");
            for (const json& js : jf.at("boundary")) {
                BoundarySlot s;
                s.edge = js.at("edge").get<int>();
                s.sign = js.at("sign").get<int>();
                if (s.sign != 1 && s.sign != -1)
                    throw ParseError("slot sign must be 1 or -1 (got " + std::to_string(s.sign) +
                                     ")");
                f.boundary.push_back(s);
            }
            k.faces.push_back(std::move(f));
        }
        return k;
    } catch (const json::exception& ex) {
        throw ParseError(std::string("malformed complex JSON: ") + ex.what());
    }
}

inline json orientation_to_json(const Orientation& o) {
    json j;
    j["complex"] = o.complex_name;
    j["bits"] = json::array();
    for (std::uint8_t b : o.bits) j["bits"].push_back(static_cast<int>(b));
    return j;
}

inline Orientation orientation_from_json(const json& j) {
    try {
        Orientation o;
        o.complex_name = j.value("complex", std::string{});
        for (const json& jb : j.at("bits")) {
            const int b = jb.get<int>();
            if (b != 0 && b != 1)
                throw ParseError("orientation bits must be 0 or 1 (got " + std::to_string(b) + ")");
            o.bits.push_back(static_cast<std::uint8_t>(b));
        }
        return o;
    } catch (const json::exception& ex) {
        throw ParseError(std::string("malformed orientation JSON: ") + ex.what());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError("cannot parse '" + path + "': " + ex.what());
    }
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

inline CellComplex load_complex(const std::string& path) {
    return complex_from_json(load_json_file(path));
}

inline Orientation load_orientation(const std::string& path) {
    return orientation_from_json(load_json_file(path));
}

} // namespace pforient
