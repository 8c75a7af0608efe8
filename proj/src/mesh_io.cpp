#include "splinedim/mesh_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace splinedim {

using nlohmann::json;

namespace {

Rational parse_coordinate(const json& x) {
    if (x.is_number_integer()) return x.is_number_unsigned() ? Rational(x.get<unsigned long>()) : Rational(x.get<long>());
    if (x.is_string()) {
        try {
            return parse_rational(x.get<std::string>());
        } catch (const Error& e) {
            throw MeshFormatError(e.what());
        }
    }
    if (x.is_number_float()) throw MeshFormatError("floating-point coordinate " + x.dump() + "; use \"p/q\"");
    throw MeshFormatError("coordinate must be an integer or a \"p/q\" string, got " + x.dump());
}

std::vector<int> parse_indices(const json& arr, const char* what) {
    if (!arr.is_array()) throw MeshFormatError(std::string(what) + " must be an array of vertex indices");
    std::vector<int> out;
    for (const auto& v : arr) {
        if (!v.is_number_integer()) throw MeshFormatError(std::string(what) + " contains a non-integer index");
        out.push_back(v.get<int>());
    }
    return out;
}

const json& require(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw MeshFormatError(std::string("missing key \"") + key + "\"");
    return *it;
}

}  // namespace

CellComplex parse_mesh(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw MeshFormatError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw MeshFormatError("mesh must be a JSON object");
    const json& dim = require(doc, "dimension");
    if (!dim.is_number_integer() || dim.get<int>() != 3) throw MeshFormatError("dimension must be 3");
    const json& kind = require(doc, "kind");
    if (!kind.is_string() || (kind != "simplicial" && kind != "polytopal"))
        throw MeshFormatError("kind must be \"simplicial\" or \"polytopal\"");

    const json& verts = require(doc, "vertices");
    if (!verts.is_array()) throw MeshFormatError("vertices must be an array");
    std::vector<Coordinate> vertices;
    for (const auto& v : verts) {
        if (!v.is_array() || v.size() != 3) throw MeshFormatError("each vertex needs three coordinates");
        Coordinate p;
        for (const auto& x : v) p.push_back(parse_coordinate(x));
        vertices.push_back(std::move(p));
    }
    const json& cell_arr = require(doc, "cells");
    if (!cell_arr.is_array() || cell_arr.empty()) throw MeshFormatError("cells must be a non-empty array");
    std::vector<std::vector<int>> cells;
    for (const auto& c : cell_arr) cells.push_back(parse_indices(c, "cell"));

    std::optional<std::vector<FaceSpec>> faces;
    if (kind == "polytopal") {
        faces.emplace();
        if (doc.contains("faces")) {
            const json& fa = doc["faces"];
            if (!fa.is_array()) throw MeshFormatError("faces must be an array");
            for (const auto& f : fa) {
                if (!f.is_object() || !f.contains("dim") || !f["dim"].is_number_integer())
                    throw MeshFormatError("each face needs an integer \"dim\" and \"vertices\"");
                faces->push_back({f["dim"].get<int>(), parse_indices(require(f, "vertices"), "face")});
            }
        }
    } else if (doc.contains("faces")) {
        throw MeshFormatError("faces are only allowed for polytopal meshes");
    }
    return build_complex(std::move(vertices), std::move(cells), std::move(faces), 3);
}

std::string format_mesh(const CellComplex& complex) {
    // One vertex, cell or face per line.
    auto list = [](const std::vector<json>& items) {
        std::string s = "[";
        for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ",\n    " : "\n    ") + items[i].dump();
        return s + (items.empty() ? "]" : "\n  ]");
    };
    std::vector<json> verts, cells, faces;
    for (const auto& p : complex.vertices()) {
        json row = json::array();
        for (const auto& x : p) row.push_back(to_string(x));
        verts.push_back(row);
    }
    for (const auto& c : complex.cells()) cells.push_back(c.vertices);
    std::string out = "{\n  \"dimension\": " + std::to_string(complex.dimension()) + ",\n  \"kind\": ";
    out += complex.kind() == ComplexKind::polytopal ? "\"polytopal\"" : "\"simplicial\"";
    out += ",\n  \"vertices\": " + list(verts) + ",\n  \"cells\": " + list(cells);
    if (complex.kind() == ComplexKind::polytopal) {
        for (const auto& f : complex.lattice()) faces.push_back({{"dim", f.dim}, {"vertices", f.vertices}});
        out += ",\n  \"faces\": " + list(faces);
    }
    return out + "\n}\n";
}

CellComplex read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshIOError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw MeshIOError("cannot read " + path);
    return parse_mesh(ss.str());
}

void write_mesh(const CellComplex& complex, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MeshIOError("cannot open " + path + " for writing");
    out << format_mesh(complex);
    if (!out.flush()) throw MeshIOError("cannot write " + path);
}

}  // namespace splinedim
