#pragma once

// JSON input documents. Indices in documents are 1-based.
//
//   {"kind": "lie_group", "c": [[i, j, k, value], ...]}          (i < j)
//   {"kind": "surface_product", "c1": x, "c2": y}
//   {"kind": "space_form_product", "c": x}
//   {"kind": "constant_curvature", "c": x}
//   {"kind": "raw_curvature", "components": [[i, j, k, l, value], ...], "symmetry_closure": true}
//   {"kind": "gallery", "name": "example4", "a": 1, "b": 0}
//
// Any document may carry "volume": positive number.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "stframe/errors.hpp"
#include "stframe/gallery.hpp"
#include "stframe/sources.hpp"
#include "stframe/tensor.hpp"

namespace stframe {

enum class GeometryKind { LieGroup, SurfaceProduct, SpaceFormProduct, ConstantCurvature, RawCurvature, Gallery };

inline std::string to_string(GeometryKind k) {
    switch (k) {
        case GeometryKind::LieGroup: return "lie_group";
        case GeometryKind::SurfaceProduct: return "surface_product";
        case GeometryKind::SpaceFormProduct: return "space_form_product";
        case GeometryKind::ConstantCurvature: return "constant_curvature";
        case GeometryKind::RawCurvature: return "raw_curvature";
        case GeometryKind::Gallery: return "gallery";
    }
    return "?";
}

/// Zero-based component entry.
struct RawComponent {
    int i, j, k, l;
    double value;
};

struct GeometrySpec {
    GeometryKind kind = GeometryKind::Gallery;
    /// c1/c2, c, or gallery parameters.
    std::map<std::string, double> params;
    std::vector<BracketTerm> brackets;
    std::vector<RawComponent> components;
    bool symmetry_closure = false;
    std::string gallery_name;
    std::optional<double> volume;
};

namespace detail {

inline double number_field(const nlohmann::json& doc, const std::string& key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ValidationError(key, "required");
    if (!it->is_number()) throw ValidationError(key, "must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw ValidationError(key, "must be finite");
    return v;
}

inline int index_field(const nlohmann::json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ValidationError(field, "indices must be integers 1..4");
    const auto i = v.get<long long>();
    if (i < 1 || i > 4) throw ValidationError(field, "indices must be integers 1..4");
    return static_cast<int>(i) - 1;
}

}  // namespace detail

/// Parses and validates an input document. Throws ParseError on malformed JSON
/// and ValidationError on schema violations.
inline GeometrySpec load_spec(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    if (!doc.is_object()) throw ValidationError("<document>", "must be a JSON object");
    auto kind_it = doc.find("kind");
    if (kind_it == doc.end() || !kind_it->is_string()) throw ValidationError("kind", "required string");
    const std::string kind = kind_it->get<std::string>();

    GeometrySpec spec;
    if (doc.contains("volume")) {
        const double v = detail::number_field(doc, "volume");
        if (!(v > 0.0)) throw ValidationError("volume", "must be positive");
        spec.volume = v;
    }

    if (kind == "lie_group") {
        spec.kind = GeometryKind::LieGroup;
        auto c = doc.find("c");
        if (c == doc.end() || !c->is_array()) throw ValidationError("c", "required array of [i, j, k, value]");
        for (const auto& row : *c) {
            if (!row.is_array() || row.size() != 4 || !row[3].is_number())
                throw ValidationError("c", "entries must be [i, j, k, value]");
            const int i = detail::index_field(row[0], "c"), j = detail::index_field(row[1], "c");
            const int k = detail::index_field(row[2], "c");
            if (i >= j) throw ValidationError("c", "entries list c_ijk with i < j");
            spec.brackets.push_back({i, j, k, row[3].get<double>()});
        }
    } else if (kind == "surface_product") {
        spec.kind = GeometryKind::SurfaceProduct;
        spec.params["c1"] = detail::number_field(doc, "c1");
        spec.params["c2"] = detail::number_field(doc, "c2");
    } else if (kind == "space_form_product" || kind == "constant_curvature") {
        spec.kind = kind == "space_form_product" ? GeometryKind::SpaceFormProduct : GeometryKind::ConstantCurvature;
        spec.params["c"] = detail::number_field(doc, "c");
    } else if (kind == "raw_curvature") {
        spec.kind = GeometryKind::RawCurvature;
        auto comps = doc.find("components");
        if (comps == doc.end() || !comps->is_array())
            throw ValidationError("components", "required array of [i, j, k, l, value]");
        for (const auto& row : *comps) {
            if (!row.is_array() || row.size() != 5 || !row[4].is_number())
                throw ValidationError("components", "entries must be [i, j, k, l, value]");
            spec.components.push_back({detail::index_field(row[0], "components"),
                                       detail::index_field(row[1], "components"),
                                       detail::index_field(row[2], "components"),
                                       detail::index_field(row[3], "components"), row[4].get<double>()});
        }
        if (auto cl = doc.find("symmetry_closure"); cl != doc.end()) {
            if (!cl->is_boolean()) throw ValidationError("symmetry_closure", "must be a boolean");
            spec.symmetry_closure = cl->get<bool>();
        }
    } else if (kind == "gallery") {
        spec.kind = GeometryKind::Gallery;
        auto name = doc.find("name");
        if (name == doc.end() || !name->is_string()) throw ValidationError("name", "required string");
        spec.gallery_name = name->get<std::string>();
        for (const auto& [key, value] : doc.items()) {
            if (key == "kind" || key == "name" || key == "volume") continue;
            spec.params[key] = detail::number_field(doc, key);
        }
    } else {
        throw ValidationError("kind", "unknown kind '" + kind + "'");
    }
    return spec;
}

struct RealizedGeometry {
    Curvature4 tensor;
    std::optional<double> volume;
    std::optional<GalleryEntry> gallery;
};

/// Builds the tensor described by a spec. Raw components pass through
/// make_curvature; with symmetry_closure each entry fills its symmetry orbit.
inline RealizedGeometry realize(const GeometrySpec& spec) {
    RealizedGeometry out;
    out.volume = spec.volume;
    switch (spec.kind) {
        case GeometryKind::LieGroup:
            out.tensor = lie_group_curvature(LieAlgebra4::from_brackets(spec.brackets)).second;
            break;
        case GeometryKind::SurfaceProduct:
            out.tensor = surface_product(spec.params.at("c1"), spec.params.at("c2"));
            break;
        case GeometryKind::SpaceFormProduct:
            out.tensor = space_form_product(spec.params.at("c"));
            break;
        case GeometryKind::ConstantCurvature:
            out.tensor = constant_curvature(spec.params.at("c"));
            break;
        case GeometryKind::RawCurvature: {
            RawTensor4 raw{};
            if (spec.symmetry_closure) {
                std::array<bool, 256> set{};
                for (const auto& c : spec.components) {
                    RawTensor4 orbit{};
                    detail::set_orbit(orbit, c.i, c.j, c.k, c.l, c.value);
                    // Orbit images of a slot with repeated indices collapse; set_orbit writes them last-wins.
                    for (std::size_t n = 0; n < 256; ++n) {
                        if (orbit[n] == 0.0) continue;
                        if (set[n] && raw[n] != orbit[n])
                            throw ValidationError("components", "conflicting values in one symmetry orbit");
                        raw[n] = orbit[n];
                        set[n] = true;
                    }
                }
            } else {
                for (const auto& c : spec.components) raw[flat_index(c.i, c.j, c.k, c.l)] = c.value;
            }
            out.tensor = make_curvature(raw);
            break;
        }
        case GeometryKind::Gallery: {
            GalleryEntry e = gallery(spec.gallery_name, spec.params);
            out.tensor = e.tensor;
            if (!out.volume) out.volume = e.expect.volume;
            out.gallery = std::move(e);
            break;
        }
    }
    return out;
}

/// Input echo with 1-based indices, mirroring the document schema.
inline nlohmann::ordered_json to_json(const GeometrySpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(spec.kind);
    if (spec.kind == GeometryKind::Gallery) j["name"] = spec.gallery_name;
    for (const auto& [k, v] : spec.params) j[k] = v;
    if (spec.kind == GeometryKind::LieGroup) {
        j["c"] = nlohmann::ordered_json::array();
        for (const auto& b : spec.brackets) j["c"].push_back({b.i + 1, b.j + 1, b.k + 1, b.value});
    }
    if (spec.kind == GeometryKind::RawCurvature) {
        j["components"] = nlohmann::ordered_json::array();
        for (const auto& c : spec.components) j["components"].push_back({c.i + 1, c.j + 1, c.k + 1, c.l + 1, c.value});
        j["symmetry_closure"] = spec.symmetry_closure;
    }
    if (spec.volume) j["volume"] = *spec.volume;
    return j;
}

}  // namespace stframe
