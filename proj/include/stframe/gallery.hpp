#pragma once

// Worked examples with their published expectations, kept in one place so the
// CLI regression run and the acceptance suite read the same numbers.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stframe/cases.hpp"
#include "stframe/errors.hpp"
#include "stframe/sources.hpp"
#include "stframe/tensor.hpp"

namespace stframe {

struct GalleryExpectations {
    /// Ricci eigenvalues as a multiset, in the order they are usually quoted.
    Vec4 eigenvalues{};
    bool weakly_einstein = false;
    bool einstein = false;
    /// Sign cases the frame found by find_st_basis must contain (or equal, when exact).
    std::vector<SignCase> sign_cases;
    bool sign_cases_exact = false;
    std::optional<int> forbidden_pattern;
    std::optional<double> f;
    std::optional<double> volume;
    std::optional<double> chi, p1, c_bound;
    std::optional<bool> hitchin_ok;
};

struct GalleryEntry {
    std::string name;
    std::map<std::string, double> params;
    Curvature4 tensor;
    std::optional<Connection4> connection;
    GalleryExpectations expect;
    std::vector<std::string> notes;
};

struct GalleryInfo {
    std::string name;
    std::map<std::string, double> defaults;
    std::string description;
};

inline const std::vector<GalleryInfo>& gallery_catalog() {
    static const std::vector<GalleryInfo> catalog = {
        {"example-s2-1", {}, "solvable Lie group [e1,e2]=2e2, [e1,e3]=-e3, [e1,e4]=2e3-e4 (Ricci eigenbasis, not Chern)"},
        {"example-products", {{"c1", 1.0}, {"c2", 2.0}}, "product of surfaces of Gaussian curvature c1 and c2"},
        {"example-spaceform", {{"c", 1.0}}, "3-dimensional space form of curvature c times a line"},
        {"example-pm-c", {{"c", 1.0}}, "product of surfaces of Gaussian curvature c and -c"},
        {"example4", {{"a", 1.0}, {"b", 0.0}}, "solvable Lie group [e1,e2]=a e2, [e1,e3]=-a e3-b e4, [e1,e4]=b e3-a e4"},
        {"example6", {{"m", 2.0}}, "unit 2-sphere times a genus-m surface of curvature -1"},
    };
    return catalog;
}

namespace detail {

inline Curvature4 example4_tensor(double a, double b, std::optional<Connection4>* conn = nullptr) {
    auto [c, r] = lie_group_curvature(LieAlgebra4::from_brackets(
        {{0, 1, 1, a}, {0, 2, 2, -a}, {0, 2, 3, -b}, {0, 3, 2, b}, {0, 3, 3, -a}}));
    if (conn) *conn = c;
    return r;
}

}  // namespace detail

/// Builds a gallery entry. Missing parameters take the catalog defaults;
/// unknown names throw UnknownGalleryName, bad parameters ValidationError.
inline GalleryEntry gallery(const std::string& name, const std::map<std::string, double>& params = {}) {
    const auto& catalog = gallery_catalog();
    auto info = std::find_if(catalog.begin(), catalog.end(), [&](const GalleryInfo& g) { return g.name == name; });
    if (info == catalog.end()) throw UnknownGalleryName(name);

    GalleryEntry e;
    e.name = name;
    e.params = info->defaults;
    for (const auto& [key, value] : params) {
        if (!info->defaults.count(key)) throw ValidationError(key, "not a parameter of gallery entry " + name);
        if (!std::isfinite(value)) throw ValidationError(key, "must be finite");
        e.params[key] = value;
    }
    auto& x = e.expect;

    if (name == "example-s2-1") {
        auto [c, r] = lie_group_curvature(
            LieAlgebra4::from_brackets({{0, 1, 1, 2.0}, {0, 2, 2, -1.0}, {0, 3, 2, 2.0}, {0, 3, 3, -1.0}}));
        e.tensor = r;
        e.connection = c;
        x.eigenvalues = {-8.0, 0.0, 2.0, -2.0};
        x.weakly_einstein = false;  // distinct eigenvalues yet R_1314 != 0
        x.einstein = false;
    } else if (name == "example-products") {
        const double c1 = e.params["c1"], c2 = e.params["c2"];
        e.tensor = surface_product(c1, c2);
        x.eigenvalues = {c1, c1, c2, c2};
        x.weakly_einstein = c1 * c1 == c2 * c2;
        x.einstein = c1 == c2;
        if (x.weakly_einstein) x.f = c1 == c2 ? 0.0 : -c1 * c1;
    } else if (name == "example-spaceform") {
        const double c = e.params["c"];
        e.tensor = space_form_product(c);
        x.eigenvalues = {2 * c, 2 * c, 2 * c, 0.0};
        x.weakly_einstein = c == 0.0;
        x.einstein = c == 0.0;
        // Pattern numbers refer to the descending eigenvalue order.
        if (c != 0.0) x.forbidden_pattern = c > 0.0 ? 1 : 4;
    } else if (name == "example-pm-c") {
        const double c = e.params["c"];
        if (c == 0.0) throw ValidationError("c", "must be nonzero");
        e.tensor = surface_product(c, -c);
        x.eigenvalues = {c, c, -c, -c};
        x.weakly_einstein = true;
        x.einstein = false;
        x.sign_cases = {SignCase::ii, SignCase::vi, SignCase::vii, SignCase::viii};
        x.sign_cases_exact = true;
        x.f = -c * c;
    } else if (name == "example4") {
        const double a = e.params["a"], b = e.params["b"];
        if (a == 0.0) throw ValidationError("a", "must be nonzero");
        e.tensor = detail::example4_tensor(a, b, &e.connection);
        x.eigenvalues = {-3 * a * a, a * a, -a * a, -a * a};
        x.weakly_einstein = true;
        x.einstein = false;
        x.sign_cases = {SignCase::v};
        x.f = -2 * a * a * a * a;
    } else {  // example6
        const double m = e.params["m"];
        if (!(m >= 2.0) || m != std::floor(m)) throw ValidationError("m", "genus must be an integer >= 2");
        e.tensor = surface_product(1.0, -1.0);
        x.eigenvalues = {1.0, 1.0, -1.0, -1.0};
        x.weakly_einstein = true;
        x.einstein = false;
        x.sign_cases = {SignCase::ii, SignCase::vi, SignCase::vii, SignCase::viii};
        x.sign_cases_exact = true;
        x.f = -1.0;
        x.volume = 16.0 * M_PI * M_PI * (m - 1.0);
        x.chi = 4.0 * (1.0 - m);
        x.p1 = 0.0;
        x.c_bound = 8.0 * (1.0 - m);
        x.hitchin_ok = false;
        e.notes.push_back("sphere factor has Gaussian curvature +1, volume 4 pi");
        e.notes.push_back("genus-m factor has Gaussian curvature -1, volume 4 pi (m - 1) by Gauss-Bonnet");
    }
    return e;
}

}  // namespace stframe
