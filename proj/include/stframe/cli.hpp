#pragma once

// Command-line driver. run() is the whole program; tools/stframe.cpp only
// forwards argv so tests can call it in-process.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stframe/analysis.hpp"
#include "stframe/eigen.hpp"
#include "stframe/errors.hpp"
#include "stframe/gallery.hpp"
#include "stframe/sources.hpp"
#include "stframe/spec_io.hpp"
#include "stframe/st_basis.hpp"
#include "stframe/topology.hpp"

namespace stframe::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kNegative = 1, kUsage = 2, kSearchFailure = 3 };

namespace detail {

inline std::string number_text(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void dump_to(std::string& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += inner + Json(key).dump() + ": ";
                dump_to(out, value, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            if (flat) {
                out += "[";
                for (std::size_t n = 0; n < j.size(); ++n) {
                    if (n) out += ", ";
                    dump_to(out, j[n], indent + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t n = 0; n < j.size(); ++n) {
                if (n) out += ",\n";
                out += inner;
                dump_to(out, j[n], indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float: out += number_text(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace detail

/// JSON text with every floating-point number printed to 17 significant digits.
inline std::string dump(const Json& j) {
    std::string out;
    detail::dump_to(out, j, 0);
    out += "\n";
    return out;
}

struct Options {
    std::string input;
    std::string gallery_name;
    std::map<std::string, double> gallery_params;
    std::string json_path;
    double tol = kDefaultResidualTolerance;
    double tol_mult = kDefaultMultiplicityTolerance;
    std::uint64_t seed = 0;
    int count = 100;
    std::optional<double> volume;
    bool list = false;
    bool all = false;
    std::string name;
};

namespace detail {

inline Json vec_json(const Vec4& v) { return Json::array({v[0], v[1], v[2], v[3]}); }
inline Json vec_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

inline Json matrix_json(const SymMatrix4& m) {
    Json rows = Json::array();
    for (int i = 0; i < kDim; ++i) rows.push_back(Json::array({m(i, 0), m(i, 1), m(i, 2), m(i, 3)}));
    return rows;
}

inline Json frame_json(const Frame4& f) {
    Json flat = Json::array();
    for (const auto& row : f.matrix())
        for (double v : row) flat.push_back(v);
    return flat;
}

inline Json residual_json(const ResidualReport& r) {
    return Json{{"max_abs", r.max_abs},
                {"relative", r.relative},
                {"tolerance", r.tolerance},
                {"passes", r.passes},
                {"matrix", matrix_json(r.matrix)}};
}

inline Json cases_json(const std::vector<SignCase>& cases) {
    Json a = Json::array();
    for (auto c : cases) a.push_back(to_string(c));
    return a;
}

inline STOptions st_options(const Options& o) {
    STOptions st;
    st.residual_tol = o.tol;
    st.tol_mult = o.tol_mult;
    st.seed = o.seed;
    return st;
}

struct Verdicts {
    ResidualReport identity, weakly_einstein, einstein;
};

inline Verdicts verdicts(const Curvature4& r, double tol) {
    return {identity_residual(r, tol), weakly_einstein_residual(r, tol), einstein_residual(r, tol)};
}

inline Json verdicts_json(const Verdicts& v) {
    return Json{{"einstein", v.einstein.passes},
                {"weakly_einstein", v.weakly_einstein.passes},
                {"identity_ok", v.identity.passes}};
}

inline Json residuals_json(const Verdicts& v) {
    return Json{{"identity", residual_json(v.identity)},
                {"weakly_einstein", residual_json(v.weakly_einstein)},
                {"einstein", residual_json(v.einstein)}};
}

inline Json frame_report_json(const STReport& rep) {
    Json j;
    j["eigenvalues"] = vec_json(rep.eigen.eigenvalues);
    j["pattern"] = to_string(rep.eigen.pattern.tag);
    j["st_frame"] = frame_json(rep.frame);
    j["penalty"] = rep.penalty;
    j["construction_path"] = to_string(rep.path);
    j["degenerate_fit"] = rep.degenerate_fit;
    j["sign_cases"] = cases_json(rep.sign_cases.cases);
    j["frame_eigenvalues"] = vec_json(rep.sign_cases.eigenvalues);
    j["relation_residuals"] = Json::array();
    for (double d : rep.sign_cases.relation_residuals) j["relation_residuals"].push_back(d);
    return j;
}

inline Json vectors_json(const STVectors& v) {
    return Json{{"a_prime", vec_json(v.a_prime)},
                {"a_dprime", vec_json(v.a_dprime)},
                {"b", vec_json(v.b)},
                {"a", vec_json(v.a)}};
}

inline Json invariants_json(const InvariantReport& inv) {
    Json j;
    j["orientation"] = inv.orientation;
    j["chi_density"] = inv.chi_density;
    j["p1_density"] = inv.p1_density;
    if (inv.volume) {
        j["volume"] = *inv.volume;
        j["chi"] = *inv.chi;
        j["p1"] = *inv.p1;
        j["c"] = *inv.c_bound;
        j["bound_plus_ok"] = *inv.bound_plus_ok;
        j["bound_minus_ok"] = *inv.bound_minus_ok;
        j["hitchin_ok"] = *inv.hitchin_ok;
    }
    return j;
}

inline std::string fmt(double v) {
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string fmt(const Vec4& v) {
    return "(" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ", " + fmt(v[3]) + ")";
}

inline std::string fmt(const Vec3& v) { return "(" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ")"; }

inline std::string join_cases(const std::vector<SignCase>& cases) {
    std::string s;
    for (auto c : cases) s += (s.empty() ? "" : " ") + to_string(c);
    return s.empty() ? "none" : s;
}

/// Outcome of one subcommand: machine report, human text and exit code.
struct Outcome {
    Json report;
    std::string text;
    int code = kPass;
};

inline Json base_report(const std::string& command, const Options& o) {
    Json j;
    j["command"] = command;
    j["tolerances"] = Json{{"tol", o.tol},
                           {"tol_mult", o.tol_mult},
                           {"penalty_tol", kDefaultPenaltyTolerance},
                           {"sign_tol", kDefaultSignTolerance}};
    j["seed"] = o.seed;
    return j;
}

inline GeometrySpec resolve_spec(const Options& o) {
    if (!o.input.empty() && !o.gallery_name.empty()) throw ValidationError("--input", "give either --input or --gallery");
    GeometrySpec spec;
    if (!o.input.empty()) {
        std::ifstream in(o.input);
        if (!in) throw ValidationError("--input", "cannot read '" + o.input + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        spec = load_spec(ss.str());
    } else if (!o.gallery_name.empty()) {
        spec.kind = GeometryKind::Gallery;
        spec.gallery_name = o.gallery_name;
        spec.params = o.gallery_params;
    } else {
        throw ValidationError("--input", "an input (--input FILE or --gallery NAME) is required");
    }
    if (o.volume) {
        if (!(*o.volume > 0.0) || !std::isfinite(*o.volume)) throw ValidationError("--volume", "must be positive");
        spec.volume = o.volume;
    }
    return spec;
}

inline Outcome cmd_identity(const Options& o, const GeometrySpec& spec, const Curvature4& r) {
    Outcome out{base_report("identity", o), "", kPass};
    const auto id = identity_residual(r, o.tol);
    out.report["input"] = to_json(spec);
    out.report["verdicts"] = Json{{"identity_ok", id.passes}};
    out.report["residuals"] = Json{{"identity", residual_json(id)}};
    out.text = "identity residual: max " + fmt(id.max_abs) + ", relative " + fmt(id.relative) + " -> " +
               (id.passes ? "ok" : "FAILED") + "\n";
    out.code = id.passes ? kPass : kNegative;
    return out;
}

inline Outcome cmd_check(const Options& o, const GeometrySpec& spec, const Curvature4& r) {
    Outcome out{base_report("check", o), "", kPass};
    const auto v = verdicts(r, o.tol);
    const auto spectrum = ricci_spectrum(r, o.tol_mult);
    const auto forbidden = forbidden_pattern(spectrum.eigenvalues, o.tol_mult);
    out.report["input"] = to_json(spec);
    out.report["verdicts"] = verdicts_json(v);
    out.report["residuals"] = residuals_json(v);
    out.report["eigenvalues"] = vec_json(spectrum.eigenvalues);
    out.report["pattern"] = to_string(spectrum.pattern.tag);
    out.report["forbidden_pattern"] = forbidden ? Json(*forbidden) : Json(nullptr);
    std::ostringstream t;
    t << "einstein: " << (v.einstein.passes ? "yes" : "no") << " (relative residual " << fmt(v.einstein.relative)
      << ")\n";
    t << "weakly einstein: " << (v.weakly_einstein.passes ? "yes" : "no") << " (relative residual "
      << fmt(v.weakly_einstein.relative) << ")\n";
    t << "identity: " << (v.identity.passes ? "ok" : "FAILED") << "\n";
    t << "ricci eigenvalues: " << fmt(spectrum.eigenvalues) << ", pattern " << to_string(spectrum.pattern.tag) << "\n";
    if (forbidden) t << "forbidden pattern (" << *forbidden << ")\n";
    out.text = t.str();
    out.code = v.weakly_einstein.passes && v.identity.passes ? kPass : kNegative;
    return out;
}

inline Outcome cmd_frame(const Options& o, const GeometrySpec& spec, const Curvature4& r, bool with_invariants,
                         std::optional<double> volume) {
    Outcome out{base_report(with_invariants ? "invariants" : "frame", o), "", kPass};
    const auto v = verdicts(r, o.tol);
    out.report["input"] = to_json(spec);
    out.report["verdicts"] = verdicts_json(v);
    out.report["residuals"] = residuals_json(v);
    std::ostringstream t;
    t << "einstein: " << (v.einstein.passes ? "yes" : "no")
      << ", weakly einstein: " << (v.weakly_einstein.passes ? "yes" : "no") << "\n";
    if (!v.weakly_einstein.passes) {
        t << "no generalized Singer-Thorpe frame: weakly Einstein residual " << fmt(v.weakly_einstein.relative) << "\n";
        out.text = t.str();
        out.code = kNegative;
        return out;
    }
    const STReport rep = find_st_basis(r, st_options(o));
    const Json fj = frame_report_json(rep);
    for (const auto& [k, val] : fj.items()) out.report[k] = val;
    t << "ricci eigenvalues: " << fmt(rep.eigen.eigenvalues) << ", pattern " << to_string(rep.eigen.pattern.tag) << "\n";
    t << "frame via " << to_string(rep.path) << ", penalty " << fmt(rep.penalty) << "\n";
    for (int i = 0; i < kDim; ++i) {
        const auto& row = rep.frame.matrix()[i];
        t << "  e" << i + 1 << "' = " << fmt(Vec4{row[0], row[1], row[2], row[3]}) << "\n";
    }
    t << "sign cases: " << join_cases(rep.sign_cases.cases) << "\n";

    if (with_invariants) {
        const InvariantReport inv = homogeneous_invariants(r, rep.frame, volume);
        Json by_case = Json::object();
        for (auto c : rep.sign_cases.cases) by_case[to_string(c)] = f_by_case(rep.sign_cases.eigenvalues, c);
        out.report["st_vectors"] = vectors_json(inv.vectors);
        out.report["f"] = inv.f;
        out.report["f_by_case"] = by_case;
        out.report["invariants"] = invariants_json(inv);
        t << "a' = " << fmt(inv.vectors.a_prime) << ", a'' = " << fmt(inv.vectors.a_dprime)
          << ", b = " << fmt(inv.vectors.b) << "\n";
        t << "f = " << fmt(inv.f) << "\n";
        t << "chi density " << fmt(inv.chi_density) << ", p1 density " << fmt(inv.p1_density) << "\n";
        if (inv.volume) {
            t << "volume " << fmt(*inv.volume) << ": chi = " << fmt(*inv.chi) << ", p1 = " << fmt(*inv.p1)
              << ", C = " << fmt(*inv.c_bound) << "\n";
            t << "2chi + p1 >= C: " << (*inv.bound_plus_ok ? "yes" : "no")
              << ", 2chi - p1 >= C: " << (*inv.bound_minus_ok ? "yes" : "no")
              << ", hitchin 2chi >= 3|sigma|: " << (*inv.hitchin_ok ? "yes" : "no") << "\n";
        }
    }
    out.text = t.str();
    return out;
}

inline Outcome cmd_fuzz(const Options& o) {
    Outcome out{base_report("fuzz", o), "", kPass};
    if (o.count < 1) throw ValidationError("--count", "must be positive");
    int failures = 0;
    double worst = 0.0, sum = 0.0;
    std::uint64_t worst_seed = o.seed;
    for (int n = 0; n < o.count; ++n) {
        const std::uint64_t s = o.seed + static_cast<std::uint64_t>(n);
        const auto rep = identity_residual(random_curvature(s), o.tol);
        if (!rep.passes) ++failures;
        sum += rep.relative;
        if (rep.relative > worst) {
            worst = rep.relative;
            worst_seed = s;
        }
    }
    out.report["count"] = o.count;
    out.report["failures"] = failures;
    out.report["max_relative"] = worst;
    out.report["mean_relative"] = sum / o.count;
    out.report["worst_seed"] = worst_seed;
    out.report["verdicts"] = Json{{"identity_ok", failures == 0}};
    out.text = std::to_string(o.count) + " random tensors, " + std::to_string(failures) +
               " identity failures, max relative residual " + fmt(worst) + " (seed " + std::to_string(worst_seed) +
               ")\n";
    out.code = failures == 0 ? kPass : kNegative;
    return out;
}

/// Runs the pipeline on one gallery entry and compares against its metadata.
inline Json gallery_checks(const GalleryEntry& e, const Options& o, std::string& text) {
    Json checks = Json::array();
    bool all_ok = true;
    auto add = [&](const std::string& name, Json expected, Json actual, bool ok) {
        checks.push_back(Json{{"name", name}, {"expected", expected}, {"actual", actual}, {"ok", ok}});
        all_ok = all_ok && ok;
        text += "  " + std::string(ok ? "ok   " : "FAIL ") + name + "\n";
    };
    const Curvature4& r = e.tensor;
    const double s = r.scale();
    const auto v = verdicts(r, o.tol);
    const auto spectrum = ricci_spectrum(r, o.tol_mult);

    Vec4 want = e.expect.eigenvalues, got = spectrum.eigenvalues;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    double eig_err = 0.0;
    for (int i = 0; i < kDim; ++i) eig_err = std::max(eig_err, std::abs(want[i] - got[i]));
    add("eigenvalues", vec_json(e.expect.eigenvalues), vec_json(spectrum.eigenvalues), eig_err <= 1e-9 * s * s);
    add("identity_ok", true, v.identity.passes, v.identity.passes);
    add("weakly_einstein", e.expect.weakly_einstein, v.weakly_einstein.passes,
        v.weakly_einstein.passes == e.expect.weakly_einstein);
    add("einstein", e.expect.einstein, v.einstein.passes, v.einstein.passes == e.expect.einstein);
    if (e.expect.forbidden_pattern) {
        const auto fp = forbidden_pattern(spectrum.eigenvalues, o.tol_mult);
        add("forbidden_pattern", *e.expect.forbidden_pattern, fp ? Json(*fp) : Json(nullptr),
            fp == e.expect.forbidden_pattern);
    }
    if (e.expect.weakly_einstein) {
        const STReport rep = find_st_basis(r, st_options(o));
        add("st_frame", Json{{"penalty_below", kDefaultPenaltyTolerance}}, rep.penalty,
            rep.penalty < kDefaultPenaltyTolerance);
        if (!e.expect.sign_cases.empty()) {
            bool ok = true;
            if (e.expect.sign_cases_exact) {
                auto a = rep.sign_cases.cases, b = e.expect.sign_cases;
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                ok = a == b;
            } else {
                for (auto c : e.expect.sign_cases) ok = ok && rep.sign_cases.contains(c);
            }
            add(e.expect.sign_cases_exact ? "sign_cases" : "sign_cases_include", cases_json(e.expect.sign_cases),
                cases_json(rep.sign_cases.cases), ok);
        }
        const InvariantReport inv = homogeneous_invariants(r, rep.frame, e.expect.volume);
        if (e.expect.f) add("f", *e.expect.f, inv.f, std::abs(inv.f - *e.expect.f) <= 1e-8 * s * s);
        double by_case_err = 0.0;
        for (auto c : rep.sign_cases.cases)
            by_case_err = std::max(by_case_err, std::abs(f_by_case(rep.sign_cases.eigenvalues, c) - inv.f));
        add("f_by_case", inv.f, by_case_err, by_case_err <= 1e-8 * s * s);
        auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
        if (e.expect.chi) add("chi", *e.expect.chi, *inv.chi, near(*inv.chi, *e.expect.chi));
        if (e.expect.p1) add("p1", *e.expect.p1, *inv.p1, near(*inv.p1, *e.expect.p1));
        if (e.expect.c_bound) add("c", *e.expect.c_bound, *inv.c_bound, near(*inv.c_bound, *e.expect.c_bound));
        if (e.expect.volume) {
            add("bound_plus_ok", true, *inv.bound_plus_ok, *inv.bound_plus_ok);
            add("bound_minus_ok", true, *inv.bound_minus_ok, *inv.bound_minus_ok);
        }
        if (e.expect.hitchin_ok)
            add("hitchin_ok", *e.expect.hitchin_ok, *inv.hitchin_ok, *inv.hitchin_ok == *e.expect.hitchin_ok);
    }
    Json params = Json::object();
    for (const auto& [k, val] : e.params) params[k] = val;
    Json notes = Json::array();
    for (const auto& n : e.notes) notes.push_back(n);
    return Json{{"name", e.name}, {"params", params}, {"notes", notes}, {"ok", all_ok}, {"checks", checks}};
}

inline Outcome cmd_gallery(const Options& o) {
    Outcome out{base_report("gallery", o), "", kPass};
    const int modes = int(o.list) + int(o.all) + int(!o.name.empty());
    if (modes != 1) throw ValidationError("gallery", "give exactly one of --list, --name NAME, --all");
    if (o.list) {
        Json entries = Json::array();
        for (const auto& g : gallery_catalog()) {
            Json params = Json::object();
            std::string ptext;
            for (const auto& [k, val] : g.defaults) {
                params[k] = val;
                ptext += " --" + k + " " + fmt(val);
            }
            entries.push_back(Json{{"name", g.name}, {"params", params}, {"description", g.description}});
            out.text += g.name + ptext + "\n    " + g.description + "\n";
        }
        out.report["entries"] = entries;
        return out;
    }
    std::vector<GalleryEntry> entries;
    if (o.all) {
        for (const auto& g : gallery_catalog()) entries.push_back(gallery(g.name));
    } else {
        entries.push_back(gallery(o.name, o.gallery_params));
    }
    Json results = Json::array();
    bool ok = true;
    for (const auto& e : entries) {
        out.text += e.name + "\n";
        Json res = gallery_checks(e, o, out.text);
        ok = ok && res["ok"].get<bool>();
        results.push_back(std::move(res));
    }
    out.report["entries"] = results;
    out.report["ok"] = ok;
    out.text += ok ? "all expectations met\n" : "some expectations FAILED\n";
    out.code = ok ? kPass : kNegative;
    return out;
}

inline void add_common(CLI::App* sub, Options& o, bool needs_input) {
    if (needs_input) {
        sub->add_option("--input", o.input, "JSON input document");
        sub->add_option("--gallery", o.gallery_name, "gallery entry name");
        sub->add_option("--volume", o.volume, "total volume for the topological closed forms");
    }
    for (const char* p : {"a", "b", "c", "c1", "c2", "m"}) {
        sub->add_option_function<double>(
            std::string("--") + p, [&o, p](const double& v) { o.gallery_params[p] = v; }, "gallery parameter");
    }
    sub->add_option("--json", o.json_path, "write the machine report to PATH, or - for stdout");
    sub->add_option("--tol", o.tol, "relative residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-mult", o.tol_mult, "relative eigenvalue multiplicity tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "seed for random starts and fuzzing");
    sub->add_option("--count", o.count, "number of fuzz tensors");
}

}  // namespace detail

/// Runs one command line (without the program name). Human text goes to `out`
/// unless the machine report is sent there with --json -; diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Pointwise analysis of 4-dimensional curvature tensors", "stframe"};
    app.require_subcommand(1);
    auto* identity = app.add_subcommand("identity", "residual of the universal curvature identity");
    auto* check = app.add_subcommand("check", "Einstein and weakly Einstein verdicts, forbidden patterns");
    auto* frame = app.add_subcommand("frame", "generalized Singer-Thorpe frame and sign cases");
    auto* invariants = app.add_subcommand("invariants", "plane vectors, f, Euler and Pontryagin numbers");
    auto* fuzz = app.add_subcommand("fuzz", "universal identity on seeded random tensors");
    auto* gal = app.add_subcommand("gallery", "run worked examples against their stored expectations");
    for (auto* sub : {identity, check, frame, invariants}) detail::add_common(sub, o, true);
    detail::add_common(fuzz, o, false);
    detail::add_common(gal, o, false);
    gal->add_flag("--list", o.list, "list gallery entries");
    gal->add_flag("--all", o.all, "check every entry with default parameters");
    gal->add_option("--name", o.name, "check one entry");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "stframe: " << e.what() << "\n";
        return kUsage;
    }

    detail::Outcome result;
    try {
        if (fuzz->parsed()) {
            result = detail::cmd_fuzz(o);
        } else if (gal->parsed()) {
            result = detail::cmd_gallery(o);
        } else {
            const GeometrySpec spec = detail::resolve_spec(o);
            const RealizedGeometry geo = realize(spec);
            if (identity->parsed()) result = detail::cmd_identity(o, spec, geo.tensor);
            else if (check->parsed()) result = detail::cmd_check(o, spec, geo.tensor);
            else if (frame->parsed()) result = detail::cmd_frame(o, spec, geo.tensor, false, std::nullopt);
            else result = detail::cmd_frame(o, spec, geo.tensor, true, geo.volume);
        }
    } catch (const SearchFailed& e) {
        err << "stframe: search failure: " << e.what() << "\n";
        return kSearchFailure;
    } catch (const NoConvergence& e) {
        err << "stframe: search failure: " << e.what() << "\n";
        return kSearchFailure;
    } catch (const NotSTFrame& e) {
        err << "stframe: internal failure: " << e.what() << "\n";
        return kSearchFailure;
    } catch (const CaseRelationViolated& e) {
        err << "stframe: internal failure: " << e.what() << "\n";
        return kSearchFailure;
    } catch (const ParseError& e) {
        err << "stframe: parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "stframe: " << e.what() << "\n";
        return kUsage;
    }

    if (o.json_path == "-") {
        out << dump(result.report);
    } else {
        out << result.text;
        if (!o.json_path.empty()) {
            std::ofstream f(o.json_path, std::ios::binary);
            if (!f) {
                err << "stframe: cannot write '" << o.json_path << "'\n";
                return kUsage;
            }
            f << dump(result.report);
        }
    }
    return result.code;
}

}  // namespace stframe::cli
