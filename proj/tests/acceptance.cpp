// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "stframe.hpp"
#include "stframe/cli.hpp"

using namespace stframe;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<GalleryEntry> weakly_einstein_gallery() {
    return {gallery("example4", {{"a", 1.0}, {"b", 0.0}}), gallery("example4", {{"a", 1.0}, {"b", 0.5}}),
            gallery("example4", {{"a", 2.0}, {"b", 0.5}}), gallery("example-pm-c", {{"c", 1.0}}),
            gallery("example-pm-c", {{"c", 3.0}}),         gallery("example6", {{"m", 2.0}})};
}

Outcome convention_lock() {
    auto [c, r] = lie_group_curvature(
        LieAlgebra4::from_brackets({{0, 1, 1, 2.0}, {0, 2, 2, -1.0}, {0, 3, 2, 2.0}, {0, 3, 3, -1.0}}));
    double worst = 0.0;
    auto want_g = [&](int i, int j, int k, double v) { worst = std::max(worst, std::abs(c(i - 1, j - 1, k - 1) - v)); };
    auto want_r = [&](int i, int j, int k, int l, double v) {
        worst = std::max(worst, std::abs(r(i - 1, j - 1, k - 1, l - 1) - v));
    };
    want_g(1, 3, 4, -1.0);
    want_g(2, 1, 2, -2.0);
    want_g(3, 1, 3, 1.0);
    want_g(3, 1, 4, -1.0);
    want_g(4, 1, 3, -1.0);
    want_g(4, 1, 4, 1.0);
    want_r(1, 2, 1, 2, 4.0);
    want_r(1, 4, 1, 4, 4.0);
    want_r(2, 3, 2, 3, -2.0);
    want_r(2, 4, 2, 4, -2.0);
    want_r(1, 3, 1, 4, -2.0);
    want_r(2, 3, 2, 4, 2.0);
    const Vec4 eig = ricci_spectrum(r).eigenvalues;
    const Vec4 want{2.0, 0.0, -2.0, -8.0};
    double eig_err = 0.0;
    for (int i = 0; i < 4; ++i) eig_err = std::max(eig_err, std::abs(eig[i] - want[i]));
    return {worst <= 1e-12 && eig_err <= 1e-10, "component error " + num(worst) + ", eigenvalue error " + num(eig_err)};
}

Outcome universal_identity() {
    double worst = 0.0;
    int n = 0;
    for (const auto& g : gallery_catalog()) {
        worst = std::max(worst, identity_residual(gallery(g.name).tensor).relative);
        ++n;
    }
    for (const auto& e : weakly_einstein_gallery()) {
        worst = std::max(worst, identity_residual(e.tensor).relative);
        ++n;
    }
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        worst = std::max(worst, identity_residual(random_curvature(seed)).relative);
        ++n;
    }
    return {worst < 1e-9, std::to_string(n) + " tensors, max relative residual " + num(worst)};
}

Outcome weakly_einstein_verdicts() {
    bool ok = true;
    double worst_pass = 0.0;
    for (double a : {1.0, 2.0})
        for (double b : {0.0, 0.5}) {
            const auto rep = weakly_einstein_residual(gallery("example4", {{"a", a}, {"b", b}}).tensor);
            worst_pass = std::max(worst_pass, rep.relative);
        }
    for (double c : {1.0, 3.0}) worst_pass = std::max(worst_pass, weakly_einstein_residual(surface_product(c, -c)).relative);
    ok = ok && worst_pass < 1e-12;

    const auto p12 = weakly_einstein_residual(surface_product(1.0, 2.0));
    const Vec4 want{-3.0, -3.0, 3.0, 3.0};
    double p12_err = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p12_err = std::max(p12_err, std::abs(p12.matrix(i, j) - (i == j ? want[i] : 0.0)));
    ok = ok && !p12.passes && p12_err <= 1e-10;

    const Curvature4 sf = space_form_product(1.0);
    const auto sfr = weakly_einstein_residual(sf);
    const auto fp = forbidden_pattern(ricci_spectrum(sf).eigenvalues, kDefaultMultiplicityTolerance);
    ok = ok && !sfr.passes && std::abs(sfr.matrix(3, 3) + 3.0) <= 1e-10 && fp == 1;
    return {ok, "passing max " + num(worst_pass) + ", product(1,2) diag error " + num(p12_err) +
                    ", space form residual_44 " + num(sfr.matrix(3, 3)) + ", forbidden pattern " +
                    (fp ? std::to_string(*fp) : "none")};
}

Outcome not_einstein_witness() {
    const Curvature4 r = gallery("example4", {{"a", 1.0}, {"b", 0.0}}).tensor;
    const SymMatrix4 rho = ricci(r);
    const bool ok = std::abs(rho(0, 0) + 3.0) <= 1e-12 && std::abs(rho(1, 1) - 1.0) <= 1e-12 &&
                    !einstein_residual(r).passes;
    return {ok, "rho_11 = " + num(rho(0, 0)) + ", rho_22 = " + num(rho(1, 1))};
}

Outcome forward_direction() {
    int successes = 0, total = 0;
    double worst_penalty = 0.0, worst_squares = 0.0;
    for (const auto& e : weakly_einstein_gallery()) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Curvature4 r = rotate(e.tensor, random_frame(10000 + seed));
            ++total;
            const double s = r.scale();
            try {
                const STReport rep = find_st_basis(r);
                const Curvature4 rr = rotate(r, rep.frame);
                double sq = 0.0;
                for (const auto& q : detail::kPlanePairs) {
                    const double x = rr(q[0], q[1], q[0], q[1]), y = rr(q[2], q[3], q[2], q[3]);
                    sq = std::max(sq, std::abs(x * x - y * y) / (s * s));
                }
                worst_penalty = std::max(worst_penalty, rep.penalty);
                worst_squares = std::max(worst_squares, sq);
                if (rep.penalty < kDefaultPenaltyTolerance && sq <= 1e-8) ++successes;
            } catch (const Error&) {
            }
        }
    }
    return {successes == total, std::to_string(successes) + "/" + std::to_string(total) + " frames, max penalty " +
                                    num(worst_penalty) + ", max squared-equality defect " + num(worst_squares)};
}

Outcome converse_witness() {
    const FallbackResult res = generic_st_search(surface_product(1.0, 2.0), Frame4::identity(), STOptions{}, false);
    double best = HUGE_VAL;
    for (double p : res.start_penalties) best = std::min(best, p);
    return {res.start_penalties.size() == 20 && best > 1e-6,
            std::to_string(res.start_penalties.size()) + " starts, best penalty " + num(best)};
}

Outcome einstein_strengthening() {
    int ok = 0, total = 0;
    double worst = 0.0;
    for (const Curvature4& base : {constant_curvature(1.0), constant_curvature(-1.0), surface_product(1.0, 1.0)}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Curvature4 r = rotate(base, random_frame(20000 + seed));
            ++total;
            try {
                const STReport rep = find_st_basis(r);
                const Curvature4 rr = rotate(r, rep.frame);
                double d = 0.0;
                for (const auto& q : detail::kPlanePairs)
                    d = std::max(d, std::abs(rr(q[0], q[1], q[0], q[1]) - rr(q[2], q[3], q[2], q[3])));
                worst = std::max(worst, d);
                if (d <= 1e-8) ++ok;
            } catch (const Error&) {
            }
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " frames, max |R'_1212 - R'_3434| " + num(worst)};
}

Outcome sign_cases() {
    const STReport pm = find_st_basis(surface_product(1.0, -1.0));
    const std::vector<SignCase> want{SignCase::ii, SignCase::vi, SignCase::vii, SignCase::viii};
    const Vec4& l = pm.sign_cases.eigenvalues;
    const double tau = l[0] + l[1] + l[2] + l[3];
    const STReport e4 = find_st_basis(gallery("example4", {{"a", 1.0}, {"b", 0.0}}).tensor);
    const Vec4& m = e4.sign_cases.eigenvalues;
    const double rel = std::abs(m[0] + m[1] - m[2] - m[3]);
    const bool ok = pm.sign_cases.cases == want && std::abs(tau) <= 1e-10 && e4.sign_cases.contains(SignCase::v) &&
                    rel <= 1e-10;
    std::string got;
    for (auto c : pm.sign_cases.cases) got += to_string(c);
    return {ok, "product(1,-1) cases " + got + ", tau " + num(tau) + "; example4 case (v) " +
                    (e4.sign_cases.contains(SignCase::v) ? "present" : "missing") + ", relation defect " + num(rel)};
}

Outcome f_cross_validation() {
    bool ok = true;
    double worst = 0.0, max_f = -HUGE_VAL;
    std::ostringstream values;
    for (const auto& e : weakly_einstein_gallery()) {
        const STReport rep = find_st_basis(e.tensor);
        const double f = f_value(st_vectors(e.tensor, rep.frame));
        const double s = e.tensor.scale();
        max_f = std::max(max_f, f);
        for (SignCase c : rep.sign_cases.cases)
            worst = std::max(worst, std::abs(f_by_case(rep.sign_cases.eigenvalues, c) - f) / (s * s));
        if (e.expect.f) ok = ok && std::abs(f - *e.expect.f) <= 1e-8 * s * s;
    }
    const double f_e4 = f_value(st_vectors(gallery("example4").tensor, find_st_basis(gallery("example4").tensor).frame));
    const double f_pm = f_value(st_vectors(surface_product(1.0, -1.0), find_st_basis(surface_product(1.0, -1.0)).frame));
    ok = ok && std::abs(f_e4 + 2.0) <= 1e-8 && std::abs(f_pm + 1.0) <= 1e-8;
    double einstein_f = 0.0;
    for (const auto& e : {gallery("example-products", {{"c1", 1.0}, {"c2", 1.0}}),
                          gallery("example-products", {{"c1", -2.0}, {"c2", -2.0}}),
                          gallery("example-spaceform", {{"c", 0.0}})}) {
        const double f = f_value(st_vectors(e.tensor, find_st_basis(e.tensor).frame));
        einstein_f = std::max(einstein_f, std::abs(f));
    }
    ok = ok && worst <= 1e-8 && max_f <= 0.0 && einstein_f == 0.0;
    return {ok, "max |f_value - f_by_case| " + num(worst) + ", max f " + num(max_f) + ", example4 f " + num(f_e4) +
                    ", product(1,-1) f " + num(f_pm) + ", Einstein |f| " + num(einstein_f)};
}

Outcome example6_round_trip() {
    bool ok = true;
    std::string detail;
    for (double m : {2.0, 3.0}) {
        const GalleryEntry e = gallery("example6", {{"m", m}});
        const InvariantReport inv = homogeneous_invariants(e.tensor, find_st_basis(e.tensor).frame, e.expect.volume);
        const double chi = *inv.chi, p1 = *inv.p1, c = *inv.c_bound;
        ok = ok && std::abs(chi - 4.0 * (1.0 - m)) <= 1e-10 && std::abs(p1) <= 1e-10 &&
             std::abs(c - 8.0 * (1.0 - m)) <= 1e-10 && std::abs(2 * chi + p1 - c) <= 1e-10 &&
             std::abs(2 * chi - p1 - c) <= 1e-10 && !*inv.hitchin_ok;
        detail += "m=" + num(m) + ": chi " + num(chi) + ", p1 " + num(p1) + ", C " + num(c) + "; ";
    }
    const Curvature4 s4 = constant_curvature(1.0);
    const InvariantReport inv = homogeneous_invariants(s4, find_st_basis(s4).frame, 8.0 * M_PI * M_PI / 3.0);
    ok = ok && std::abs(*inv.chi - 2.0) <= 1e-10 && std::abs(*inv.p1) <= 1e-10 && *inv.hitchin_ok;
    return {ok, detail + "S^4: chi " + num(*inv.chi) + ", p1 " + num(*inv.p1)};
}

Outcome bianchi_vector() {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const Curvature4 r = random_curvature(30000 + t);
        for (std::uint64_t f = 0; f < 100; ++f) {
            const STVectors v = plane_vectors(r, random_frame(40000 + f));
            worst = std::max(worst, std::abs(v.b[0] + v.b[1] + v.b[2]) / r.scale());
        }
    }
    return {worst <= 1e-10, "10000 tensor/frame pairs, max |b1 + b2 + b3| / scale " + num(worst)};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> commands = {
        {"identity", "--gallery", "example-s2-1"},
        {"check", "--gallery", "example-products", "--c1", "1", "--c2", "2"},
        {"frame", "--gallery", "example4", "--b", "0.5"},
        {"frame", "--gallery", "example-products", "--c1", "1", "--c2", "1", "--seed", "3"},
        {"invariants", "--gallery", "example6", "--m", "3"},
        {"fuzz", "--count", "100", "--seed", "5"},
        {"gallery", "--all"},
    };
    int same = 0;
    for (auto args : commands) {
        args.push_back("--json");
        args.push_back("-");
        std::ostringstream a, b, ea, eb;
        const int ca = cli::run(args, a, ea), cb = cli::run(args, b, eb);
        if (ca == cb && a.str() == b.str() && !a.str().empty()) ++same;
    }
    return {same == static_cast<int>(commands.size()),
            std::to_string(same) + "/" + std::to_string(commands.size()) + " reports byte-identical"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"convention lock", convention_lock},
        {"universal identity", universal_identity},
        {"weakly Einstein verdicts", weakly_einstein_verdicts},
        {"not-Einstein witness", not_einstein_witness},
        {"generalized Singer-Thorpe frames exist for weakly Einstein tensors", forward_direction},
        {"no frame for product(1,2)", converse_witness},
        {"Einstein tensors give unsquared plane equalities", einstein_strengthening},
        {"sign-case classification", sign_cases},
        {"f cross-validation", f_cross_validation},
        {"Euler and Pontryagin round trip", example6_round_trip},
        {"Bianchi vector", bianchi_vector},
        {"CLI determinism", determinism},
    };
    int failures = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n) {
        Outcome o;
        try {
            o = criteria[n].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failures;
        std::printf("%s %2zu. %s: %s\n", o.ok ? "PASS" : "FAIL", n + 1, criteria[n].first.c_str(), o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
