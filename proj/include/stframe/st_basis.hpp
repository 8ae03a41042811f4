#pragma once

// Generalized Singer-Thorpe frames: orthonormal frames in which every mixed
// component R_ijjk (i != k) vanishes and the opposite plane components agree up
// to sign, R_1212^2 = R_3434^2, R_1313^2 = R_2424^2, R_1414^2 = R_2323^2.
//
// find_st_basis follows the constructive existence argument case by case on the
// Ricci multiplicity pattern and falls back to direct minimization of the
// frame penalty over SO(4) when the construction does not close.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "stframe/analysis.hpp"
#include "stframe/cases.hpp"
#include "stframe/eigen.hpp"
#include "stframe/errors.hpp"
#include "stframe/sources.hpp"
#include "stframe/tensor.hpp"
#include "stframe/trig_fit.hpp"

namespace stframe {

inline constexpr double kDefaultPenaltyTolerance = 1e-16;
inline constexpr double kDefaultSignTolerance = 1e-8;

class NotWeaklyEinstein : public Error {
public:
    explicit NotWeaklyEinstein(ResidualReport report)
        : Error("tensor is not weakly Einstein, relative residual " + std::to_string(report.relative)),
          report_(std::move(report)) {}
    const ResidualReport& report() const { return report_; }

private:
    ResidualReport report_;
};

class SearchFailed : public Error {
public:
    SearchFailed(double best_penalty, std::vector<double> start_penalties)
        : Error("no generalized Singer-Thorpe frame found, best penalty " + std::to_string(best_penalty)),
          best_(best_penalty),
          starts_(std::move(start_penalties)) {}
    double best_penalty() const { return best_; }
    const std::vector<double>& start_penalties() const { return starts_; }

private:
    double best_;
    std::vector<double> starts_;
};

enum class ConstructionPath { DirectEigenbasis, RotationII, RotationIII, RotationIV, GenericFallback };

inline std::string to_string(ConstructionPath p) {
    switch (p) {
        case ConstructionPath::DirectEigenbasis: return "direct-eigenbasis";
        case ConstructionPath::RotationII: return "rotation-II";
        case ConstructionPath::RotationIII: return "rotation-III";
        case ConstructionPath::RotationIV: return "rotation-IV";
        case ConstructionPath::GenericFallback: return "generic-fallback";
    }
    return "?";
}

struct STOptions {
    double residual_tol = kDefaultResidualTolerance;
    double tol_mult = kDefaultMultiplicityTolerance;
    double penalty_tol = kDefaultPenaltyTolerance;
    std::uint64_t seed = 0;
    int constructive_starts = 4;
    int fallback_starts = 20;
    int max_sweeps = 100;
};

namespace detail {

struct MixedIndex {
    int i, j, k;
};

/// The 12 distinct mixed components R_ijjk, i < k, j not in {i, k}. The penalty
/// sums over ordered (i, k), so each enters twice.
inline constexpr std::array<MixedIndex, 12> kMixed = {{{1, 0, 2},
                                                       {1, 0, 3},
                                                       {2, 0, 3},
                                                       {0, 1, 2},
                                                       {0, 1, 3},
                                                       {2, 1, 3},
                                                       {0, 2, 1},
                                                       {0, 2, 3},
                                                       {1, 2, 3},
                                                       {0, 3, 1},
                                                       {0, 3, 2},
                                                       {1, 3, 2}}};

/// Opposite plane pairs (ab | cd): R_abab against R_cdcd.
inline constexpr std::array<std::array<int, 4>, 3> kPlanePairs = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};

inline constexpr std::array<std::array<int, 2>, 6> kPlanes = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline double penalty_raw(const RawTensor4& t) {
    double p = 0.0;
    for (const auto& m : kMixed) {
        const double v = t[flat_index(m.i, m.j, m.j, m.k)];
        p += 2.0 * v * v;
    }
    for (const auto& q : kPlanePairs) {
        const double x = t[flat_index(q[0], q[1], q[0], q[1])];
        const double y = t[flat_index(q[2], q[3], q[2], q[3])];
        const double d = x * x - y * y;
        p += d * d;
    }
    return p;
}

inline double pow4(double s) { return s * s * s * s; }

/// Penalty of the frame `w` normalized by scale^4.
inline double frame_penalty(const Curvature4& r, const Mat4& w) {
    return penalty_raw(rotate_raw(r.components(), w)) / pow4(r.scale());
}

inline Mat4 rotated(const Mat4& w, int a, int b, double t) { return multiply(givens(a, b, t), w); }

/// d/dt at t = 0 of the component T_ijkl after rotating the frame in the (a, b) plane.
inline double component_derivative(const RawTensor4& t, std::array<int, 4> idx, int a, int b) {
    double d = 0.0;
    for (int slot = 0; slot < kDim; ++slot) {
        const int orig = idx[slot];
        if (orig == a) {
            idx[slot] = b;
            d += t[flat_index(idx[0], idx[1], idx[2], idx[3])];
        } else if (orig == b) {
            idx[slot] = a;
            d -= t[flat_index(idx[0], idx[1], idx[2], idx[3])];
        }
        idx[slot] = orig;
    }
    return d;
}

/// Solves the n x n system a x = b by Gaussian elimination with partial pivoting.
/// Returns false on a numerically singular matrix.
template <std::size_t N>
bool solve_linear(std::array<std::array<double, N>, N> a, std::array<double, N>& b) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0 || !std::isfinite(a[piv][col])) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = N; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < N; ++c) s -= a[i][c] * b[c];
        b[i] = s / a[i][i];
    }
    return true;
}

/// Levenberg-Marquardt on the residual vector of the penalty (mixed components
/// and squared plane differences) over the six rotation planes. Drives a frame
/// in the basin of a zero-penalty frame to full precision.
inline Mat4 polish_frame(const Curvature4& r, Mat4 w, int max_iter = 100) {
    constexpr std::size_t kRes = kMixed.size() + kPlanePairs.size();
    const double s4 = pow4(r.scale());

    auto residuals = [&](const RawTensor4& t) {
        std::array<double, kRes> res{};
        std::size_t n = 0;
        for (const auto& m : kMixed) res[n++] = std::sqrt(2.0) * t[flat_index(m.i, m.j, m.j, m.k)];
        for (const auto& q : kPlanePairs) {
            const double x = t[flat_index(q[0], q[1], q[0], q[1])];
            const double y = t[flat_index(q[2], q[3], q[2], q[3])];
            res[n++] = x * x - y * y;
        }
        return res;
    };

    RawTensor4 t = rotate_raw(r.components(), w);
    double p = penalty_raw(t);
    double mu = 1e-3;
    for (int it = 0; it < max_iter && p > 1e-34 * s4; ++it) {
        const auto res = residuals(t);
        std::array<std::array<double, kRes>, 6> jac{};  // jac[plane][residual]
        for (std::size_t c = 0; c < kPlanes.size(); ++c) {
            const int a = kPlanes[c][0], b = kPlanes[c][1];
            std::size_t n = 0;
            for (const auto& m : kMixed) jac[c][n++] = std::sqrt(2.0) * component_derivative(t, {m.i, m.j, m.j, m.k}, a, b);
            for (const auto& q : kPlanePairs) {
                const double x = t[flat_index(q[0], q[1], q[0], q[1])];
                const double y = t[flat_index(q[2], q[3], q[2], q[3])];
                const double dx = component_derivative(t, {q[0], q[1], q[0], q[1]}, a, b);
                const double dy = component_derivative(t, {q[2], q[3], q[2], q[3]}, a, b);
                jac[c][n++] = 2.0 * x * dx - 2.0 * y * dy;
            }
        }
        std::array<std::array<double, 6>, 6> jtj{};
        std::array<double, 6> jtr{};
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t k = 0; k < kRes; ++k) jtr[i] += jac[i][k] * res[k];
            for (std::size_t j = 0; j < 6; ++j)
                for (std::size_t k = 0; k < kRes; ++k) jtj[i][j] += jac[i][k] * jac[j][k];
        }
        double diag_max = 0.0;
        for (std::size_t i = 0; i < 6; ++i) diag_max = std::max(diag_max, jtj[i][i]);
        if (diag_max == 0.0) break;

        bool accepted = false;
        while (!accepted && mu < 1e20) {
            auto lhs = jtj;
            std::array<double, 6> step{};
            for (std::size_t i = 0; i < 6; ++i) {
                lhs[i][i] += mu * (jtj[i][i] + 1e-12 * diag_max);
                step[i] = -jtr[i];
            }
            if (!solve_linear(lhs, step)) {
                mu *= 10.0;
                continue;
            }
            Mat4 trial = w;
            for (std::size_t c = 0; c < kPlanes.size(); ++c) trial = rotated(trial, kPlanes[c][0], kPlanes[c][1], step[c]);
            trial = Frame4::orthonormalized(trial).matrix();
            const RawTensor4 tt = rotate_raw(r.components(), trial);
            const double pt = penalty_raw(tt);
            if (pt < p) {
                w = trial;
                t = tt;
                p = pt;
                mu = std::max(mu / 3.0, 1e-12);
                accepted = true;
            } else {
                mu *= 4.0;
            }
        }
        if (!accepted) break;
    }
    return w;
}

/// Cyclic coordinate descent of the penalty over the six Givens angles. Each
/// line search scans [-pi/2, pi/2) (the penalty has period pi in every angle)
/// and refines the best cell by golden-section search.
inline Mat4 coordinate_descent(const Curvature4& r, Mat4 w, int max_sweeps, double stop_penalty) {
    const double s4 = pow4(r.scale());
    RawTensor4 t = rotate_raw(r.components(), w);
    double p = penalty_raw(t) / s4;

    auto along = [&](int a, int b, double angle) {
        RawTensor4 u = t;
        apply_givens(u, a, b, std::cos(angle), std::sin(angle));
        return penalty_raw(u) / s4;
    };

    constexpr int kCells = 12;
    const double cell = M_PI / kCells;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int sweep = 0; sweep < max_sweeps && p > stop_penalty; ++sweep) {
        const double before = p;
        for (const auto& plane : kPlanes) {
            const int a = plane[0], b = plane[1];
            double best_t = 0.0, best_v = p;
            for (int n = 0; n < kCells; ++n) {
                const double angle = -M_PI / 2 + n * cell;
                const double v = along(a, b, angle);
                if (v < best_v) {
                    best_v = v;
                    best_t = angle;
                }
            }
            double lo = best_t - cell, hi = best_t + cell;
            double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
            double f1 = along(a, b, x1), f2 = along(a, b, x2);
            for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
                if (f1 < f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - inv_phi * (hi - lo);
                    f1 = along(a, b, x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + inv_phi * (hi - lo);
                    f2 = along(a, b, x2);
                }
            }
            const double gt = f1 < f2 ? x1 : x2;
            const double gv = std::min(f1, f2);
            if (gv < best_v) {
                best_v = gv;
                best_t = gt;
            }
            if (best_v < p && best_t != 0.0) {
                w = rotated(w, a, b, best_t);
                t = rotate_raw(r.components(), w);
                p = penalty_raw(t) / s4;
            }
        }
        if (before - p < 1e-14) break;
    }
    return Frame4::orthonormalized(w).matrix();
}

}  // namespace detail

/// Frame penalty P >= 0, zero exactly on generalized Singer-Thorpe frames:
/// the 24 mixed components R'_ijjk squared plus the squared differences of the
/// squared opposite plane components, normalized by scale^4.
inline double st_penalty(const Curvature4& r, const Frame4& f) { return detail::frame_penalty(r, f.matrix()); }

struct FallbackResult {
    Frame4 frame;
    double penalty = HUGE_VAL;
    int best_start = -1;
    std::vector<double> start_penalties;
};

/// Direct minimization of st_penalty: start 0 is `initial`, the others are
/// seeded random frames. Selection is by (penalty, start index). With
/// stop_on_success the remaining starts are skipped once one reaches the
/// tolerance.
inline FallbackResult generic_st_search(const Curvature4& r, const Frame4& initial, const STOptions& opt = {},
                                        bool stop_on_success = true) {
    FallbackResult out;
    for (int start = 0; start < opt.fallback_starts; ++start) {
        Mat4 w = start == 0 ? initial.matrix()
                            : random_frame(opt.seed * 1000003ULL + static_cast<std::uint64_t>(start)).matrix();
        w = detail::coordinate_descent(r, w, opt.max_sweeps, 1e-3 * opt.penalty_tol);
        w = detail::polish_frame(r, w);
        const double p = detail::frame_penalty(r, w);
        out.start_penalties.push_back(p);
        if (p < out.penalty) {
            out.penalty = p;
            out.frame = Frame4::orthonormalized(w);
            out.best_start = start;
        }
        if (stop_on_success && out.penalty < opt.penalty_tol) break;
    }
    return out;
}

struct SignCaseSet {
    std::vector<SignCase> cases;
    /// Admissible signs for the pairs (1212|3434), (1313|2424), (1414|2323).
    std::array<std::vector<int>, 3> admissible;
    /// Ricci eigenvalues in frame order, i.e. rho'_ii.
    Vec4 eigenvalues{};
    /// Defect of each reported case's eigenvalue relation, parallel to `cases`.
    std::vector<double> relation_residuals;

    bool contains(SignCase c) const { return std::find(cases.begin(), cases.end(), c) != cases.end(); }
};

/// Sign cases realized by the generalized Singer-Thorpe frame F. A sign e is
/// admissible for a plane pair when |R'_abab - e R'_cdcd| <= sign_tol * scale.
/// Throws NotSTFrame when F is not such a frame and CaseRelationViolated when a
/// reported case's eigenvalue relation fails.
inline SignCaseSet classify_sign_cases(const Curvature4& r, const Frame4& f,
                                       double penalty_tol = kDefaultPenaltyTolerance,
                                       double sign_tol = kDefaultSignTolerance) {
    const double p = st_penalty(r, f);
    if (!(p < penalty_tol)) throw NotSTFrame(p);
    const Curvature4 rr = rotate(r, f);
    const double s = r.scale();
    SignCaseSet out;
    for (std::size_t n = 0; n < 3; ++n) {
        const auto& q = detail::kPlanePairs[n];
        const double x = rr(q[0], q[1], q[0], q[1]);
        const double y = rr(q[2], q[3], q[2], q[3]);
        if (std::abs(x - y) <= sign_tol * s) out.admissible[n].push_back(1);
        if (std::abs(x + y) <= sign_tol * s) out.admissible[n].push_back(-1);
        // A penalty below tolerance bounds |x^2 - y^2|, not |x -+ y|; keep the closer sign.
        if (out.admissible[n].empty()) out.admissible[n].push_back(std::abs(x - y) <= std::abs(x + y) ? 1 : -1);
    }
    out.eigenvalues = ricci(rr).diagonal_entries();
    for (SignCase c : kAllSignCases) {
        const auto e = epsilons(c);
        bool ok = true;
        for (std::size_t n = 0; n < 3; ++n)
            ok = ok && std::find(out.admissible[n].begin(), out.admissible[n].end(), e[n]) != out.admissible[n].end();
        if (!ok) continue;
        const double defect = relation_residual(c, out.eigenvalues);
        // Each relation sums at most four component equalities.
        if (defect > 4.0 * sign_tol * s)
            throw CaseRelationViolated("case " + to_string(c) + " reported but '" + std::string(relation_text(c)) +
                                       "' fails by " + std::to_string(defect));
        out.cases.push_back(c);
        out.relation_residuals.push_back(defect);
    }
    return out;
}

struct STReport {
    Frame4 frame;
    double penalty = 0.0;
    ConstructionPath path = ConstructionPath::DirectEigenbasis;
    SignCaseSet sign_cases;
    RicciSpectrum eigen;
    /// The constructive maximization met a constant objective and used t = 0.
    bool degenerate_fit = false;
    /// Penalty of the constructive frame before any fallback.
    double constructive_penalty = 0.0;
    std::vector<double> fallback_start_penalties;
};

namespace detail {

struct Constructed {
    Mat4 frame;
    bool degenerate = false;
};

/// Pattern II in canonical order (e1, e2 span the repeated eigenspace V):
/// rotate V to maximize R(x, e3, x_perp, e4).
inline Constructed construct_case_ii(const Curvature4& r, const Mat4& w) {
    auto phi = [&](double t) {
        const Mat4 m = rotated(w, 0, 1, t);
        return evaluate(r, m[0], m[2], m[1], m[3]);
    };
    const std::array<double, 3> samples = {phi(0.0), phi(M_PI / 4), phi(M_PI / 2)};
    const TrigExtremum ext = trig_fit_extremum(samples);
    return {rotated(w, 0, 1, ext.t), ext.degenerate};
}

/// Pattern III in canonical order (V = span(e1, e2), V_perp = span(e3, e4)):
/// maximize R(x, y, x, y) over unit x in V, y in V_perp by alternating exact
/// maximizations in each plane.
inline Constructed construct_case_iii(const Curvature4& r, const Mat4& w0, const STOptions& opt) {
    const double s = r.scale();
    Constructed best{w0, false};
    double best_p = HUGE_VAL;
    for (int start = 0; start < opt.constructive_starts; ++start) {
        Mat4 w = w0;
        if (start > 0) {
            Rng rng(opt.seed * 7919ULL + static_cast<std::uint64_t>(start));
            w = rotated(rotated(w, 0, 1, rng.uniform(-M_PI, M_PI)), 2, 3, rng.uniform(-M_PI, M_PI));
        }
        bool degenerate = false;
        auto objective = [&](const Mat4& m) { return evaluate(r, m[0], m[2], m[0], m[2]); };
        double value = objective(w);
        for (int it = 0; it < opt.max_sweeps; ++it) {
            const double before = value;
            double step = 0.0;
            for (const auto& plane : std::array<std::array<int, 2>, 2>{{{0, 1}, {2, 3}}}) {
                auto f = [&](double t) { return objective(rotated(w, plane[0], plane[1], t)); };
                const std::array<double, 3> samples = {f(0.0), f(M_PI / 4), f(M_PI / 2)};
                const TrigExtremum ext = trig_fit_extremum(samples);
                degenerate = degenerate || ext.degenerate;
                w = rotated(w, plane[0], plane[1], ext.t);
                step = std::max(step, std::abs(ext.t));
            }
            value = objective(w);
            if (value - before < 1e-14 * s && step < 1e-12) break;
        }
        w = Frame4::orthonormalized(w).matrix();
        const double p = frame_penalty(r, w);
        if (p < best_p) {
            best_p = p;
            best = {w, degenerate};
        }
    }
    return best;
}

/// Pattern IV in canonical order (V = span(e1, e2, e3), e4 apart): maximize
/// R(x, y, y, e4) over orthonormal x, y in V by coordinate ascent over the three
/// rotation planes of V, then turn (e2, e3) by 45 degrees.
inline Constructed construct_case_iv(const Curvature4& r, const Mat4& w0, const STOptions& opt) {
    const double s = r.scale();
    Constructed best{w0, false};
    double best_p = HUGE_VAL;
    constexpr std::array<std::array<int, 2>, 3> planes = {{{0, 1}, {0, 2}, {1, 2}}};
    for (int start = 0; start < opt.constructive_starts; ++start) {
        Mat4 w = w0;
        if (start > 0) {
            Rng rng(opt.seed * 7919ULL + 104729ULL + static_cast<std::uint64_t>(start));
            for (const auto& pl : planes) w = rotated(w, pl[0], pl[1], rng.uniform(-M_PI, M_PI));
        }
        bool degenerate = false;
        auto objective = [&](const Mat4& m) { return evaluate(r, m[0], m[1], m[1], m[3]); };
        double value = objective(w);
        for (int it = 0; it < opt.max_sweeps; ++it) {
            const double before = value;
            double step = 0.0;
            for (const auto& pl : planes) {
                auto f = [&](double t) { return objective(rotated(w, pl[0], pl[1], t)); };
                const std::array<double, 5> samples = {f(-M_PI / 2), f(-M_PI / 4), f(0.0), f(M_PI / 4), f(M_PI / 2)};
                const TrigExtremum ext = trig_fit_extremum(samples);
                degenerate = degenerate || ext.degenerate;
                w = rotated(w, pl[0], pl[1], ext.t);
                step = std::max(step, std::abs(ext.t));
            }
            value = objective(w);
            if (value - before < 1e-14 * s && step < 1e-12) break;
        }
        w = Frame4::orthonormalized(rotated(w, 1, 2, M_PI / 4)).matrix();
        const double p = frame_penalty(r, w);
        if (p < best_p) {
            best_p = p;
            best = {w, degenerate};
        }
    }
    return best;
}

}  // namespace detail

/// Finds a generalized Singer-Thorpe frame of a weakly-Einstein tensor.
///
/// The Ricci eigenbasis is permuted to the canonical sub-case of its
/// multiplicity pattern (see MultiplicityPattern::canonical_order) and the
/// returned frame stays in that order, with the last two vectors swapped if
/// needed for det +1. Pattern V and eigenbases that already close are returned
/// directly; patterns II, III and IV run their rotation constructions; pattern
/// I and any construction left above `penalty_tol` go to generic_st_search.
///
/// Throws NotWeaklyEinstein when the weakly-Einstein residual fails and
/// SearchFailed when no start of the fallback reaches the tolerance.
inline STReport find_st_basis(const Curvature4& r, const STOptions& opt = {}) {
    ResidualReport we = weakly_einstein_residual(r, opt.residual_tol);
    if (!we.passes) throw NotWeaklyEinstein(std::move(we));

    STReport rep;
    rep.eigen = ricci_spectrum(r, opt.tol_mult);
    const MultiplicityPattern& pattern = rep.eigen.pattern;
    Mat4 w = rep.eigen.frame.permuted(pattern.canonical_order).matrix();
    double p = detail::frame_penalty(r, w);

    bool closed = false;
    if (pattern.tag != PatternTag::I && p < opt.penalty_tol) {
        rep.path = ConstructionPath::DirectEigenbasis;
        closed = true;
    } else if (pattern.tag == PatternTag::II || pattern.tag == PatternTag::III || pattern.tag == PatternTag::IV) {
        detail::Constructed c;
        if (pattern.tag == PatternTag::II) {
            c = detail::construct_case_ii(r, w);
            rep.path = ConstructionPath::RotationII;
        } else if (pattern.tag == PatternTag::III) {
            c = detail::construct_case_iii(r, w, opt);
            rep.path = ConstructionPath::RotationIII;
        } else {
            c = detail::construct_case_iv(r, w, opt);
            rep.path = ConstructionPath::RotationIV;
        }
        rep.degenerate_fit = c.degenerate;
        w = c.frame;
        p = detail::frame_penalty(r, w);
        closed = p < opt.penalty_tol;
    }
    rep.constructive_penalty = p;

    if (!closed) {
        const FallbackResult fb = generic_st_search(r, Frame4::orthonormalized(w), opt);
        rep.fallback_start_penalties = fb.start_penalties;
        rep.path = ConstructionPath::GenericFallback;
        if (!(fb.penalty < opt.penalty_tol)) throw SearchFailed(fb.penalty, fb.start_penalties);
        w = fb.frame.matrix();
    }

    rep.frame = Frame4::orthonormalized(w).with_positive_orientation();
    rep.penalty = st_penalty(r, rep.frame);
    rep.sign_cases = classify_sign_cases(r, rep.frame, opt.penalty_tol);
    return rep;
}

}  // namespace stframe
