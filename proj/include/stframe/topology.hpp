#pragma once

// Euler and Pontryagin integrands read off a generalized Singer-Thorpe frame,
// and closed forms for inputs whose integrands are constant.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "stframe/cases.hpp"
#include "stframe/errors.hpp"
#include "stframe/st_basis.hpp"
#include "stframe/tensor.hpp"

namespace stframe {

using Vec3 = std::array<double, 3>;

inline double dot3(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

struct STVectors {
    Vec3 a_prime{};   ///< (R_1212, R_1313, R_1414)
    Vec3 a_dprime{};  ///< (R_3434, R_2424, R_2323)
    Vec3 b{};         ///< (R_1234, R_1342, R_1423)
    Vec3 a{};         ///< (a' + a'') / 2
};

/// Reads the plane vectors in any orthonormal frame, without checking that the
/// frame is Singer-Thorpe. b sums to zero in every frame by the Bianchi identity.
inline STVectors plane_vectors(const Curvature4& r, const Frame4& f) {
    const Curvature4 rr = rotate(r, f);
    STVectors v;
    v.a_prime = {rr(0, 1, 0, 1), rr(0, 2, 0, 2), rr(0, 3, 0, 3)};
    v.a_dprime = {rr(2, 3, 2, 3), rr(1, 3, 1, 3), rr(1, 2, 1, 2)};
    v.b = {rr(0, 1, 2, 3), rr(0, 2, 3, 1), rr(0, 3, 1, 2)};
    for (int i = 0; i < 3; ++i) v.a[i] = 0.5 * (v.a_prime[i] + v.a_dprime[i]);
    return v;
}

/// Plane vectors of a generalized Singer-Thorpe frame. Throws NotSTFrame and
/// OrientationReversed (b flips sign with the orientation).
inline STVectors st_vectors(const Curvature4& r, const Frame4& f, double penalty_tol = kDefaultPenaltyTolerance) {
    const double p = st_penalty(r, f);
    if (!(p < penalty_tol)) throw NotSTFrame(p);
    if (f.orientation() < 0) throw OrientationReversed();
    STVectors v = plane_vectors(r, f);
    const double bianchi = v.b[0] + v.b[1] + v.b[2];
    if (std::abs(bianchi) > 1e-10 * r.scale())
        throw SymmetryViolation("b1 + b2 + b3 = 0", {0, 1, 2, 3}, std::abs(bianchi));
    return v;
}

/// f = |a|^2 - |a'|^2.
inline double f_value(const STVectors& v) { return dot3(v.a, v.a) - dot3(v.a_prime, v.a_prime); }

/// Closed form of f in terms of the Ricci eigenvalues (frame order) for each
/// sign case. Throws CaseRelationViolated when the eigenvalues do not satisfy
/// the case's relation to 1e-8 * max(1, max|lambda|).
inline double f_by_case(const Vec4& l, SignCase c) {
    double scale = 1.0;
    for (double x : l) scale = std::max(scale, std::abs(x));
    const double defect = relation_residual(c, l);
    if (defect > 1e-8 * scale)
        throw CaseRelationViolated("eigenvalues violate '" + std::string(relation_text(c)) + "' for case " +
                                   to_string(c) + " by " + std::to_string(defect));
    auto sq = [](double x) { return x * x; };
    switch (c) {
        case SignCase::i: return 0.0;
        case SignCase::ii: return -0.25 * sq(l[0] - l[2]);
        case SignCase::iii: return -0.25 * sq(l[0] - l[1]);
        case SignCase::iv: return -0.25 * sq(l[0] - l[2]);
        case SignCase::v: return -0.25 * (sq(l[0] - l[2]) + sq(l[0] - l[3]));
        case SignCase::vi: return -0.25 * (sq(l[0] - l[1]) + sq(l[0] - l[3]));
        case SignCase::vii: return -0.25 * (sq(l[0] - l[1]) + sq(l[0] - l[2]));
        case SignCase::viii: return -0.25 * (sq(l[0] + l[1]) + sq(l[0] + l[2]) + sq(l[0] + l[3]));
    }
    return 0.0;
}

struct InvariantReport {
    STVectors vectors;
    int orientation = 1;
    double chi_density = 0.0;  ///< (<a', a''> + |b|^2) / (4 pi^2)
    double p1_density = 0.0;   ///< <a' + a'', b> / (2 pi^2)
    double f = 0.0;
    std::optional<double> volume;
    std::optional<double> chi, p1, c_bound;  ///< c_bound = f volume / (2 pi^2)
    std::optional<bool> bound_plus_ok;       ///< 2 chi + p1 >= C
    std::optional<bool> bound_minus_ok;      ///< 2 chi - p1 >= C
    std::optional<bool> hitchin_ok;          ///< 2 chi >= 3 |sigma|, sigma = p1 / 3
};

/// Integrands at the frame F and, given the total volume of a manifold on which
/// they are constant, the Euler number, first Pontryagin number, the constant C
/// and the inequality flags. Comparisons allow 1e-9 relative slack so that the
/// equality cases register as satisfied.
inline InvariantReport homogeneous_invariants(const Curvature4& r, const Frame4& f,
                                              std::optional<double> volume = std::nullopt,
                                              double penalty_tol = kDefaultPenaltyTolerance) {
    if (volume && !(*volume > 0.0 && std::isfinite(*volume))) throw ValidationError("volume", "must be positive");
    InvariantReport rep;
    rep.vectors = st_vectors(r, f, penalty_tol);
    rep.orientation = f.orientation();
    const STVectors& v = rep.vectors;
    Vec3 sum{};
    for (int i = 0; i < 3; ++i) sum[i] = v.a_prime[i] + v.a_dprime[i];
    const double pi2 = M_PI * M_PI;
    rep.chi_density = (dot3(v.a_prime, v.a_dprime) + dot3(v.b, v.b)) / (4.0 * pi2);
    rep.p1_density = dot3(sum, v.b) / (2.0 * pi2);
    rep.f = f_value(v);
    if (volume) {
        rep.volume = volume;
        const double chi = rep.chi_density * *volume;
        const double p1 = rep.p1_density * *volume;
        const double c = rep.f * *volume / (2.0 * pi2);
        rep.chi = chi;
        rep.p1 = p1;
        rep.c_bound = c;
        const double slack = 1e-9 * std::max({1.0, std::abs(chi), std::abs(p1), std::abs(c)});
        rep.bound_plus_ok = 2.0 * chi + p1 >= c - slack;
        rep.bound_minus_ok = 2.0 * chi - p1 >= c - slack;
        rep.hitchin_ok = 2.0 * chi >= std::abs(p1) - slack;  // 3|sigma| = |p1|
    }
    return rep;
}

}  // namespace stframe
