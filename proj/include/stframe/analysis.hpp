#pragma once

// Residuals of the four-dimensional curvature identity
//   R^ - 2 rho^ - L rho + tau rho - (|R|^2 - 4|rho|^2 + tau^2)/4 g = 0,
// of the weakly-Einstein condition R^ = |R|^2/4 g, and of the Einstein condition.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "stframe/tensor.hpp"

namespace stframe {

inline constexpr double kDefaultResidualTolerance = 1e-9;

struct ResidualReport {
    SymMatrix4 matrix;
    double max_abs = 0.0;
    double relative = 0.0;  ///< max_abs / max(1, |R|^2)
    double tolerance = kDefaultResidualTolerance;
    bool passes = true;
};

namespace detail {

inline ResidualReport make_report(const SymMatrix4& m, double norm_r2, double tol) {
    ResidualReport r;
    r.matrix = m;
    r.max_abs = m.max_abs();
    r.relative = r.max_abs / std::max(1.0, norm_r2);
    r.tolerance = tol;
    r.passes = r.relative < tol;
    return r;
}

}  // namespace detail

/// Holds for every algebraic curvature tensor in dimension four.
inline ResidualReport identity_residual(const Curvature4& r, double tol = kDefaultResidualTolerance) {
    const ScalarSummary s = summary(r);
    const DerivedTensors d = derived_tensors(r);
    const SymMatrix4 rho = ricci(r);
    SymMatrix4 m = d.r_check - 2.0 * d.rho_check - d.l_rho + s.tau * rho;
    m -= (0.25 * (s.norm_r2 - 4.0 * s.norm_rho2 + s.tau * s.tau)) * SymMatrix4::identity();
    return detail::make_report(m, s.norm_r2, tol);
}

/// R^_ij - |R|^2/4 delta_ij. Passing means weakly Einstein at the point.
inline ResidualReport weakly_einstein_residual(const Curvature4& r, double tol = kDefaultResidualTolerance) {
    const ScalarSummary s = summary(r);
    SymMatrix4 m = derived_tensors(r).r_check;
    m -= (0.25 * s.norm_r2) * SymMatrix4::identity();
    return detail::make_report(m, s.norm_r2, tol);
}

/// rho - tau/4 g.
inline ResidualReport einstein_residual(const Curvature4& r, double tol = kDefaultResidualTolerance) {
    const ScalarSummary s = summary(r);
    SymMatrix4 m = ricci(r);
    m -= (0.25 * s.tau) * SymMatrix4::identity();
    return detail::make_report(m, s.norm_r2, tol);
}

/// 2 rho^ + L rho - tau rho - |rho|^2 g + tau^2/4 g, the weakly-Einstein
/// condition after eliminating R^ with the universal identity.
inline ResidualReport reduced_identity_residual(const Curvature4& r, double tol = kDefaultResidualTolerance) {
    const ScalarSummary s = summary(r);
    const DerivedTensors d = derived_tensors(r);
    SymMatrix4 m = 2.0 * d.rho_check + d.l_rho - s.tau * ricci(r);
    m += (0.25 * s.tau * s.tau - s.norm_rho2) * SymMatrix4::identity();
    return detail::make_report(m, s.norm_r2, tol);
}

/// Ricci spectra that cannot occur on a weakly-Einstein tensor: three equal
/// nonzero eigenvalues and one zero. Returns 1..4 according to the slot of the
/// zero eigenvalue (slot 4 -> 1, slot 3 -> 2, slot 2 -> 3, slot 1 -> 4).
/// Comparisons use tol * max(1, max|lambda|).
inline std::optional<int> forbidden_pattern(const std::array<double, 4>& eigenvalues, double tol) {
    double scale = 1.0;
    for (double v : eigenvalues) scale = std::max(scale, std::abs(v));
    const double eps = tol * scale;
    for (int zero = 3; zero >= 0; --zero) {
        if (std::abs(eigenvalues[zero]) > eps) continue;
        std::array<double, 3> rest{};
        int n = 0;
        for (int i = 0; i < 4; ++i)
            if (i != zero) rest[n++] = eigenvalues[i];
        const bool equal = std::abs(rest[0] - rest[1]) <= eps && std::abs(rest[0] - rest[2]) <= eps &&
                           std::abs(rest[1] - rest[2]) <= eps;
        if (equal && std::abs(rest[0]) > eps) return 4 - zero;
    }
    return std::nullopt;
}

}  // namespace stframe
