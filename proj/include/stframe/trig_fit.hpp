#pragma once

// Exact interpolation of trigonometric polynomials of degree <= 2 and their
// global maximization on (-pi, pi].

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace stframe {

/// f(t) = a + b cos 2t + c sin 2t + d cos t + e sin t.
struct TrigPolynomial {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;

    double operator()(double t) const {
        return a + b * std::cos(2 * t) + c * std::sin(2 * t) + d * std::cos(t) + e * std::sin(t);
    }
    double derivative(double t) const {
        return -2 * b * std::sin(2 * t) + 2 * c * std::cos(2 * t) - d * std::sin(t) + e * std::cos(t);
    }
};

/// Samples at t = 0, pi/4, pi/2 of a function with frequencies {0, 2}.
inline TrigPolynomial fit_frequency2(double f0, double f_quarter, double f_half) {
    TrigPolynomial p;
    p.a = 0.5 * (f0 + f_half);
    p.b = 0.5 * (f0 - f_half);
    p.c = f_quarter - p.a;
    return p;
}

/// Samples at t = -pi/2, -pi/4, 0, pi/4, pi/2 of a function with frequencies {0, 1, 2}.
inline TrigPolynomial fit_mixed(double fm2, double fm1, double f0, double fp1, double fp2) {
    const double r2 = std::sqrt(2.0);
    TrigPolynomial p;
    p.e = 0.5 * (fp2 - fm2);
    const double a_minus_b = 0.5 * (fp2 + fm2);
    p.c = 0.5 * (fp1 - fm1 - r2 * p.e);
    const double sum_quarter = fp1 + fm1;  // 2a + sqrt2 d
    p.a = (sum_quarter - r2 * (f0 + a_minus_b)) / (2.0 * (1.0 - r2));
    p.b = p.a - a_minus_b;
    p.d = f0 - p.a - p.b;
    return p;
}

struct TrigExtremum {
    double t = 0.0;
    double value = 0.0;
    /// Every non-constant coefficient is below 1e-14 of the sample scale; t = 0.
    bool degenerate = false;
    TrigPolynomial fit;
};

namespace detail {

inline double wrap_angle(double t) {
    t = std::remainder(t, 2.0 * M_PI);
    if (t <= -M_PI) t += 2.0 * M_PI;
    return t;
}

}  // namespace detail

/// Global maximizer on (-pi, pi]; ties go to the smaller |t|.
inline TrigExtremum maximize(const TrigPolynomial& p, double sample_scale = 1.0) {
    TrigExtremum out;
    out.fit = p;
    const double scale = std::max(1.0, sample_scale);
    const double thresh = 1e-14 * scale;
    if (std::abs(p.b) < thresh && std::abs(p.c) < thresh && std::abs(p.d) < thresh && std::abs(p.e) < thresh) {
        out.degenerate = true;
        out.t = 0.0;
        out.value = p(0.0);
        return out;
    }

    if (p.d == 0.0 && p.e == 0.0) {
        // Maxima at atan2(c, b)/2 and that minus pi; the first has the smaller |t|.
        out.t = 0.5 * std::atan2(p.c, p.b);
        out.value = p(out.t);
        return out;
    }

    // Bracket every sign change + -> - of f' on a grid and bisect it.
    constexpr int kGrid = 720;
    const double h = 2.0 * M_PI / kGrid;
    double best_t = 0.0, best_v = -HUGE_VAL;
    auto consider = [&](double t) {
        t = detail::wrap_angle(t);
        const double v = p(t);
        const double tie = 1e-12 * scale;
        if (v > best_v + tie || (std::abs(v - best_v) <= tie && std::abs(t) < std::abs(best_t))) {
            best_t = t;
            best_v = v;
        }
    };
    double t0 = -M_PI;
    double d0 = p.derivative(t0);
    for (int n = 1; n <= kGrid; ++n) {
        const double t1 = -M_PI + n * h;
        const double d1 = p.derivative(t1);
        if (d0 > 0.0 && d1 <= 0.0) {
            double lo = t0, hi = t1;
            for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                (p.derivative(mid) > 0.0 ? lo : hi) = mid;
            }
            consider(std::abs(p.derivative(lo)) < std::abs(p.derivative(hi)) ? lo : hi);
        }
        t0 = t1;
        d0 = d1;
    }
    if (best_v == -HUGE_VAL) {
        // No sign change resolved on the grid: fall back to the best grid point.
        for (int n = 0; n < kGrid; ++n) consider(-M_PI + (n + 1) * h);
    }
    out.t = best_t;
    out.value = best_v;
    return out;
}

/// Fits and maximizes from 3 samples (t = 0, pi/4, pi/2; frequency 2 only) or
/// 5 samples (t = -pi/2, -pi/4, 0, pi/4, pi/2; frequencies 1 and 2).
inline TrigExtremum trig_fit_extremum(std::span<const double> samples) {
    double scale = 0.0;
    for (double s : samples) scale = std::max(scale, std::abs(s));
    if (samples.size() == 3) return maximize(fit_frequency2(samples[0], samples[1], samples[2]), scale);
    if (samples.size() == 5)
        return maximize(fit_mixed(samples[0], samples[1], samples[2], samples[3], samples[4]), scale);
    throw std::invalid_argument("trig_fit_extremum expects 3 or 5 samples");
}

}  // namespace stframe
