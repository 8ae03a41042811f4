#pragma once

// Generators of curvature tensors: left-invariant metrics on Lie groups,
// products of space forms, constant curvature and seeded random tensors.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "stframe/errors.hpp"
#include "stframe/tensor.hpp"

namespace stframe {

using Array3 = std::array<std::array<std::array<double, 4>, 4>, 4>;

/// One bracket entry [e_i, e_j] += value * e_k, zero-based indices.
struct BracketTerm {
    int i, j, k;
    double value;
};

/// Metric Lie algebra in an orthonormal basis: [e_i, e_j] = sum_k c_ijk e_k.
class LieAlgebra4 {
public:
    LieAlgebra4() = default;

    /// Each term sets c_ijk and its antisymmetric image c_jik = -c_ijk.
    static LieAlgebra4 from_brackets(const std::vector<BracketTerm>& terms) {
        LieAlgebra4 g;
        for (const auto& t : terms) {
            if (t.i < 0 || t.i > 3 || t.j < 0 || t.j > 3 || t.k < 0 || t.k > 3)
                throw ValidationError("c", "bracket index out of range 1..4");
            if (t.i == t.j) {
                if (t.value != 0.0) throw ValidationError("c", "[e_i, e_i] must vanish");
                continue;
            }
            g.c_[t.i][t.j][t.k] = t.value;
            g.c_[t.j][t.i][t.k] = -t.value;
        }
        return g;
    }

    double operator()(int i, int j, int k) const { return c_[i][j][k]; }
    const Array3& constants() const { return c_; }

    /// Largest |sum_m (c_ijm c_mkl + c_jkm c_mil + c_kim c_mjl)|.
    double jacobi_defect() const {
        double worst = 0.0;
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j)
                for (int k = 0; k < kDim; ++k)
                    for (int l = 0; l < kDim; ++l) {
                        double s = 0.0;
                        for (int m = 0; m < kDim; ++m)
                            s += c_[i][j][m] * c_[m][k][l] + c_[j][k][m] * c_[m][i][l] + c_[k][i][m] * c_[m][j][l];
                        worst = std::max(worst, std::abs(s));
                    }
        return worst;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& a : c_)
            for (const auto& b : a)
                for (double v : b) m = std::max(m, std::abs(v));
        return m;
    }

private:
    Array3 c_{};
};

/// Gamma_ijk = <D_{e_i} e_j, e_k>.
struct Connection4 {
    Array3 gamma{};
    double operator()(int i, int j, int k) const { return gamma[i][j][k]; }
};

/// Levi-Civita connection and curvature of the left-invariant metric for which
/// the basis of `g` is orthonormal. Throws JacobiViolation when `g` is not a Lie
/// algebra (tolerance 1e-10 relative to max(1, max|c|^2)).
inline std::pair<Connection4, Curvature4> lie_group_curvature(const LieAlgebra4& g) {
    const double cmax = std::max(1.0, g.max_abs());
    const double defect = g.jacobi_defect();
    if (defect > 1e-10 * cmax * cmax) throw JacobiViolation(defect);

    // Koszul formula for left-invariant fields in an orthonormal frame.
    Connection4 conn;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k) conn.gamma[i][j][k] = 0.5 * (g(i, j, k) - g(j, k, i) + g(k, i, j));

    // R(e_i,e_j)e_k = D_i D_j e_k - D_j D_i e_k - D_[e_i,e_j] e_k with constant coefficients.
    RawTensor4 raw{};
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k)
                for (int l = 0; l < kDim; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < kDim; ++m)
                        s += conn(j, k, m) * conn(i, m, l) - conn(i, k, m) * conn(j, m, l) - g(i, j, m) * conn(m, k, l);
                    raw[flat_index(i, j, k, l)] = s;
                }
    return {conn, make_curvature(raw)};
}

namespace detail {

/// Sets R_ijkl = value together with its pair-symmetry orbit.
inline void set_orbit(RawTensor4& raw, int i, int j, int k, int l, double value) {
    raw[flat_index(i, j, k, l)] = value;
    raw[flat_index(j, i, k, l)] = -value;
    raw[flat_index(i, j, l, k)] = -value;
    raw[flat_index(j, i, l, k)] = value;
    raw[flat_index(k, l, i, j)] = value;
    raw[flat_index(l, k, i, j)] = -value;
    raw[flat_index(k, l, j, i)] = -value;
    raw[flat_index(l, k, j, i)] = value;
}

}  // namespace detail

/// Riemannian product of two surfaces with Gaussian curvatures c1 (plane e1e2)
/// and c2 (plane e3e4).
inline Curvature4 surface_product(double c1, double c2) {
    RawTensor4 raw{};
    detail::set_orbit(raw, 0, 1, 0, 1, -c1);
    detail::set_orbit(raw, 2, 3, 2, 3, -c2);
    return make_curvature(raw);
}

/// Product of a 3-dimensional space form of curvature c (e1, e2, e3) with a line (e4).
inline Curvature4 space_form_product(double c) {
    RawTensor4 raw{};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) detail::set_orbit(raw, i, j, i, j, -c);
    return make_curvature(raw);
}

/// R_ijkl = c (d_il d_jk - d_ik d_jl).
inline Curvature4 constant_curvature(double c) {
    RawTensor4 raw{};
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k)
                for (int l = 0; l < kDim; ++l)
                    raw[flat_index(i, j, k, l)] = c * ((i == l && j == k ? 1.0 : 0.0) - (i == k && j == l ? 1.0 : 0.0));
    return make_curvature(raw);
}

/// Tensor whose frame components are a' = (R_1212, R_1313, R_1414),
/// a'' = (R_3434, R_2424, R_2323), b = (R_1234, R_1342, R_1423) with every mixed
/// component R_ijjk (i != k) zero. Throws SymmetryViolation unless b sums to zero.
inline Curvature4 curvature_from_plane_vectors(const std::array<double, 3>& a_prime,
                                               const std::array<double, 3>& a_dprime,
                                               const std::array<double, 3>& b) {
    RawTensor4 raw{};
    detail::set_orbit(raw, 0, 1, 0, 1, a_prime[0]);
    detail::set_orbit(raw, 0, 2, 0, 2, a_prime[1]);
    detail::set_orbit(raw, 0, 3, 0, 3, a_prime[2]);
    detail::set_orbit(raw, 2, 3, 2, 3, a_dprime[0]);
    detail::set_orbit(raw, 1, 3, 1, 3, a_dprime[1]);
    detail::set_orbit(raw, 1, 2, 1, 2, a_dprime[2]);
    detail::set_orbit(raw, 0, 1, 2, 3, b[0]);
    detail::set_orbit(raw, 0, 2, 3, 1, b[1]);
    detail::set_orbit(raw, 0, 3, 1, 2, b[2]);
    return make_curvature(raw);
}

/// Seeded generator with a platform-independent mapping from engine output to
/// uniform and normal variates.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform(0.0, 1.0);
        const double u2 = uniform(0.0, 1.0);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Projection of an i.i.d. uniform[-1,1] array; deterministic in the seed.
inline Curvature4 random_curvature(std::uint64_t seed) {
    Rng rng(seed);
    RawTensor4 raw{};
    for (double& v : raw) v = rng.uniform(-1.0, 1.0);
    return project_to_curvature(raw);
}

/// Random orientation-preserving orthonormal frame (Gram-Schmidt of a Gaussian matrix).
inline Frame4 random_frame(std::uint64_t seed) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    Mat4 m{};
    for (auto& row : m)
        for (double& v : row) v = rng.normal();
    Frame4 f = Frame4::orthonormalized(m);
    if (f.orientation() < 0) {
        Mat4 rows = f.matrix();
        for (double& v : rows[3]) v = -v;
        f = Frame4(rows);
    }
    return f;
}

}  // namespace stframe
