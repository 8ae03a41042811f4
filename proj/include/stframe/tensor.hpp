#pragma once

// Pointwise algebraic curvature tensors in dimension four.
//
// Conventions: R(X,Y)Z = [D_X, D_Y]Z - D_[X,Y] Z and R_ijkl = g(R(e_i,e_j)e_k, e_l)
// in an orthonormal frame. With this sign the sectional curvature of the plane
// (e_i, e_j) is R_ijji, and the Ricci tensor is rho_ij = sum_a R_aija.
// All indices are zero-based in code; documents and reports use 1-based indices.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "stframe/errors.hpp"

namespace stframe {

inline constexpr int kDim = 4;

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;
using RawTensor4 = std::array<double, 256>;

constexpr std::size_t flat_index(int i, int j, int k, int l) {
    return static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l);
}

inline Mat4 identity_matrix() {
    Mat4 m{};
    for (int i = 0; i < kDim; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat4 multiply(const Mat4& a, const Mat4& b) {
    Mat4 c{};
    for (int i = 0; i < kDim; ++i)
        for (int k = 0; k < kDim; ++k)
            for (int j = 0; j < kDim; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline Mat4 transpose(const Mat4& a) {
    Mat4 t{};
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) t[i][j] = a[j][i];
    return t;
}

inline double determinant(const Mat4& m) {
    // Laplace expansion along 2x2 minors of the first two rows.
    auto minor2 = [&](int r0, int r1, int c0, int c1) { return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]; };
    return minor2(0, 1, 0, 1) * minor2(2, 3, 2, 3) - minor2(0, 1, 0, 2) * minor2(2, 3, 1, 3) +
           minor2(0, 1, 0, 3) * minor2(2, 3, 1, 2) + minor2(0, 1, 1, 2) * minor2(2, 3, 0, 3) -
           minor2(0, 1, 1, 3) * minor2(2, 3, 0, 2) + minor2(0, 1, 2, 3) * minor2(2, 3, 0, 1);
}

inline double dot(const Vec4& a, const Vec4& b) {
    double s = 0.0;
    for (int i = 0; i < kDim; ++i) s += a[i] * b[i];
    return s;
}

/// Symmetric 4x4 matrix. Writes go to both triangles, so the stored matrix is
/// always exactly symmetric.
class SymMatrix4 {
public:
    SymMatrix4() = default;

    static SymMatrix4 identity() { return diagonal({1.0, 1.0, 1.0, 1.0}); }

    static SymMatrix4 diagonal(const Vec4& d) {
        SymMatrix4 s;
        for (int i = 0; i < kDim; ++i) s.m_[i][i] = d[i];
        return s;
    }

    /// Symmetric part (M + M^T)/2.
    static SymMatrix4 from_matrix(const Mat4& m) {
        SymMatrix4 s;
        for (int i = 0; i < kDim; ++i)
            for (int j = i; j < kDim; ++j) s.set(i, j, 0.5 * (m[i][j] + m[j][i]));
        return s;
    }

    double operator()(int i, int j) const { return m_[i][j]; }

    void set(int i, int j, double v) {
        m_[i][j] = v;
        m_[j][i] = v;
    }

    const Mat4& matrix() const { return m_; }

    double trace() const { return m_[0][0] + m_[1][1] + m_[2][2] + m_[3][3]; }

    Vec4 diagonal_entries() const { return {m_[0][0], m_[1][1], m_[2][2], m_[3][3]}; }

    double max_abs() const {
        double r = 0.0;
        for (const auto& row : m_)
            for (double v : row) r = std::max(r, std::abs(v));
        return r;
    }

    /// Frobenius norm squared, sum_ij M_ij^2.
    double norm2() const {
        double r = 0.0;
        for (const auto& row : m_)
            for (double v : row) r += v * v;
        return r;
    }

    SymMatrix4& operator+=(const SymMatrix4& o) {
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j) m_[i][j] += o.m_[i][j];
        return *this;
    }
    SymMatrix4& operator-=(const SymMatrix4& o) {
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j) m_[i][j] -= o.m_[i][j];
        return *this;
    }
    SymMatrix4& operator*=(double a) {
        for (auto& row : m_)
            for (double& v : row) v *= a;
        return *this;
    }

    friend SymMatrix4 operator+(SymMatrix4 a, const SymMatrix4& b) { return a += b; }
    friend SymMatrix4 operator-(SymMatrix4 a, const SymMatrix4& b) { return a -= b; }
    friend SymMatrix4 operator*(double s, SymMatrix4 a) { return a *= s; }
    friend bool operator==(const SymMatrix4&, const SymMatrix4&) = default;

private:
    Mat4 m_{};
};

/// Orthonormal frame: rows of the matrix are the frame vectors written in the
/// reference basis.
class Frame4 {
public:
    static constexpr double kOrthogonalityTolerance = 1e-12;

    Frame4() : m_(identity_matrix()), orientation_(1) {}

    /// Throws FrameNotOrthogonal when |F F^T - I| exceeds 1e-12 anywhere.
    explicit Frame4(const Mat4& rows) : m_(rows) {
        const Mat4 g = multiply(m_, transpose(m_));
        double defect = 0.0;
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j) {
                const double v = g[i][j] - (i == j ? 1.0 : 0.0);
                defect = std::isfinite(v) ? std::max(defect, std::abs(v)) : HUGE_VAL;
            }
        if (!(defect <= kOrthogonalityTolerance)) throw FrameNotOrthogonal(defect);
        orientation_ = determinant(m_) > 0.0 ? 1 : -1;
    }

    static Frame4 identity() { return Frame4(); }

    /// Gram-Schmidt (applied twice) on the rows, then validated.
    static Frame4 orthonormalized(Mat4 rows) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < kDim; ++i) {
                for (int j = 0; j < i; ++j) {
                    const double p = dot(rows[i], rows[j]);
                    for (int c = 0; c < kDim; ++c) rows[i][c] -= p * rows[j][c];
                }
                const double n = std::sqrt(dot(rows[i], rows[i]));
                for (int c = 0; c < kDim; ++c) rows[i][c] /= n;
            }
        }
        return Frame4(rows);
    }

    const Mat4& matrix() const { return m_; }
    const Vec4& row(int i) const { return m_[i]; }
    double operator()(int i, int j) const { return m_[i][j]; }
    int orientation() const { return orientation_; }

    /// Frame whose i-th vector is this frame's perm[i]-th vector.
    Frame4 permuted(const std::array<int, 4>& perm) const {
        Mat4 rows{};
        for (int i = 0; i < kDim; ++i) rows[i] = m_[perm[i]];
        return Frame4(rows);
    }

    /// Swaps the last two vectors when the orientation is -1.
    Frame4 with_positive_orientation() const {
        if (orientation_ > 0) return *this;
        return permuted({0, 1, 3, 2});
    }

    friend bool operator==(const Frame4&, const Frame4&) = default;

private:
    Mat4 m_;
    int orientation_;
};

/// Frame G∘F: the vectors of G expressed in the frame F, mapped back to the
/// reference basis. Satisfies rotate(rotate(R, F), G) == rotate(R, compose(G, F)).
inline Frame4 compose(const Frame4& outer, const Frame4& inner) {
    return Frame4::orthonormalized(multiply(outer.matrix(), inner.matrix()));
}

/// Rotation by angle t in the (a, b) coordinate plane: e_a -> cos t e_a + sin t e_b,
/// e_b -> -sin t e_a + cos t e_b.
inline Mat4 givens(int a, int b, double t) {
    Mat4 g = identity_matrix();
    const double c = std::cos(t), s = std::sin(t);
    g[a][a] = c;
    g[a][b] = s;
    g[b][a] = -s;
    g[b][b] = c;
    return g;
}

class Curvature4;
Curvature4 project_to_curvature(const RawTensor4& raw);

/// Algebraic curvature tensor with all 256 components stored. Instances only
/// come out of make_curvature, project_to_curvature and rotate, so every value
/// of this type satisfies the pair symmetries and the first Bianchi identity.
class Curvature4 {
public:
    Curvature4() = default;

    double operator()(int i, int j, int k, int l) const { return c_[flat_index(i, j, k, l)]; }
    const RawTensor4& components() const { return c_; }

    double max_abs() const {
        double r = 0.0;
        for (double v : c_) r = std::max(r, std::abs(v));
        return r;
    }

    /// Tolerance scale s = max(1, max |R_ijkl|).
    double scale() const { return std::max(1.0, max_abs()); }

    friend bool operator==(const Curvature4&, const Curvature4&) = default;

private:
    explicit Curvature4(const RawTensor4& c) : c_(c) {}
    friend Curvature4 project_to_curvature(const RawTensor4& raw);

    RawTensor4 c_{};
};

/// Orthogonal projection onto algebraic curvature tensors: antisymmetrize both
/// index pairs, symmetrize under pair exchange, then remove the totally
/// antisymmetric part B_ijkl = (T_ijkl + T_iklj + T_iljk)/3.
inline Curvature4 project_to_curvature(const RawTensor4& raw) {
    RawTensor4 t{};
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k)
                for (int l = 0; l < kDim; ++l) {
                    const double a = 0.25 * (raw[flat_index(i, j, k, l)] - raw[flat_index(j, i, k, l)] -
                                             raw[flat_index(i, j, l, k)] + raw[flat_index(j, i, l, k)]);
                    const double b = 0.25 * (raw[flat_index(k, l, i, j)] - raw[flat_index(l, k, i, j)] -
                                             raw[flat_index(k, l, j, i)] + raw[flat_index(l, k, j, i)]);
                    t[flat_index(i, j, k, l)] = 0.5 * (a + b);
                }
    RawTensor4 out{};
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k)
                for (int l = 0; l < kDim; ++l) {
                    const double cyc = t[flat_index(i, j, k, l)] + t[flat_index(i, k, l, j)] + t[flat_index(i, l, j, k)];
                    out[flat_index(i, j, k, l)] = t[flat_index(i, j, k, l)] - cyc / 3.0;
                }
    return Curvature4(out);
}

/// Validating constructor. Checks both pair antisymmetries, pair exchange and
/// the first Bianchi identity to 1e-10 relative to max(1, max|raw|), then
/// returns the projected (exactly symmetric) tensor.
inline Curvature4 make_curvature(const RawTensor4& raw) {
    double m = 0.0;
    for (std::size_t n = 0; n < raw.size(); ++n) {
        if (!std::isfinite(raw[n])) {
            const int i = static_cast<int>(n / 64), j = static_cast<int>(n / 16 % 4);
            const int k = static_cast<int>(n / 4 % 4), l = static_cast<int>(n % 4);
            throw SymmetryViolation("finite entries", {i, j, k, l}, raw[n]);
        }
        m = std::max(m, std::abs(raw[n]));
    }
    const double tol = 1e-10 * std::max(1.0, m);

    struct Worst {
        double value = 0.0;
        std::array<int, 4> at{};
    };
    Worst first_pair, second_pair, exchange, bianchi;
    auto track = [](Worst& w, double v, int i, int j, int k, int l) {
        if (std::abs(v) > w.value) w = {std::abs(v), {i, j, k, l}};
    };
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k)
                for (int l = 0; l < kDim; ++l) {
                    const double r = raw[flat_index(i, j, k, l)];
                    track(first_pair, r + raw[flat_index(j, i, k, l)], i, j, k, l);
                    track(second_pair, r + raw[flat_index(i, j, l, k)], i, j, k, l);
                    track(exchange, r - raw[flat_index(k, l, i, j)], i, j, k, l);
                    track(bianchi, r + raw[flat_index(i, k, l, j)] + raw[flat_index(i, l, j, k)], i, j, k, l);
                }
    if (first_pair.value > tol) throw SymmetryViolation("R_ijkl = -R_jikl", first_pair.at, first_pair.value);
    if (second_pair.value > tol) throw SymmetryViolation("R_ijkl = -R_ijlk", second_pair.at, second_pair.value);
    if (exchange.value > tol) throw SymmetryViolation("R_ijkl = R_klij", exchange.at, exchange.value);
    if (bianchi.value > tol) throw SymmetryViolation("first Bianchi", bianchi.at, bianchi.value);
    return project_to_curvature(raw);
}

/// rho_ij = sum_a R_aija.
inline SymMatrix4 ricci(const Curvature4& r) {
    SymMatrix4 rho;
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j) {
            double s = 0.0;
            for (int a = 0; a < kDim; ++a) s += r(a, i, j, a);
            rho.set(i, j, s);
        }
    return rho;
}

struct ScalarSummary {
    double norm_r2 = 0.0;    ///< |R|^2 = sum R_ijkl^2
    double norm_rho2 = 0.0;  ///< |rho|^2
    double tau = 0.0;        ///< scalar curvature
};

inline ScalarSummary summary(const Curvature4& r) {
    ScalarSummary s;
    for (double v : r.components()) s.norm_r2 += v * v;
    const SymMatrix4 rho = ricci(r);
    s.norm_rho2 = rho.norm2();
    s.tau = rho.trace();
    return s;
}

struct DerivedTensors {
    SymMatrix4 r_check;    ///< R_abci R_abcj
    SymMatrix4 rho_check;  ///< rho_ai rho_aj
    SymMatrix4 l_rho;      ///< 2 R_iabj rho_ab
};

inline DerivedTensors derived_tensors(const Curvature4& r) {
    const SymMatrix4 rho = ricci(r);
    DerivedTensors d;
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j) {
            double rc = 0.0, pc = 0.0, lr = 0.0;
            for (int a = 0; a < kDim; ++a) {
                pc += rho(a, i) * rho(a, j);
                for (int b = 0; b < kDim; ++b) {
                    lr += r(i, a, b, j) * rho(a, b);
                    for (int c = 0; c < kDim; ++c) rc += r(a, b, c, i) * r(a, b, c, j);
                }
            }
            d.r_check.set(i, j, rc);
            d.rho_check.set(i, j, pc);
            d.l_rho.set(i, j, 2.0 * lr);
        }
    return d;
}

/// Components in the frame F: R'_ijkl = R(f_i, f_j, f_k, f_l).
inline RawTensor4 rotate_raw(const RawTensor4& c, const Mat4& f) {
    RawTensor4 a{}, b{};
    // Contract one slot at a time.
    for (int i = 0; i < kDim; ++i)
        for (int q = 0; q < 64; ++q) {
            double s = 0.0;
            for (int p = 0; p < kDim; ++p) s += f[i][p] * c[static_cast<std::size_t>(p * 64 + q)];
            a[static_cast<std::size_t>(i * 64 + q)] = s;
        }
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            for (int q = 0; q < 16; ++q) {
                double s = 0.0;
                for (int p = 0; p < kDim; ++p) s += f[j][p] * a[static_cast<std::size_t>(i * 64 + p * 16 + q)];
                b[static_cast<std::size_t>(i * 64 + j * 16 + q)] = s;
            }
    for (int ij = 0; ij < 16; ++ij)
        for (int k = 0; k < kDim; ++k)
            for (int l = 0; l < kDim; ++l) {
                double s = 0.0;
                for (int p = 0; p < kDim; ++p) s += f[k][p] * b[static_cast<std::size_t>(ij * 16 + p * 4 + l)];
                a[static_cast<std::size_t>(ij * 16 + k * 4 + l)] = s;
            }
    for (int ijk = 0; ijk < 64; ++ijk)
        for (int l = 0; l < kDim; ++l) {
            double s = 0.0;
            for (int p = 0; p < kDim; ++p) s += f[l][p] * a[static_cast<std::size_t>(ijk * 4 + p)];
            b[static_cast<std::size_t>(ijk * 4 + l)] = s;
        }
    return b;
}

/// R(x, y, z, w) for vectors in reference coordinates.
inline double evaluate(const Curvature4& r, const Vec4& x, const Vec4& y, const Vec4& z, const Vec4& w) {
    double s = 0.0;
    for (int i = 0; i < kDim; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < kDim; ++j) {
            if (y[j] == 0.0 || i == j) continue;
            double inner = 0.0;
            for (int k = 0; k < kDim; ++k)
                for (int l = 0; l < kDim; ++l) inner += r(i, j, k, l) * z[k] * w[l];
            s += x[i] * y[j] * inner;
        }
    }
    return s;
}

/// In-place change of frame by a rotation of angle (cos c, sin s) in the (a, b)
/// plane, applied to all four slots.
inline void apply_givens(RawTensor4& t, int a, int b, double c, double s) {
    constexpr std::array<int, 4> stride = {64, 16, 4, 1};
    for (int slot = 0; slot < kDim; ++slot) {
        const int st = stride[slot];
        const int offset = (b - a) * st;
        for (int n = 0; n < 256; ++n) {
            if ((n / st) % 4 != a) continue;
            const double x = t[static_cast<std::size_t>(n)], y = t[static_cast<std::size_t>(n + offset)];
            t[static_cast<std::size_t>(n)] = c * x + s * y;
            t[static_cast<std::size_t>(n + offset)] = -s * x + c * y;
        }
    }
}

inline Curvature4 rotate(const Curvature4& r, const Frame4& f) {
    return project_to_curvature(rotate_raw(r.components(), f.matrix()));
}

}  // namespace stframe
