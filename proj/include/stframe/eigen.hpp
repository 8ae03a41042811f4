#pragma once

// Cyclic Jacobi eigensolver for symmetric 4x4 matrices and the grouping of
// Ricci eigenvalues into multiplicity patterns.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "stframe/errors.hpp"
#include "stframe/tensor.hpp"

namespace stframe {

struct EigenResult {
    Vec4 eigenvalues{};  ///< sorted descending
    Frame4 frame;        ///< row i is the unit eigenvector of eigenvalues[i]
    int sweeps = 0;
};

/// Diagonalizes M by cyclic Jacobi rotations. Converged when the off-diagonal
/// Frobenius norm drops below 1e-13 |M|_F; throws NoConvergence after 50 sweeps
/// or on non-finite input.
inline EigenResult sym_eigen(const SymMatrix4& m) {
    Mat4 a = m.matrix();
    Mat4 v = identity_matrix();  // columns are eigenvectors
    const double norm = std::sqrt(m.norm2());
    if (!std::isfinite(norm)) throw NoConvergence("sym_eigen: non-finite matrix entries");

    auto off_norm = [&] {
        double s = 0.0;
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j)
                if (i != j) s += a[i][j] * a[i][j];
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > 1e-13 * norm) {
        if (++sweep > 50) throw NoConvergence("sym_eigen: no convergence after 50 sweeps");
        for (int p = 0; p < kDim - 1; ++p)
            for (int q = p + 1; q < kDim; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < kDim; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < kDim; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < kDim; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
    EigenResult r;
    Mat4 rows{};
    for (int i = 0; i < kDim; ++i) {
        r.eigenvalues[i] = a[order[i]][order[i]];
        for (int k = 0; k < kDim; ++k) rows[i][k] = v[k][order[i]];
    }
    r.frame = Frame4::orthonormalized(rows);
    r.sweeps = sweep;
    return r;
}

enum class PatternTag { I, II, III, IV, V };

inline std::string to_string(PatternTag t) {
    switch (t) {
        case PatternTag::I: return "I";
        case PatternTag::II: return "II";
        case PatternTag::III: return "III";
        case PatternTag::IV: return "IV";
        case PatternTag::V: return "V";
    }
    return "?";
}

struct MultiplicityPattern {
    PatternTag tag = PatternTag::V;
    /// Blocks of equal eigenvalues, as zero-based slots of the input.
    std::vector<std::vector<int>> grouping;
    /// Slot permutation to the canonical sub-case: a II pair goes to slots 1,2,
    /// III pairs to (1,2),(3,4), a IV triple to 1,2,3. New slot i holds old slot
    /// canonical_order[i].
    std::array<int, 4> canonical_order{0, 1, 2, 3};
};

inline constexpr double kDefaultMultiplicityTolerance = 1e-6;

/// Groups eigenvalues by the transitive closure of |l_i - l_j| <= tol_mult * max(1, max|l|).
inline MultiplicityPattern multiplicity_pattern(const Vec4& eigenvalues, double tol_mult) {
    double scale = 1.0;
    for (double l : eigenvalues) scale = std::max(scale, std::abs(l));
    const double eps = tol_mult * scale;

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return eigenvalues[x] > eigenvalues[y]; });

    MultiplicityPattern p;
    p.grouping.push_back({order[0]});
    for (int n = 1; n < kDim; ++n) {
        if (eigenvalues[order[n - 1]] - eigenvalues[order[n]] <= eps)
            p.grouping.back().push_back(order[n]);
        else
            p.grouping.push_back({order[n]});
    }

    std::vector<std::size_t> sizes;
    for (const auto& b : p.grouping) sizes.push_back(b.size());
    std::vector<std::size_t> sorted_sizes = sizes;
    std::sort(sorted_sizes.rbegin(), sorted_sizes.rend());

    using Sizes = std::vector<std::size_t>;
    if (sorted_sizes == Sizes{4})
        p.tag = PatternTag::I;
    else if (sorted_sizes == Sizes{2, 1, 1})
        p.tag = PatternTag::II;
    else if (sorted_sizes == Sizes{2, 2})
        p.tag = PatternTag::III;
    else if (sorted_sizes == Sizes{3, 1})
        p.tag = PatternTag::IV;
    else
        p.tag = PatternTag::V;

    // Largest block first (stable), singletons keep descending order.
    std::vector<std::size_t> block_order(p.grouping.size());
    std::iota(block_order.begin(), block_order.end(), 0);
    std::stable_sort(block_order.begin(), block_order.end(),
                     [&](std::size_t x, std::size_t y) { return sizes[x] > sizes[y]; });
    int slot = 0;
    for (std::size_t b : block_order)
        for (int idx : p.grouping[b]) p.canonical_order[slot++] = idx;
    return p;
}

struct RicciSpectrum {
    Vec4 eigenvalues{};  ///< descending
    Frame4 frame;        ///< unit eigenvectors as rows, det +1
    MultiplicityPattern pattern;
};

inline RicciSpectrum ricci_spectrum(const Curvature4& r, double tol_mult = kDefaultMultiplicityTolerance) {
    const EigenResult e = sym_eigen(ricci(r));
    RicciSpectrum s;
    s.eigenvalues = e.eigenvalues;
    Mat4 rows = e.frame.matrix();
    if (e.frame.orientation() < 0)
        for (double& x : rows[3]) x = -x;
    s.frame = Frame4(rows);
    s.pattern = multiplicity_pattern(e.eigenvalues, tol_mult);
    return s;
}

}  // namespace stframe
