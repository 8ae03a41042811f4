#pragma once

// The eight sign patterns relating opposite plane components in a generalized
// Singer-Thorpe frame, R_1212 = e1 R_3434, R_1313 = e2 R_2424, R_1414 = e3 R_2323,
// and the linear relation each one forces on the Ricci eigenvalues.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace stframe {

enum class SignCase { i = 1, ii, iii, iv, v, vi, vii, viii };

inline constexpr std::array<SignCase, 8> kAllSignCases = {SignCase::i,  SignCase::ii,  SignCase::iii, SignCase::iv,
                                                          SignCase::v,  SignCase::vi,  SignCase::vii, SignCase::viii};

inline std::string to_string(SignCase c) {
    static constexpr std::array<std::string_view, 8> names = {"(i)", "(ii)", "(iii)", "(iv)",
                                                               "(v)", "(vi)", "(vii)", "(viii)"};
    return std::string(names[static_cast<int>(c) - 1]);
}

/// Accepts "(v)", "v" or "5".
inline std::optional<SignCase> parse_sign_case(std::string_view s) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    for (SignCase c : kAllSignCases) {
        const std::string n = to_string(c);
        if (s == std::string_view(n).substr(1, n.size() - 2) || s == std::to_string(static_cast<int>(c))) return c;
    }
    return std::nullopt;
}

/// Sign triple (e1, e2, e3) of a case.
inline std::array<int, 3> epsilons(SignCase c) {
    switch (c) {
        case SignCase::i: return {1, 1, 1};
        case SignCase::ii: return {-1, 1, 1};
        case SignCase::iii: return {1, -1, 1};
        case SignCase::iv: return {1, 1, -1};
        case SignCase::v: return {1, -1, -1};
        case SignCase::vi: return {-1, 1, -1};
        case SignCase::vii: return {-1, -1, 1};
        case SignCase::viii: return {-1, -1, -1};
    }
    return {1, 1, 1};
}

inline SignCase sign_case_from_epsilons(const std::array<int, 3>& e) {
    for (SignCase c : kAllSignCases)
        if (epsilons(c) == e) return c;
    return SignCase::i;
}

inline std::string_view relation_text(SignCase c) {
    switch (c) {
        case SignCase::i: return "l1 = l2 = l3 = l4";
        case SignCase::ii: return "l1 = l2, l3 = l4";
        case SignCase::iii: return "l1 = l3, l2 = l4";
        case SignCase::iv: return "l1 = l4, l2 = l3";
        case SignCase::v: return "l1 + l2 = l3 + l4";
        case SignCase::vi: return "l1 + l3 = l2 + l4";
        case SignCase::vii: return "l1 + l4 = l2 + l3";
        case SignCase::viii: return "l1 + l2 + l3 + l4 = 0";
    }
    return "";
}

/// Defect of the eigenvalue relation implied by a case; eigenvalues are the
/// Ricci eigenvalues in frame order.
inline double relation_residual(SignCase c, const std::array<double, 4>& l) {
    switch (c) {
        case SignCase::i:
            return std::max({std::abs(l[0] - l[1]), std::abs(l[0] - l[2]), std::abs(l[0] - l[3])});
        case SignCase::ii: return std::max(std::abs(l[0] - l[1]), std::abs(l[2] - l[3]));
        case SignCase::iii: return std::max(std::abs(l[0] - l[2]), std::abs(l[1] - l[3]));
        case SignCase::iv: return std::max(std::abs(l[0] - l[3]), std::abs(l[1] - l[2]));
        case SignCase::v: return std::abs(l[0] + l[1] - l[2] - l[3]);
        case SignCase::vi: return std::abs(l[0] + l[2] - l[1] - l[3]);
        case SignCase::vii: return std::abs(l[0] + l[3] - l[1] - l[2]);
        case SignCase::viii: return std::abs(l[0] + l[1] + l[2] + l[3]);
    }
    return 0.0;
}

}  // namespace stframe
