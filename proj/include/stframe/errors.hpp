#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace stframe {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SymmetryViolation : public Error {
public:
    SymmetryViolation(std::string identity, std::array<int, 4> where, double magnitude)
        : Error("curvature symmetry violated (" + identity + ") at R_" + indexString(where) +
                ", magnitude " + std::to_string(magnitude)),
          identity_(std::move(identity)),
          where_(where),
          magnitude_(magnitude) {}

    const std::string& identity() const { return identity_; }
    /// Zero-based index tuple of the worst offender.
    const std::array<int, 4>& where() const { return where_; }
    double magnitude() const { return magnitude_; }

private:
    static std::string indexString(const std::array<int, 4>& w) {
        std::string s;
        for (int i : w) s += std::to_string(i + 1);
        return s;
    }

    std::string identity_;
    std::array<int, 4> where_;
    double magnitude_;
};

class FrameNotOrthogonal : public Error {
public:
    explicit FrameNotOrthogonal(double defect)
        : Error("frame is not orthogonal, max |F F^T - I| = " + std::to_string(defect)),
          defect_(defect) {}
    double defect() const { return defect_; }

private:
    double defect_;
};

class JacobiViolation : public Error {
public:
    explicit JacobiViolation(double defect)
        : Error("structure constants violate the Jacobi identity, defect " + std::to_string(defect)),
          defect_(defect) {}
    double defect() const { return defect_; }

private:
    double defect_;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at byte " + std::to_string(position) + ": " + message),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& constraint)
        : Error("invalid field '" + field + "': " + constraint), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class UnknownGalleryName : public Error {
public:
    explicit UnknownGalleryName(const std::string& name) : Error("unknown gallery entry '" + name + "'") {}
};

class NotSTFrame : public Error {
public:
    explicit NotSTFrame(double penalty)
        : Error("frame is not a generalized Singer-Thorpe frame, penalty " + std::to_string(penalty)),
          penalty_(penalty) {}
    double penalty() const { return penalty_; }

private:
    double penalty_;
};

class OrientationReversed : public Error {
public:
    OrientationReversed() : Error("frame has orientation -1; plane vectors must be read in a det +1 frame") {}
};

class CaseRelationViolated : public Error {
public:
    using Error::Error;
};

}  // namespace stframe
