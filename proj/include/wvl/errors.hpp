#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wvl {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Inputs outside the mathematical domain of an operation (sigma <= 0, straddled pole, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class OutOfRangeError : public Error {
public:
    OutOfRangeError(const std::string& what, double t) : Error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

/// The width function fell below its floor during integration.
class SingularityError : public Error {
public:
    SingularityError(const std::string& what, double t) : Error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

/// Evaluation too close to a zero of H_n (a pole of the velocity field or energy field).
class PoleError : public Error {
public:
    PoleError(const std::string& what, double root) : Error(what), root_(root) {}
    double root() const noexcept { return root_; }

private:
    double root_;
};

/// A quantity divided by a near-vanishing density.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Non-finite derivative inside a time stepper.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double t) : Error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

/// Non-finite sample inside an integrator; carries the offending coordinates.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::vector<double> coords)
        : Error(what), coords_(std::move(coords)) {}
    const std::vector<double>& coordinates() const noexcept { return coords_; }

private:
    std::vector<double> coords_;
};

/// Richardson disagreement above tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double estimate) : Error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

}  // namespace wvl
