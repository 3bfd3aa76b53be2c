#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nasearch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Search problem parameters that cannot define the two-level reduction.
class InvalidProblem : public Error {
public:
    using Error::Error;
};

// Malformed inputs: non-Hermitian matrices, non-normalized states, bad grids.
class ValidationError : public Error {
public:
    using Error::Error;
};

// API misuse, e.g. calling the alpha = 0 closed form with alpha != 0.
class UsageError : public Error {
public:
    using Error::Error;
};

class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double failing_time)
        : Error(what), failing_time_(failing_time) {}
    double failing_time() const noexcept { return failing_time_; }

private:
    double failing_time_;
};

class PoleError : public Error {
public:
    explicit PoleError(std::int64_t pole)
        : Error("gamma function pole at z = " + std::to_string(pole)), pole_(pole) {}
    std::int64_t pole() const noexcept { return pole_; }

private:
    std::int64_t pole_;
};

// Requested accuracy could not be reached; carries the best available value.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, std::complex<double> best, double estimated_error)
        : Error(what), best_(best), estimated_error_(estimated_error) {}
    std::complex<double> best_value() const noexcept { return best_; }
    double estimated_error() const noexcept { return estimated_error_; }

private:
    std::complex<double> best_;
    double estimated_error_;
};

// Coefficient denominator vanished while matching initial conditions.
class DegenerateSolution : public Error {
public:
    using Error::Error;
};

}  // namespace nasearch
