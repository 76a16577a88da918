// errors.hpp: exception types shared by the aqc core library

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aqc {

// Argument outside the mathematical domain of an operation (t outside the
// schedule, non-positive gap, probability outside (0, 1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An approximation was asked for outside the regime where it is defined,
// e.g. the post-minimum relaxation formula with R >= 1.
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed user input: CSV tables, config files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double last_good_time);
    double last_good_time() const noexcept { return last_good_time_; }

private:
    double last_good_time_;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double value, double error_estimate);
    double value() const noexcept { return value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double value_;
    double error_estimate_;
};

// Fock-space truncation too small: population reached the top level.
class CutoffError : public std::runtime_error {
public:
    CutoffError(const std::string& what, std::size_t cutoff, double top_population);
    std::size_t cutoff() const noexcept { return cutoff_; }
    std::size_t suggested_cutoff() const noexcept { return 2 * cutoff_; }
    double top_population() const noexcept { return top_population_; }

private:
    std::size_t cutoff_;
    double top_population_;
};

}  // namespace aqc
