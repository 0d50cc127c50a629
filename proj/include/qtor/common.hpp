#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace qtor {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Division by zero, inverse of zero, and similar field-arithmetic misuse.
struct arithmetic_error : std::domain_error {
    explicit arithmetic_error(const std::string& what) : std::domain_error(what) {}
};

/// Evaluation at a point where the reduced denominator vanishes.
struct specialization_error : std::domain_error {
    explicit specialization_error(const std::string& what) : std::domain_error(what) {}
};

/// Malformed arguments: arity mismatches, bad mode parity, invalid bounds.
struct usage_error : std::invalid_argument {
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Rejected input data (e.g. a matrix that is not a generalized Cartan matrix).
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace qtor
