#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace stablab {

/// Exact rational numbers. Distances, masses and weights are kept exact
/// wherever the underlying quantity is a finite count ratio.
using Rational = boost::multiprecision::cpp_rational;

/// Malformed input: bad indices, mismatched ranks or degrees, non-bijections.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured cap (ball size, closure size, resolution, search depth) was hit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on data that does not meet its documented
/// precondition (e.g. a partition that is not adapted to an element).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Formats as "p/q", always with an explicit denominator.
std::string to_string(const Rational& q);

/// Accepts "p/q", "p" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace stablab
