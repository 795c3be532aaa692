#pragma once

#include <cmath>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace qspectral {

/// Exact rational scalar. Theorem checks (kernel dimensions, rank
/// stabilization) run on this type so they never depend on rounding.
using Rational = boost::multiprecision::mpq_rational;

template <typename T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline double abs_value(double x) { return std::abs(x); }
inline Rational abs_value(const Rational& x) { return boost::multiprecision::abs(x); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& x) { return x.is_zero(); }

/// Scalar cast used when lifting rational data to the floating path.
template <typename To, typename From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, double>) {
    return to_double(x);
  } else {
    return To(x);
  }
}

}  // namespace qspectral
