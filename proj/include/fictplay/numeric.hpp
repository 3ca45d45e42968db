#pragma once

#include <cmath>
#include <cstdint>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace fictplay {

// Scalar policy: the whole library is templated on T in {double, mpq_class}.
// Rational games run exactly (tolerance 0), float games use the tolerances
// configured here.
template <class T>
struct num_traits;

template <>
struct num_traits<double> {
  static constexpr bool exact = false;
  static double tol() { return 1e-9; }
  static double tiny() { return 1e-12; }
  static double from_fraction(long n, long d) { return double(n) / double(d); }
  static double to_double(double v) { return v; }
};

template <>
struct num_traits<mpq_class> {
  static constexpr bool exact = true;
  static mpq_class tol() { return mpq_class(0); }
  static mpq_class tiny() { return mpq_class(0); }
  static mpq_class from_fraction(long n, long d) {
    mpq_class q(n, d);
    q.canonicalize();
    return q;
  }
  static double to_double(const mpq_class& v) { return v.get_d(); }
};

template <class T>
T frac(long n, long d = 1) {
  return num_traits<T>::from_fraction(n, d);
}

template <class T>
double to_double(const T& v) {
  return num_traits<T>::to_double(v);
}

template <class T>
T abs_val(const T& v) {
  return v < T(0) ? T(-v) : v;
}

// Sign with tolerance band; exact sign when tol == 0.
template <class T>
int sgn(const T& v, const T& tol) {
  if (v > tol) return 1;
  T neg = -tol;
  if (v < neg) return -1;
  return 0;
}

inline mpq_class parse_rational(const std::string& s) {
  // accepts "p/q", "p", and decimal literals like "-1.35"
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    long scale = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) scale *= 10;
    mpq_class q{mpz_class(digits), mpz_class(scale)};
    q.canonicalize();
    return q;
  }
  mpq_class q(s);
  q.canonicalize();
  return q;
}

inline std::string format_rational(const mpq_class& q) {
  return q.get_str();
}

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unsupported_configuration : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fictplay
