#pragma once

// Dual scalar backend: exact rationals for algebraic identities, doubles for
// the numerical diagnostics. Everything algebraic is templated on the scalar.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace magtrans {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  // largest integer <= r
  static BigInt floor(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
  }
  static Rational mod1(const Rational& r) { return r - Rational(floor(r)); }
  static bool is_integer(const Rational& r) {
    return boost::multiprecision::denominator(r) == 1;
  }
  static double to_double(const Rational& r) {
    return static_cast<double>(r);
  }
  static std::string to_string(const Rational& r) { return r.str(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double mod1(double r) {
    double m = r - std::floor(r);
    if (m >= 1.0) m -= 1.0;  // guard against rounding at the boundary
    return m;
  }
  static bool is_integer(double r) {
    return std::abs(r - std::round(r)) <= 1e-9;
  }
  static double to_double(double r) { return r; }
  static std::string to_string(double r) { return std::to_string(r); }
};

// Tolerance used for double-backend circle comparisons throughout.
inline constexpr double kCircleTol = 1e-9;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Deterministic rational sampling for the property suites.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  Rational rational(int max_num = 12, int max_den = 6) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng_), den(rng_));
  }

  BigInt integer(int bound = 4) {
    std::uniform_int_distribution<int> d(-bound, bound);
    return BigInt(d(rng_));
  }

  std::vector<Rational> rational_vector(int n) {
    std::vector<Rational> v(n);
    for (auto& e : v) e = rational();
    return v;
  }

  std::vector<Rational> lattice_vector(int n, int bound = 4) {
    std::vector<Rational> v(n);
    for (auto& e : v) e = Rational(integer(bound));
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// splitmix64; used as the counter-based generator for Monte-Carlo sampling so
// results do not depend on how the sample range is partitioned.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double uniform01_at(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t z = splitmix64(seed * 0x9e3779b97f4a7c15ULL + counter);
  return (z >> 11) * 0x1.0p-53;
}

}  // namespace magtrans
