#pragma once

// Circle-group values stored as exponents modulo 1. A phase e^{2*pi*i*e} is
// represented by e in [0,1); multiplication adds exponents, inversion negates.

#include "magtrans/scalar.hpp"

#include <algorithm>

namespace magtrans {

template <class S>
class Phase {
 public:
  Phase() : exponent_(0) {}
  explicit Phase(const S& exponent) : exponent_(scalar_traits<S>::mod1(exponent)) {}

  const S& exponent() const { return exponent_; }

  Phase operator*(const Phase& o) const { return Phase(exponent_ + o.exponent_); }
  Phase inverse() const { return Phase(-exponent_); }
  Phase pow(long k) const { return Phase(exponent_ * S(k)); }

  bool is_trivial() const { return circle_distance(*this, Phase()) == S(0) || trivially_close(); }

  // distance on the circle: min(|d|, 1-|d|) of the exponent difference
  static S circle_distance(const Phase& a, const Phase& b) {
    S d = scalar_traits<S>::mod1(a.exponent_ - b.exponent_);
    S alt = S(1) - d;
    return std::min(d, alt);
  }

  friend bool operator==(const Phase& a, const Phase& b) {
    if constexpr (scalar_traits<S>::exact) {
      return a.exponent_ == b.exponent_;
    } else {
      return scalar_traits<S>::to_double(circle_distance(a, b)) <= kCircleTol;
    }
  }
  friend bool operator!=(const Phase& a, const Phase& b) { return !(a == b); }

 private:
  bool trivially_close() const {
    if constexpr (scalar_traits<S>::exact) {
      return exponent_ == 0;
    } else {
      return scalar_traits<S>::to_double(std::min(exponent_, S(1) - exponent_)) <= kCircleTol;
    }
  }
  S exponent_;
};

template <class S>
Phase<S> phase_of(const S& exponent) {
  return Phase<S>(exponent);
}

using RPhase = Phase<Rational>;
using DPhase = Phase<double>;

}  // namespace magtrans
