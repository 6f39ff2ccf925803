#pragma once

// Truncated fermionic Fock sectors over a Dirac sea, CAR ladder operators,
// lattice shift operators and their twisted composition law.
//
// Conventions fixed here: the sea occupies modes < 0; basis monomials order
// creators by descending mode (matching the semi-infinite sea product), so
// the ladder sign counts occupied modes above the target within the same
// component; different components commute via a plain tensor product; shift
// operators are +1 on ordered monomials.

#include "magtrans/cochain.hpp"
#include "magtrans/phase.hpp"
#include "magtrans/tensors.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace magtrans {

struct ModeWindow {
  int low = -2;   // lowest mode, < 0
  int high = 2;   // highest mode, >= 0
  int n = 1;      // component count
  int margin = 0; // shift-domain safety margin

  int width() const { return high - low + 1; }
  void validate() const;
};

// Basis = all occupation patterns of the window, one bit per (component,
// mode); state index packs component j into bits [j*width, (j+1)*width).
class FockSector {
 public:
  explicit FockSector(const ModeWindow& w);

  const ModeWindow& window() const { return w_; }
  long dimension() const { return dim_; }
  long vacuum() const { return vacuum_; }

  int comp_mask(long state, int j) const;
  long with_comp_mask(long state, int j, int mask) const;
  bool occupied(long state, int j, int mode) const;
  int bit_of(int mode) const { return mode - w_.low; }

  // particles above the sea minus holes in the sea, summed over components
  int particle_number(long state) const;

 private:
  ModeWindow w_;
  long dim_;
  long vacuum_;
};

// Sparse complex operator on a sector with an explicit validity domain:
// equality statements quantify only over valid source states, so truncation
// loss never masquerades as a result.
class SparseFockOperator {
 public:
  explicit SparseFockOperator(long dim);
  static SparseFockOperator identity(long dim);
  static SparseFockOperator zero(long dim) { return SparseFockOperator(dim); }

  long dim() const { return static_cast<long>(cols_.size()); }
  void set(long col, long row, std::complex<double> v);
  void add(long col, long row, std::complex<double> v);
  const std::map<long, std::complex<double>>& column(long col) const {
    return cols_[col];
  }
  bool valid(long col) const { return valid_[col] != 0; }
  void set_valid(long col, bool v) { valid_[col] = v ? 1 : 0; }

  SparseFockOperator operator*(const SparseFockOperator& o) const;
  SparseFockOperator operator+(const SparseFockOperator& o) const;
  SparseFockOperator operator-(const SparseFockOperator& o) const;
  SparseFockOperator scaled(std::complex<double> c) const;
  SparseFockOperator phased_by_particle_number(const FockSector& sector,
                                               double exponent) const;

  // largest entry difference against o over the common validity domain
  double max_deviation(const SparseFockOperator& o) const;
  long common_domain_size(const SparseFockOperator& o) const;

 private:
  std::vector<std::map<long, std::complex<double>>> cols_;
  std::vector<char> valid_;
};

SparseFockOperator creation(const FockSector& sector, int mode, int comp);
SparseFockOperator annihilation(const FockSector& sector, int mode, int comp);

struct CarReport {
  bool passed = true;
  double max_deviation = 0.0;
  int pairs_checked = 0;
};

// {a*(u), a(v)} = 2 <u,v> (factor-2 normalization, applied as a scale map on
// the internal {a*,a} = <u,v> ladders), {a*,a*} = {a,a} = 0, and commuting
// cross-component generators
CarReport car_check(const FockSector& sector,
                    const std::vector<std::pair<std::pair<int, int>,
                                                std::pair<int, int>>>& pairs);

// permutation operator shifting component j modes by p[j]; valid on states
// whose shifted support stays inside the window (sea fills in from below)
SparseFockOperator shift_operator(const std::vector<long>& p,
                                  const FockSector& sector);

struct TwistedPoint {
  RVec x;
  TwoForm<Rational> omega;
};

// section value for the twisted generators: x = x0 + z with x0 in [0,1)^n
// and z lattice; exponent = omega(x0, z), so the section is 1 on the
// fundamental domain
Rational section_exponent(const TwoForm<Rational>& w, const RVec& x);

SparseFockOperator twisted_creation(const FockSector& sector, int mode, int comp,
                                    const TwistedPoint& tp);

// phase discrepancy between a*(u, x+z) and e^{2 pi i omega(x,z)} a*(u, x);
// trivial whenever omega takes integer values on the lattice
RPhase twisted_equivariance_check(const TwistedPoint& tp, const RVec& z);

// Exact single-component twisted shift: a mode permutation together with a
// rational phase exponent per source state. Lets the composition law be
// checked with exact phases on windows whose full tensor basis would be too
// large to enumerate.
class PhasedShift {
 public:
  PhasedShift(const FockSector& comp_sector, long shift, const Rational& twist);

  long dim() const { return static_cast<long>(image_.size()); }
  // image state and accumulated exponent; nullopt when truncation loses data
  std::optional<std::pair<long, Rational>> apply(long state) const;

  static PhasedShift compose(const PhasedShift& g, const PhasedShift& h);

 private:
  PhasedShift() = default;
  std::vector<long> image_;  // -1 = invalid
  std::vector<Rational> exponent_;
};

struct ComposeReport {
  bool passed = false;
  RPhase measured;
  RPhase expected;
  double max_deviation = 0.0;
  long states_checked = 0;
};

// g(p) g(q) vs C(x;p,q) g(p+q), factorized over components with exact
// rational phases; the measured phase must be constant across the common
// validity domain and equal shift_2cocycle(omega)(x; p, q)
ComposeReport compose_check(const std::vector<long>& p, const std::vector<long>& q,
                            const TwistedPoint& tp, const ModeWindow& w);

}  // namespace magtrans
