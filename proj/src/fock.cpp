#include "magtrans/fock.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace magtrans {
namespace {

constexpr int kMaxBits = 24;

std::complex<double> unit_phase(double e) {
  const double theta = 2.0 * std::numbers::pi * e;
  return {std::cos(theta), std::sin(theta)};
}

int popcount_long(long v) { return std::popcount(static_cast<unsigned long>(v)); }

// shifted component mask, or -1 when occupied modes leave the window or the
// sea assumption below the window is violated
long shift_mask(int mask, int width, long p) {
  const int full = (1 << width) - 1;
  if (p == 0) return mask;
  if (p > 0) {
    if (p >= width) return -1;
    if ((mask >> (width - p)) != 0) return -1;  // occupied mode pushed above H
    return ((mask << p) & full) | ((1 << p) - 1);  // sea enters from below
  }
  const long s = -p;
  if (s >= width) return -1;
  const int lowbits = (1 << s) - 1;
  if ((mask & lowbits) != lowbits) return -1;  // hole pushed below L
  return mask >> s;
}

}  // namespace

void ModeWindow::validate() const {
  if (!(low < 0 && 0 <= high))
    throw std::invalid_argument("ModeWindow: need low < 0 <= high");
  if (n < 1) throw std::invalid_argument("ModeWindow: component count >= 1 required");
  if (margin < 0 || !(low + margin < 0 && 0 <= high - margin))
    throw std::invalid_argument("ModeWindow: margin leaves no room around mode 0");
}

FockSector::FockSector(const ModeWindow& w) : w_(w) {
  w_.validate();
  const int bits = w_.n * w_.width();
  if (bits > kMaxBits)
    throw std::invalid_argument("FockSector: basis too large to enumerate");
  dim_ = 1L << bits;
  const int sea = (1 << (-w_.low)) - 1;  // bits of modes < 0
  vacuum_ = 0;
  for (int j = 0; j < w_.n; ++j) vacuum_ |= static_cast<long>(sea) << (j * w_.width());
}

int FockSector::comp_mask(long state, int j) const {
  return static_cast<int>((state >> (j * w_.width())) & ((1L << w_.width()) - 1));
}

long FockSector::with_comp_mask(long state, int j, int mask) const {
  const long field = ((1L << w_.width()) - 1) << (j * w_.width());
  return (state & ~field) | (static_cast<long>(mask) << (j * w_.width()));
}

bool FockSector::occupied(long state, int j, int mode) const {
  return (comp_mask(state, j) >> bit_of(mode)) & 1;
}

int FockSector::particle_number(long state) const {
  const int sea_bits = -w_.low;
  const int sea_mask = (1 << sea_bits) - 1;
  int N = 0;
  for (int j = 0; j < w_.n; ++j) {
    const int m = comp_mask(state, j);
    N += popcount_long(m >> sea_bits);             // particles at modes >= 0
    N -= sea_bits - popcount_long(m & sea_mask);   // holes in the sea
  }
  return N;
}

SparseFockOperator::SparseFockOperator(long dim) : cols_(dim), valid_(dim, 1) {}

SparseFockOperator SparseFockOperator::identity(long dim) {
  SparseFockOperator op(dim);
  for (long i = 0; i < dim; ++i) op.cols_[i][i] = 1.0;
  return op;
}

void SparseFockOperator::set(long col, long row, std::complex<double> v) {
  if (v == std::complex<double>(0.0, 0.0))
    cols_[col].erase(row);
  else
    cols_[col][row] = v;
}

void SparseFockOperator::add(long col, long row, std::complex<double> v) {
  auto& c = cols_[col];
  auto [it, ins] = c.emplace(row, v);
  if (!ins) {
    it->second += v;
    if (it->second == std::complex<double>(0.0, 0.0)) c.erase(it);
  }
}

SparseFockOperator SparseFockOperator::operator*(const SparseFockOperator& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("operator dims differ");
  SparseFockOperator r(dim());
  for (long j = 0; j < dim(); ++j) {
    bool ok = o.valid(j);
    for (const auto& [mid, c1] : o.cols_[j]) {
      if (!valid(mid)) ok = false;
      for (const auto& [row, c2] : cols_[mid]) r.add(j, row, c1 * c2);
    }
    r.valid_[j] = ok ? 1 : 0;
  }
  return r;
}

SparseFockOperator SparseFockOperator::operator+(const SparseFockOperator& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("operator dims differ");
  SparseFockOperator r = *this;
  for (long j = 0; j < dim(); ++j) {
    for (const auto& [row, c] : o.cols_[j]) r.add(j, row, c);
    r.valid_[j] = (valid(j) && o.valid(j)) ? 1 : 0;
  }
  return r;
}

SparseFockOperator SparseFockOperator::operator-(const SparseFockOperator& o) const {
  return *this + o.scaled({-1.0, 0.0});
}

SparseFockOperator SparseFockOperator::scaled(std::complex<double> c) const {
  SparseFockOperator r(dim());
  r.valid_ = valid_;
  for (long j = 0; j < dim(); ++j)
    for (const auto& [row, v] : cols_[j]) r.set(j, row, v * c);
  return r;
}

SparseFockOperator SparseFockOperator::phased_by_particle_number(
    const FockSector& sector, double exponent) const {
  SparseFockOperator r(dim());
  r.valid_ = valid_;
  for (long j = 0; j < dim(); ++j)
    for (const auto& [row, v] : cols_[j])
      r.set(j, row, v * unit_phase(exponent * sector.particle_number(row)));
  return r;
}

double SparseFockOperator::max_deviation(const SparseFockOperator& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("operator dims differ");
  double worst = 0.0;
  for (long j = 0; j < dim(); ++j) {
    if (!valid(j) || !o.valid(j)) continue;
    for (const auto& [row, v] : cols_[j]) {
      const auto it = o.cols_[j].find(row);
      const std::complex<double> w =
          it == o.cols_[j].end() ? std::complex<double>(0.0, 0.0) : it->second;
      worst = std::max(worst, std::abs(v - w));
    }
    for (const auto& [row, w] : o.cols_[j])
      if (!cols_[j].count(row)) worst = std::max(worst, std::abs(w));
  }
  return worst;
}

long SparseFockOperator::common_domain_size(const SparseFockOperator& o) const {
  long c = 0;
  for (long j = 0; j < dim(); ++j)
    if (valid(j) && o.valid(j)) ++c;
  return c;
}

SparseFockOperator creation(const FockSector& sector, int mode, int comp) {
  const auto& w = sector.window();
  if (mode < w.low || mode > w.high)
    throw std::out_of_range("creation: mode outside window");
  if (comp < 0 || comp >= w.n) throw std::out_of_range("creation: bad component");
  const int bit = sector.bit_of(mode);
  SparseFockOperator op(sector.dimension());
  for (long s = 0; s < sector.dimension(); ++s) {
    const int m = sector.comp_mask(s, comp);
    if ((m >> bit) & 1) continue;  // Pauli: occupied target kills the state
    const int sign = popcount_long(m >> (bit + 1)) % 2 ? -1 : 1;
    op.set(s, sector.with_comp_mask(s, comp, m | (1 << bit)),
           {static_cast<double>(sign), 0.0});
  }
  return op;
}

SparseFockOperator annihilation(const FockSector& sector, int mode, int comp) {
  const auto& w = sector.window();
  if (mode < w.low || mode > w.high)
    throw std::out_of_range("annihilation: mode outside window");
  if (comp < 0 || comp >= w.n) throw std::out_of_range("annihilation: bad component");
  const int bit = sector.bit_of(mode);
  SparseFockOperator op(sector.dimension());
  for (long s = 0; s < sector.dimension(); ++s) {
    const int m = sector.comp_mask(s, comp);
    if (!((m >> bit) & 1)) continue;
    const int sign = popcount_long(m >> (bit + 1)) % 2 ? -1 : 1;
    op.set(s, sector.with_comp_mask(s, comp, m & ~(1 << bit)),
           {static_cast<double>(sign), 0.0});
  }
  return op;
}

CarReport car_check(const FockSector& sector,
                    const std::vector<std::pair<std::pair<int, int>,
                                                std::pair<int, int>>>& pairs) {
  CarReport rep;
  const long dim = sector.dimension();
  const auto I = SparseFockOperator::identity(dim);
  const auto Z = SparseFockOperator::zero(dim);
  for (const auto& [u, v] : pairs) {
    const auto cu = creation(sector, u.first, u.second);
    const auto au = annihilation(sector, u.first, u.second);
    const auto cv = creation(sector, v.first, v.second);
    const auto av = annihilation(sector, v.first, v.second);
    double dev = 0.0;
    if (u.second == v.second) {
      // external scale: generators sqrt(2) times the internal ladders, so the
      // mixed anticommutator reads 2 <u,v>
      const auto mixed = (cu * av + av * cu).scaled({2.0, 0.0});
      const auto expected = u == v ? I.scaled({2.0, 0.0}) : Z;
      dev = mixed.max_deviation(expected);
      dev = std::max(dev, (cu * cv + cv * cu).max_deviation(Z));
      dev = std::max(dev, (au * av + av * au).max_deviation(Z));
    } else {
      // generators of different components commute
      dev = std::max(dev, (cu * av - av * cu).max_deviation(Z));
      dev = std::max(dev, (cu * cv - cv * cu).max_deviation(Z));
      dev = std::max(dev, (au * av - av * au).max_deviation(Z));
    }
    rep.max_deviation = std::max(rep.max_deviation, dev);
    ++rep.pairs_checked;
  }
  rep.passed = rep.max_deviation <= 1e-12;
  return rep;
}

SparseFockOperator shift_operator(const std::vector<long>& p,
                                  const FockSector& sector) {
  const auto& w = sector.window();
  if (static_cast<int>(p.size()) != w.n)
    throw std::invalid_argument("shift_operator: wrong shift dimension");
  for (long pj : p)
    if (std::abs(pj) > w.margin)
      throw std::invalid_argument("shift_operator: shift exceeds the safety margin");
  SparseFockOperator op(sector.dimension());
  for (long s = 0; s < sector.dimension(); ++s) {
    long image = s;
    bool ok = true;
    for (int j = 0; j < w.n && ok; ++j) {
      const long m = shift_mask(sector.comp_mask(s, j), w.width(), p[j]);
      if (m < 0)
        ok = false;
      else
        image = sector.with_comp_mask(image, j, static_cast<int>(m));
    }
    if (ok)
      op.set(s, image, {1.0, 0.0});
    else
      op.set_valid(s, false);
  }
  return op;
}

Rational section_exponent(const TwoForm<Rational>& w, const RVec& x) {
  const int n = w.dim();
  if (x.dim() != n) throw DimensionMismatch("section_exponent: dimension mismatch");
  RVec x0 = RVec::zero(n), z = RVec::zero(n);
  for (int i = 0; i < n; ++i) {
    z[i] = Rational(scalar_traits<Rational>::floor(x[i]));
    x0[i] = x[i] - z[i];
  }
  return two_form_eval(w, x0, z);
}

SparseFockOperator twisted_creation(const FockSector& sector, int mode, int comp,
                                    const TwistedPoint& tp) {
  const double e = scalar_traits<Rational>::to_double(
      section_exponent(tp.omega, tp.x));
  return creation(sector, mode, comp).scaled(unit_phase(e));
}

RPhase twisted_equivariance_check(const TwistedPoint& tp, const RVec& z) {
  if (!z.is_lattice())
    throw std::invalid_argument("twisted_equivariance_check: lattice z required");
  const Rational residual = section_exponent(tp.omega, tp.x + z) -
                            section_exponent(tp.omega, tp.x) -
                            two_form_eval(tp.omega, tp.x, z);
  return RPhase(residual);
}

PhasedShift::PhasedShift(const FockSector& cs, long shift, const Rational& twist) {
  if (cs.window().n != 1)
    throw std::invalid_argument("PhasedShift: single-component sector required");
  const int width = cs.window().width();
  image_.resize(cs.dimension(), -1);
  exponent_.resize(cs.dimension(), Rational(0));
  for (long s = 0; s < cs.dimension(); ++s) {
    const long m = shift_mask(static_cast<int>(s), width, shift);
    if (m < 0) continue;
    image_[s] = m;
    exponent_[s] = twist * Rational(cs.particle_number(s));
  }
}

std::optional<std::pair<long, Rational>> PhasedShift::apply(long state) const {
  if (image_[state] < 0) return std::nullopt;
  return std::make_pair(image_[state], exponent_[state]);
}

PhasedShift PhasedShift::compose(const PhasedShift& g, const PhasedShift& h) {
  if (g.dim() != h.dim()) throw std::invalid_argument("PhasedShift: dims differ");
  PhasedShift r;
  r.image_.resize(g.dim(), -1);
  r.exponent_.resize(g.dim(), Rational(0));
  for (long s = 0; s < g.dim(); ++s) {
    if (h.image_[s] < 0) continue;
    const long mid = h.image_[s];
    if (g.image_[mid] < 0) continue;
    r.image_[s] = g.image_[mid];
    r.exponent_[s] = h.exponent_[s] + g.exponent_[mid];
  }
  return r;
}

ComposeReport compose_check(const std::vector<long>& p, const std::vector<long>& q,
                            const TwistedPoint& tp, const ModeWindow& w) {
  ComposeReport rep;
  const int n = w.n;
  if (static_cast<int>(p.size()) != n || static_cast<int>(q.size()) != n ||
      tp.x.dim() != n || tp.omega.dim() != n)
    throw DimensionMismatch("compose_check: dimension mismatch");
  for (int j = 0; j < n; ++j)
    if (std::abs(p[j]) + std::abs(q[j]) > w.margin)
      throw std::invalid_argument("compose_check: |p| + |q| exceeds the safety margin");

  RVec pv = RVec::zero(n), qv = RVec::zero(n);
  for (int j = 0; j < n; ++j) {
    pv[j] = Rational(p[j]);
    qv[j] = Rational(q[j]);
  }
  const Rational tw_p = two_form_eval(tp.omega, tp.x, pv);
  const Rational tw_q = two_form_eval(tp.omega, tp.x, qv);
  const Rational tw_pq = two_form_eval(tp.omega, tp.x, pv + qv);

  Rational total(0);
  bool constant = true;
  long checked = 0;
  // per component: the twisted shift factorizes, so the composition defect
  // is the sum of per-component defects, each constant on its domain
  for (int j = 0; j < n; ++j) {
    ModeWindow cw{w.low, w.high, 1, w.margin};
    const FockSector cs(cw);
    const PhasedShift gp(cs, p[j], tw_p);
    const PhasedShift gq(cs, q[j], tw_q);
    const PhasedShift gpq(cs, p[j] + q[j], tw_pq);
    const PhasedShift lhs = PhasedShift::compose(gp, gq);
    bool have = false;
    Rational delta(0);
    for (long s = 0; s < cs.dimension(); ++s) {
      const auto a = lhs.apply(s);
      const auto b = gpq.apply(s);
      if (!a || !b) continue;
      if (a->first != b->first) {
        constant = false;
        rep.max_deviation = 1.0;
        continue;
      }
      const Rational d = a->second - b->second;
      if (!have) {
        delta = d;
        have = true;
      } else if (scalar_traits<Rational>::mod1(d - delta) != 0) {
        constant = false;
        rep.max_deviation = std::max(
            rep.max_deviation, scalar_traits<Rational>::to_double(
                                   scalar_traits<Rational>::mod1(d - delta)));
      }
      ++checked;
    }
    if (!have) {
      rep.passed = false;
      rep.max_deviation = 1.0;
      return rep;
    }
    total += delta;
  }
  rep.states_checked = checked;
  rep.measured = RPhase(total);
  const auto C = shift_2cocycle(tp.omega);
  rep.expected = C(tp.x, {pv, qv});
  rep.passed = constant && rep.measured == rep.expected;
  return rep;
}

}  // namespace magtrans
