#include "magtrans/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace magtrans {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// E(u) = (e^{2 pi i u} - 1) / (2 pi i u), E(0) = 1; stable for small u
std::complex<double> cexp_ratio(double u) {
  const double theta = kTwoPi * u;
  if (std::abs(theta) < 1e-8)
    return {1.0 - theta * theta / 6.0, 0.5 * theta};
  const double s = std::sin(0.5 * theta);
  const std::complex<double> num(-2.0 * s * s, std::sin(theta));
  return num / std::complex<double>(0.0, theta);
}

std::complex<double> unit_phase(double e) {
  const double theta = kTwoPi * e;
  return {std::cos(theta), std::sin(theta)};
}

struct LinearFit {
  double slope, intercept, r2;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  const double cov = sxy - sx * sy / n;
  LinearFit f;
  f.slope = cov / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r2 = vy > 0 ? cov * cov / (vx * vy) : 1.0;
  return f;
}

}  // namespace

LoopFunction::LoopFunction(std::vector<std::vector<Breakpoint>> components)
    : components_(std::move(components)) {
  for (const auto& comp : components_) {
    if (comp.size() < 2)
      throw std::invalid_argument("LoopFunction: need >= 2 breakpoints per component");
    if (comp.front().t != 0.0 || comp.back().t != 1.0)
      throw std::invalid_argument("LoopFunction: parameter must cover [0,1]");
    for (std::size_t i = 1; i < comp.size(); ++i)
      if (!(comp[i - 1].t < comp[i].t))
        throw std::invalid_argument("LoopFunction: breakpoints not strictly increasing");
  }
}

LoopFunction LoopFunction::zero(int n) {
  std::vector<std::vector<Breakpoint>> comps(n, {{0.0, 0.0}, {1.0, 0.0}});
  return LoopFunction(std::move(comps));
}

LoopFunction LoopFunction::linear(int n, int k, double v) {
  std::vector<std::vector<Breakpoint>> comps(n, {{0.0, 0.0}, {1.0, 0.0}});
  comps.at(k) = {{0.0, 0.0}, {1.0, v}};
  return LoopFunction(std::move(comps));
}

LoopFunction LoopFunction::from_vertices(
    const std::vector<std::vector<double>>& verts) {
  if (verts.size() < 2)
    throw std::invalid_argument("from_vertices: need >= 2 vertices");
  const int n = static_cast<int>(verts.front().size());
  const double m = static_cast<double>(verts.size());
  std::vector<std::vector<Breakpoint>> comps(n);
  for (int k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < verts.size(); ++i)
      comps[k].push_back({static_cast<double>(i) / m, verts[i].at(k)});
    comps[k].push_back({1.0, verts.front().at(k)});
  }
  return LoopFunction(std::move(comps));
}

double LoopFunction::winding(int k) const {
  const auto& c = components_.at(k);
  return c.back().v - c.front().v;
}

bool LoopFunction::is_open() const {
  for (int k = 0; k < dim(); ++k) {
    const double w = winding(k);
    if (std::abs(w - std::round(w)) > 1e-9) return true;
  }
  return false;
}

std::complex<double> fourier_element(const LoopFunction& l, int k, long p, long q) {
  const auto& comp = l.component(k);
  const double d = static_cast<double>(q - p);
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 1; i < comp.size(); ++i) {
    const double t0 = comp[i - 1].t, t1 = comp[i].t;
    const double L = t1 - t0;
    const double slope = (comp[i].v - comp[i - 1].v) / L;
    // phase l_k(t) + d t = (v0 + d t0) + (slope + d)(t - t0) on the segment
    const double freq = slope + d;
    acc += L * unit_phase(comp[i - 1].v + d * t0) * cexp_ratio(freq * L);
  }
  return acc;
}

double hs_partial_sum(const LoopFunction& l, int k, long cutoff) {
  if (cutoff < 1) throw std::invalid_argument("hs_partial_sum: cutoff >= 1 required");
  // Kahan summation over the off-diagonal distance, fixed ascending order
  double sum = 0.0, comp = 0.0;
  for (long d = -(2 * cutoff - 1); d <= -1; ++d) {
    const long lo = std::max(0L, -cutoff - d);
    const long hi = std::min(cutoff, -d);
    const long count = hi - lo;
    if (count <= 0) continue;
    const double a = std::norm(fourier_element(l, k, 0, d)) * static_cast<double>(count);
    const double y = a - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

DecayFit decay_fit(const LoopFunction& l, int k, const std::vector<long>& distances) {
  std::vector<double> lx, ly;
  for (long r : distances) {
    const double a = std::abs(fourier_element(l, k, 0, -r));
    // exact zeros of the ray survive only as roundoff; they carry no decay
    // information and would dominate the fit
    if (a <= 1e-14) continue;
    lx.push_back(std::log(static_cast<double>(r)));
    ly.push_back(std::log(a));
  }
  if (lx.size() < 8) throw std::invalid_argument("decay_fit: need >= 8 usable points");
  const auto f = least_squares(lx, ly);
  return {f.slope, f.intercept, f.r2};
}

DecayFit log_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("log_fit: need >= 3 matched points");
  std::vector<double> lx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) lx[i] = std::log(x[i]);
  const auto f = least_squares(lx, y);
  return {f.slope, f.intercept, f.r2};
}

TrigPolynomial TrigPolynomial::mode(int n, int k, long m, std::complex<double> c) {
  TrigPolynomial f(n);
  f.set_coeff(k, m, c);
  return f;
}

int TrigPolynomial::degree() const {
  long d = 0;
  for (const auto& comp : coeffs_)
    for (const auto& [m, c] : comp)
      d = std::max(d, std::abs(m));
  return static_cast<int>(d);
}

std::complex<double> TrigPolynomial::coeff(int k, long m) const {
  const auto& comp = coeffs_.at(k);
  const auto it = comp.find(m);
  return it == comp.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

void TrigPolynomial::set_coeff(int k, long m, std::complex<double> c) {
  if (c == std::complex<double>(0.0, 0.0))
    coeffs_.at(k).erase(m);
  else
    coeffs_.at(k)[m] = c;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& o) const {
  TrigPolynomial r = *this;
  for (int k = 0; k < o.dim(); ++k)
    for (const auto& [m, c] : o.coeffs_[k]) r.set_coeff(k, m, r.coeff(k, m) + c);
  return r;
}

TrigPolynomial TrigPolynomial::operator*(const TrigPolynomial& o) const {
  TrigPolynomial r(dim());
  for (int k = 0; k < dim(); ++k)
    for (const auto& [m1, c1] : coeffs_[k])
      for (const auto& [m2, c2] : o.coeffs_[k])
        r.set_coeff(k, m1 + m2, r.coeff(k, m1 + m2) + c1 * c2);
  return r;
}

TrigPolynomial TrigPolynomial::scaled(std::complex<double> c) const {
  TrigPolynomial r(dim());
  for (int k = 0; k < dim(); ++k)
    for (const auto& [m, v] : coeffs_[k]) r.set_coeff(k, m, v * c);
  return r;
}

TrigPolynomial TrigPolynomial::derivative() const {
  TrigPolynomial r(dim());
  for (int k = 0; k < dim(); ++k)
    for (const auto& [m, v] : coeffs_[k])
      r.set_coeff(k, m, v * std::complex<double>(0.0, static_cast<double>(m)));
  return r;
}

TruncatedOperator::TruncatedOperator(int window, int n)
    : window_(window), n_(n),
      mat_(Eigen::MatrixXcd::Zero(static_cast<long>(n) * (2 * window + 1),
                                  static_cast<long>(n) * (2 * window + 1))) {
  if (window < 0 || n < 1)
    throw std::invalid_argument("TruncatedOperator: bad window or component count");
}

int TruncatedOperator::index(int k, long m) const {
  if (k < 0 || k >= n_ || m < -window_ || m > window_)
    throw std::out_of_range("TruncatedOperator: index outside window");
  return k * (2 * window_ + 1) + static_cast<int>(m + window_);
}

TruncatedOperator TruncatedOperator::sign(int window, int n) {
  TruncatedOperator e(window, n);
  for (int k = 0; k < n; ++k)
    for (long m = -window; m <= window; ++m)
      e.mat_(e.index(k, m), e.index(k, m)) = m >= 0 ? 1.0 : -1.0;
  return e;
}

TruncatedOperator TruncatedOperator::operator*(const TruncatedOperator& o) const {
  if (window_ != o.window_ || n_ != o.n_)
    throw std::invalid_argument("TruncatedOperator: shape mismatch");
  TruncatedOperator r(window_, n_);
  r.mat_ = mat_ * o.mat_;
  return r;
}

TruncatedOperator TruncatedOperator::operator-(const TruncatedOperator& o) const {
  if (window_ != o.window_ || n_ != o.n_)
    throw std::invalid_argument("TruncatedOperator: shape mismatch");
  TruncatedOperator r(window_, n_);
  r.mat_ = mat_ - o.mat_;
  return r;
}

std::complex<double> TruncatedOperator::trace() const { return mat_.trace(); }

Eigen::MatrixXcd TruncatedOperator::block(bool row_nonneg, bool col_nonneg) const {
  std::vector<int> rows, cols;
  for (int k = 0; k < n_; ++k)
    for (long m = -window_; m <= window_; ++m) {
      if ((m >= 0) == row_nonneg) rows.push_back(index(k, m));
      if ((m >= 0) == col_nonneg) cols.push_back(index(k, m));
    }
  Eigen::MatrixXcd b(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = mat_(rows[i], cols[j]);
  return b;
}

TruncatedOperator multiplication_operator(const TrigPolynomial& f, int window) {
  if (window < f.degree())
    throw std::invalid_argument("multiplication_operator: window smaller than degree");
  TruncatedOperator op(window, f.dim());
  for (int k = 0; k < f.dim(); ++k)
    for (const auto& [m, c] : f.component(k))
      for (long q = -window; q <= window; ++q) {
        const long r = q + m;
        if (r < -window || r > window) continue;
        op.matrix()(op.index(k, r), op.index(k, q)) += c;
      }
  return op;
}

std::complex<double> luscher_trace(const TrigPolynomial& f, const TrigPolynomial& g,
                                   int window) {
  if (window < f.degree() + g.degree())
    throw std::invalid_argument("luscher_trace: window must cover deg f + deg g");
  if (f.dim() != g.dim())
    throw std::invalid_argument("luscher_trace: component count mismatch");
  const auto F = multiplication_operator(f, window);
  const auto G = multiplication_operator(g, window);
  const auto E = TruncatedOperator::sign(window, f.dim());
  return 0.5 * (F * (E * G - G * E)).trace();
}

std::complex<double> luscher_integral(const TrigPolynomial& f,
                                      const TrigPolynomial& g) {
  if (f.dim() != g.dim())
    throw std::invalid_argument("luscher_integral: component count mismatch");
  std::complex<double> acc(0.0, 0.0);
  for (int k = 0; k < f.dim(); ++k)
    for (const auto& [m, gc] : g.component(k))
      acc += static_cast<double>(m) * f.coeff(k, -m) * gc;
  return acc;
}

std::complex<double> b1_cochain(const TrigPolynomial& A, const TrigPolynomial& X) {
  if (A.dim() != X.dim())
    throw std::invalid_argument("b1_cochain: component count mismatch");
  std::complex<double> acc(0.0, 0.0);
  for (int k = 0; k < A.dim(); ++k)
    for (const auto& [m, ac] : A.component(k)) acc += ac * X.coeff(k, -m);
  // 1/(4 pi i) times the 2 pi of the measure
  return acc * std::complex<double>(0.0, -0.5);
}

std::complex<double> delta_b1(const TrigPolynomial& A, const TrigPolynomial& X,
                              const TrigPolynomial& Y) {
  const auto along_x = b1_cochain(A + X.derivative(), Y) - b1_cochain(A, Y);
  const auto along_y = b1_cochain(A + Y.derivative(), X) - b1_cochain(A, X);
  return along_x - along_y;
}

}  // namespace magtrans
