#pragma once

// Fourier-mode diagnostics on the circle: matrix elements of multiplication
// operators, Hilbert-Schmidt partial sums for the sign polarization, and the
// Luscher 2-cocycle in trace and integral form.
//
// Convention, used everywhere below: the circle is parametrized by t in
// [0,1) with modes e_p(t) = e^{2 pi i p t}. Formulas stated elsewhere with
// theta in [0,2 pi) translate via theta = 2 pi t; the Lie-algebra pairings
// (luscher_integral, b1) absorb the 2 pi of d theta so that
// luscher_integral(e_m, e_{-m}) = -m.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <vector>

namespace magtrans {

// Piecewise-linear map [0,1] -> R^n; component k is given by breakpoints.
// Closed loops have integer winding f(1) - f(0); otherwise the path is open.
class LoopFunction {
 public:
  struct Breakpoint {
    double t;
    double v;
  };

  explicit LoopFunction(std::vector<std::vector<Breakpoint>> components);

  static LoopFunction zero(int n);
  // component k linear, t -> v * t (winding v when v is an integer)
  static LoopFunction linear(int n, int k, double v);
  // projection of a PL loop in R^n given by vertex positions at equal
  // parameter spacing, closing back to the first vertex
  static LoopFunction from_vertices(const std::vector<std::vector<double>>& verts);

  int dim() const { return static_cast<int>(components_.size()); }
  const std::vector<Breakpoint>& component(int k) const { return components_.at(k); }
  double winding(int k) const;
  bool is_open() const;

 private:
  std::vector<std::vector<Breakpoint>> components_;
};

// <e_p, e^{2 pi i l_k} e_q> = int_0^1 e^{2 pi i (l_k(t) + (q-p) t)} dt,
// evaluated in closed form segment by segment.
std::complex<double> fourier_element(const LoopFunction& l, int k, long p, long q);

// sum over 0 <= p < G, -G <= q < 0 of |fourier_element|^2. The element
// depends only on q - p, so the double sum collapses to one pass over the
// off-diagonal distance with combinatorial weights.
double hs_partial_sum(const LoopFunction& l, int k, long cutoff);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// least-squares slope of ln|element| vs ln|p - q| along the ray p = 0,
// q = -r for r in distances; needs at least 8 points
DecayFit decay_fit(const LoopFunction& l, int k, const std::vector<long>& distances);

// least-squares fit y = b0 + b1 ln(x); reused for the open-path growth law
DecayFit log_fit(const std::vector<double>& x, const std::vector<double>& y);

// Finite Fourier series per component: f_k(t) = sum_m coeff[k][m] e_m(t).
class TrigPolynomial {
 public:
  explicit TrigPolynomial(int n) : coeffs_(n) {}

  static TrigPolynomial mode(int n, int k, long m,
                             std::complex<double> c = {1.0, 0.0});

  int dim() const { return static_cast<int>(coeffs_.size()); }
  int degree() const;
  std::complex<double> coeff(int k, long m) const;
  void set_coeff(int k, long m, std::complex<double> c);
  const std::map<long, std::complex<double>>& component(int k) const {
    return coeffs_.at(k);
  }

  TrigPolynomial operator+(const TrigPolynomial& o) const;
  TrigPolynomial operator*(const TrigPolynomial& o) const;  // pointwise product
  TrigPolynomial scaled(std::complex<double> c) const;
  // d/d theta in the theta = 2 pi t picture: e_m -> i m e_m
  TrigPolynomial derivative() const;

 private:
  std::vector<std::map<long, std::complex<double>>> coeffs_;
};

// Dense operator on the truncated basis {e_m : |m| <= M} x components;
// row/column index = component * (2M+1) + (m + M).
class TruncatedOperator {
 public:
  TruncatedOperator(int window, int n);

  int window() const { return window_; }
  int dim() const { return n_; }
  int size() const { return static_cast<int>(mat_.rows()); }
  int index(int k, long m) const;

  Eigen::MatrixXcd& matrix() { return mat_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }

  // +1 on modes >= 0, -1 on modes < 0, every component
  static TruncatedOperator sign(int window, int n);

  TruncatedOperator operator*(const TruncatedOperator& o) const;
  TruncatedOperator operator-(const TruncatedOperator& o) const;
  std::complex<double> trace() const;

  // polarization block: rows with mode sign row_nonneg, cols with col_nonneg
  Eigen::MatrixXcd block(bool row_nonneg, bool col_nonneg) const;

 private:
  int window_;
  int n_;
  Eigen::MatrixXcd mat_;
};

// matrix of pointwise multiplication by f, block diagonal in the component
// index; requires window >= degree so no coefficient aliases
TruncatedOperator multiplication_operator(const TrigPolynomial& f, int window);

// 1/2 tr(F [eps, G]); exact once window >= deg f + deg g
std::complex<double> luscher_trace(const TrigPolynomial& f, const TrigPolynomial& g,
                                   int window);

// (1 / 2 pi i) int sum_k f_k dg_k = sum_k sum_m m fhat_{k,-m} ghat_{k,m}
std::complex<double> luscher_integral(const TrigPolynomial& f,
                                      const TrigPolynomial& g);

// b1(A;X) = (1 / 4 pi i) int sum_k A_k X_k, i.e. (1/2i) sum_k sum_m
// Ahat_{k,m} Xhat_{k,-m} after the 2 pi of the measure is absorbed
std::complex<double> b1_cochain(const TrigPolynomial& A, const TrigPolynomial& X);

// coboundary of b1 along the affine action A -> A + dX; equals
// kDeltaB1Sign * luscher_integral(X, Y) and never depends on A
std::complex<double> delta_b1(const TrigPolynomial& A, const TrigPolynomial& X,
                              const TrigPolynomial& Y);

// measured once against luscher_integral and fixed here
inline constexpr double kDeltaB1Sign = -1.0;

}  // namespace magtrans
