#pragma once

// Circle-valued group and transformation-groupoid cochains on R^n / Z^n.
// Houses the magnetic 3-cocycle, its groupoid trivialization, and the two
// lattice shift 2-cocycles.

#include "magtrans/phase.hpp"
#include "magtrans/polynomial.hpp"
#include "magtrans/tensors.hpp"

#include <functional>
#include <memory>
#include <utility>

namespace magtrans {

enum class CoeffMode { Constant, TranslationModule };

template <class S>
class GroupCochain {
 public:
  using Vec = GroupVector<S>;
  using Evaluator = std::function<Phase<S>(const Vec& base, const std::vector<Vec>& args)>;

  GroupCochain(int degree, int dim, CoeffMode mode, Evaluator eval,
               bool lattice_args = false)
      : degree_(degree), dim_(dim), mode_(mode), lattice_args_(lattice_args),
        eval_(std::move(eval)) {}

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  CoeffMode mode() const { return mode_; }
  bool lattice_args() const { return lattice_args_; }

  Phase<S> operator()(const Vec& base, const std::vector<Vec>& args) const {
    if (static_cast<int>(args.size()) != degree_)
      throw std::invalid_argument("cochain: wrong number of arguments");
    if (lattice_args_)
      for (const auto& a : args)
        if (!a.is_lattice())
          throw std::invalid_argument("cochain: lattice argument required");
    return eval_(base, args);
  }
  // constant-coefficient convenience: base ignored
  Phase<S> operator()(const std::vector<Vec>& args) const {
    return (*this)(Vec::zero(dim_), args);
  }

  // Exponent as a polynomial in (base vars, arg vars), when known in closed
  // form. Only the equivalence solver consumes this.
  void set_exponent_poly(Polynomial p) {
    exponent_poly_ = std::make_shared<Polynomial>(std::move(p));
  }
  const Polynomial* exponent_poly() const { return exponent_poly_.get(); }

 private:
  int degree_;
  int dim_;
  CoeffMode mode_;
  bool lattice_args_;
  Evaluator eval_;
  std::shared_ptr<const Polynomial> exponent_poly_;
};

// c(x,y,z) = e^{2 pi i sum a_ijk x_i y_j z_k}
template <class S>
GroupCochain<S> magnetic_3cocycle(const AntisymTensor3<S>& a) {
  return GroupCochain<S>(
      3, a.dim(), CoeffMode::Constant,
      [a](const GroupVector<S>&, const std::vector<GroupVector<S>>& v) {
        return phase_of(triple_eval(a, v[0], v[1], v[2]));
      });
}

// b(u; x, y) = c(u, x, y); the groupoid 2-cochain trivializing c
template <class S>
GroupCochain<S> groupoid_potential(const AntisymTensor3<S>& a) {
  return GroupCochain<S>(
      2, a.dim(), CoeffMode::TranslationModule,
      [a](const GroupVector<S>& u, const std::vector<GroupVector<S>>& v) {
        return phase_of(triple_eval(a, u, v[0], v[1]));
      });
}

// Standard alternating coboundary, degree k -> k+1. In translation-module
// mode the action shifts the base point by the first argument:
//   (delta f)(u; x1..x_{k+1}) = f(u+x1; x2..) * prod f(u; .., x_i+x_{i+1}, ..)^{(-1)^i}
//                               * f(u; x1..xk)^{(-1)^{k+1}}
// which at degree 2 is the four-factor groupoid formula.
template <class S>
GroupCochain<S> group_coboundary(const GroupCochain<S>& f) {
  if (f.degree() > 3) throw std::invalid_argument("coboundary: degree > 3 unsupported");
  const int k = f.degree();
  const bool shift_base = f.mode() == CoeffMode::TranslationModule;
  return GroupCochain<S>(
      k + 1, f.dim(), f.mode(),
      [f, k, shift_base](const GroupVector<S>& u,
                         const std::vector<GroupVector<S>>& x) {
        Phase<S> acc;
        {  // leading face: drop x1, act on the base
          std::vector<GroupVector<S>> args(x.begin() + 1, x.end());
          const GroupVector<S> base = shift_base ? u + x[0] : u;
          acc = acc * f(base, args);
        }
        for (int i = 1; i <= k; ++i) {  // inner faces: merge x_i, x_{i+1}
          std::vector<GroupVector<S>> args;
          args.reserve(k);
          for (int j = 0; j < i - 1; ++j) args.push_back(x[j]);
          args.push_back(x[i - 1] + x[i]);
          for (int j = i + 1; j <= k; ++j) args.push_back(x[j]);
          const Phase<S> v = f(u, args);
          acc = acc * (i % 2 == 1 ? v.inverse() : v);
        }
        {  // trailing face: drop x_{k+1}
          std::vector<GroupVector<S>> args(x.begin(), x.end() - 1);
          const Phase<S> v = f(u, args);
          acc = acc * ((k + 1) % 2 == 1 ? v.inverse() : v);
        }
        return acc;
      },
      f.lattice_args());
}

struct CocycleReport {
  bool passed = true;
  int samples = 0;
  double worst_deviation = 0.0;  // circle distance of delta f from the identity
};

namespace detail {
template <class S>
GroupVector<S> sample_vector(RationalSampler& sampler, int n, bool lattice) {
  auto raw = lattice ? sampler.lattice_vector(n) : sampler.rational_vector(n);
  std::vector<S> conv;
  conv.reserve(raw.size());
  for (const auto& r : raw) {
    if constexpr (scalar_traits<S>::exact)
      conv.push_back(r);
    else
      conv.push_back(scalar_traits<Rational>::to_double(r));
  }
  return GroupVector<S>(std::move(conv));
}
}  // namespace detail

// Samples delta f on random argument tuples and checks it is the identity.
template <class S>
CocycleReport verify_cocycle(const GroupCochain<S>& f, int samples,
                             std::uint64_t rng_seed) {
  const GroupCochain<S> df = group_coboundary(f);
  RationalSampler sampler(rng_seed);
  CocycleReport report;
  report.samples = samples;
  const int n = f.dim();
  for (int s = 0; s < samples; ++s) {
    std::vector<GroupVector<S>> args;
    for (int i = 0; i < df.degree(); ++i)
      args.push_back(detail::sample_vector<S>(sampler, n, f.lattice_args()));
    GroupVector<S> base = GroupVector<S>::zero(n);
    if (f.mode() == CoeffMode::TranslationModule)
      base = detail::sample_vector<S>(sampler, n, /*lattice=*/false);
    const Phase<S> v = df(base, args);
    const double dev =
        scalar_traits<S>::to_double(Phase<S>::circle_distance(v, Phase<S>()));
    if (dev > report.worst_deviation) report.worst_deviation = dev;
    if (!(v == Phase<S>())) report.passed = false;
  }
  return report;
}

namespace detail {
// exponent polynomial variable layout for degree-2 translation cochains:
// (u_0..u_{n-1}, p_0..p_{n-1}, q_0..q_{n-1})
inline Polynomial shift_exponent_poly(const TwoForm<Rational>& w) {
  const int n = w.dim();
  Polynomial poly(3 * n);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (w(i, j) == 0) continue;
        Polynomial::Exps e(3 * n, 0);
        e[i] = 1; e[n + j] = 1; e[2 * n + c] = 1;
        poly.add_term(e, w(i, j));
        Polynomial::Exps e2(3 * n, 0);
        e2[j] = 1; e2[n + i] = 1; e2[2 * n + c] = 1;
        poly.add_term(e2, -w(i, j));
      }
  return poly;
}

inline Polynomial triple_exponent_poly(const AntisymTensor3<Rational>& a) {
  const int n = a.dim();
  Polynomial poly(3 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (a(i, j, k) == 0) continue;
        Polynomial::Exps e(3 * n, 0);
        e[i] += 1; e[n + j] += 1; e[2 * n + k] += 1;
        poly.add_term(e, a(i, j, k));
      }
  return poly;
}
}  // namespace detail

// C(x; p, q) = e^{2 pi i N omega(x,p)} with N = sum_j q_j; the composition
// defect of the Fock shift operators g(p).
template <class S>
GroupCochain<S> shift_2cocycle(const TwoForm<S>& w) {
  GroupCochain<S> c(
      2, w.dim(), CoeffMode::TranslationModule,
      [w](const GroupVector<S>& x, const std::vector<GroupVector<S>>& v) {
        S num_particles(0);
        for (int j = 0; j < w.dim(); ++j) num_particles += v[1][j];
        return phase_of(num_particles * two_form_eval(w, x, v[0]));
      },
      /*lattice_args=*/true);
  if constexpr (scalar_traits<S>::exact) c.set_exponent_poly(detail::shift_exponent_poly(w));
  return c;
}

// C'(x; u, v) = e^{2 pi i sum a_ijk x_i u_j v_k} on lattice arguments.
template <class S>
GroupCochain<S> dd_2cocycle(const AntisymTensor3<S>& a) {
  GroupCochain<S> c(
      2, a.dim(), CoeffMode::TranslationModule,
      [a](const GroupVector<S>& x, const std::vector<GroupVector<S>>& v) {
        return phase_of(triple_eval(a, x, v[0], v[1]));
      },
      /*lattice_args=*/true);
  if constexpr (scalar_traits<S>::exact) c.set_exponent_poly(detail::triple_exponent_poly(a));
  return c;
}

// Same evaluator as dd_2cocycle under its abelian-extension name.
template <class S>
Phase<S> luscher_2cocycle_form(const AntisymTensor3<S>& a, const GroupVector<S>& u,
                               const GroupVector<S>& x, const GroupVector<S>& y) {
  if (!x.is_lattice() || !y.is_lattice())
    throw std::invalid_argument("luscher_2cocycle_form: lattice arguments required");
  return phase_of(triple_eval(a, u, x, y));
}

}  // namespace magtrans
