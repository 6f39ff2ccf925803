#pragma once

// Sparse multivariate polynomials over the rationals. Small utility used for
// cochain exponents and the equivalence solver; exponent vectors are dense
// per-monomial (variable counts stay below ~20 here).

#include "magtrans/scalar.hpp"

#include <map>
#include <vector>

namespace magtrans {

class Polynomial {
 public:
  using Exps = std::vector<int>;

  Polynomial() : nvars_(0) {}
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial variable(int nvars, int i) {
    Polynomial p(nvars);
    Exps e(nvars, 0);
    e[i] = 1;
    p.terms_[e] = Rational(1);
    return p;
  }
  static Polynomial constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_[Exps(nvars, 0)] = c;
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<Exps, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exps& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exps e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Polynomial operator*(const Rational& c) const {
    Polynomial r(nvars_);
    for (const auto& [e, t] : terms_) r.add_term(e, t * c);
    return r;
  }

  Rational eval(const std::vector<Rational>& vals) const {
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) t *= vals[i];
      acc += t;
    }
    return acc;
  }

  // substitutes variable i by the given polynomial for each listed pair
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    Polynomial r(images.empty() ? nvars_ : images.front().nvars());
    for (const auto& [e, c] : terms_) {
      Polynomial t = Polynomial::constant(r.nvars(), c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) t = t * images[i];
      r += t;
    }
    return r;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      if (s > d) d = s;
    }
    return d;
  }

 private:
  int nvars_;
  std::map<Exps, Rational> terms_;
};

}  // namespace magtrans
