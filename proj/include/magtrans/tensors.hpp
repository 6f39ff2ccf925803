#pragma once

// Group vectors and the constant coefficient tensors a_ijk / omega_ij that
// define the 3-form Omega, the 2-form B and all circle-valued cocycles.

#include "magtrans/scalar.hpp"

#include <cstddef>
#include <vector>

namespace magtrans {

template <class S>
class GroupVector {
 public:
  GroupVector() = default;
  explicit GroupVector(std::vector<S> entries) : entries_(std::move(entries)) {}
  static GroupVector zero(int n) { return GroupVector(std::vector<S>(n, S(0))); }
  static GroupVector basis(int n, int i) {
    std::vector<S> e(n, S(0));
    e[i] = S(1);
    return GroupVector(std::move(e));
  }

  int dim() const { return static_cast<int>(entries_.size()); }
  const S& operator[](int i) const { return entries_[i]; }
  S& operator[](int i) { return entries_[i]; }
  const std::vector<S>& entries() const { return entries_; }

  bool is_lattice() const {
    for (const auto& e : entries_)
      if (!scalar_traits<S>::is_integer(e)) return false;
    return true;
  }

  friend GroupVector operator+(const GroupVector& a, const GroupVector& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("vector dims differ");
    GroupVector r = a;
    for (int i = 0; i < r.dim(); ++i) r.entries_[i] += b.entries_[i];
    return r;
  }
  friend GroupVector operator-(const GroupVector& a, const GroupVector& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("vector dims differ");
    GroupVector r = a;
    for (int i = 0; i < r.dim(); ++i) r.entries_[i] -= b.entries_[i];
    return r;
  }
  GroupVector operator-() const {
    GroupVector r = *this;
    for (auto& e : r.entries_) e = -e;
    return r;
  }
  friend bool operator==(const GroupVector& a, const GroupVector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const GroupVector& a, const GroupVector& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<S> entries_;
};

// Totally antisymmetric rank-3 tensor; the constructor antisymmetrizes its
// input so the invariant holds for arbitrary entry lists.
template <class S>
class AntisymTensor3 {
 public:
  explicit AntisymTensor3(int n) : n_(n), a_(static_cast<std::size_t>(n) * n * n, S(0)) {}

  static AntisymTensor3 epsilon() {
    AntisymTensor3 t(3);
    t.set_antisym(0, 1, 2, S(1));
    return t;
  }
  static AntisymTensor3 zero(int n) { return AntisymTensor3(n); }

  // Builds from sparse entries, antisymmetrizing over index permutations.
  static AntisymTensor3 from_entries(
      int n, const std::vector<std::tuple<int, int, int, S>>& entries) {
    AntisymTensor3 t(n);
    for (const auto& [i, j, k, v] : entries) t.add_antisym(i, j, k, v);
    return t;
  }

  int dim() const { return n_; }
  const S& operator()(int i, int j, int k) const { return a_[idx(i, j, k)]; }

  // sets a_ijk = v and the five permuted entries with alternating signs
  void set_antisym(int i, int j, int k, const S& v) {
    if (i == j || j == k || i == k) {
      if (v != S(0)) throw std::invalid_argument("repeated index with nonzero value");
      return;
    }
    a_[idx(i, j, k)] = v;
    a_[idx(j, k, i)] = v;
    a_[idx(k, i, j)] = v;
    a_[idx(j, i, k)] = -v;
    a_[idx(i, k, j)] = -v;
    a_[idx(k, j, i)] = -v;
  }

  // accumulates the antisymmetrization of a raw entry
  void add_antisym(int i, int j, int k, const S& v) {
    if (i == j || j == k || i == k) return;
    const S h = v / S(6);
    a_[idx(i, j, k)] += h;
    a_[idx(j, k, i)] += h;
    a_[idx(k, i, j)] += h;
    a_[idx(j, i, k)] -= h;
    a_[idx(i, k, j)] -= h;
    a_[idx(k, j, i)] -= h;
  }

  AntisymTensor3 scaled(const S& c) const {
    AntisymTensor3 t = *this;
    for (auto& e : t.a_) e *= c;
    return t;
  }

  bool is_zero() const {
    for (const auto& e : a_)
      if (e != S(0)) return false;
    return true;
  }

 private:
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_;
  std::vector<S> a_;
};

template <class S>
class TwoForm {
 public:
  explicit TwoForm(int n) : n_(n), w_(static_cast<std::size_t>(n) * n, S(0)) {}

  static TwoForm from_entries(int n,
                              const std::vector<std::tuple<int, int, S>>& entries) {
    TwoForm t(n);
    for (const auto& [i, j, v] : entries) {
      if (i == j) continue;
      t.w_[t.idx(i, j)] += v;
      t.w_[t.idx(j, i)] -= v;
    }
    return t;
  }

  int dim() const { return n_; }
  const S& operator()(int i, int j) const { return w_[idx(i, j)]; }
  void set(int i, int j, const S& v) {
    if (i == j) throw std::invalid_argument("diagonal entry of a two-form");
    w_[idx(i, j)] = v;
    w_[idx(j, i)] = -v;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  int n_;
  std::vector<S> w_;
};

// Sum over all ordered triples a_ijk x_i y_j z_k. For a = epsilon at n=3 this
// is det[x|y|z].
template <class S>
S triple_eval(const AntisymTensor3<S>& a, const GroupVector<S>& x,
              const GroupVector<S>& y, const GroupVector<S>& z) {
  const int n = a.dim();
  if (x.dim() != n || y.dim() != n || z.dim() != n)
    throw DimensionMismatch("triple_eval: dimension mismatch");
  S acc(0);
  for (int i = 0; i < n; ++i) {
    if (x[i] == S(0)) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i || y[j] == S(0)) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        acc += a(i, j, k) * x[i] * y[j] * z[k];
      }
    }
  }
  return acc;
}

// Sum over i<j of omega_ij (x_i y_j - x_j y_i).
template <class S>
S two_form_eval(const TwoForm<S>& w, const GroupVector<S>& x, const GroupVector<S>& y) {
  const int n = w.dim();
  if (x.dim() != n || y.dim() != n)
    throw DimensionMismatch("two_form_eval: dimension mismatch");
  S acc(0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      acc += w(i, j) * (x[i] * y[j] - x[j] * y[i]);
  return acc;
}

using RVec = GroupVector<Rational>;
using DVec = GroupVector<double>;

}  // namespace magtrans
