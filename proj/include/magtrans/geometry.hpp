#pragma once

// Piecewise-linear paths, reduced chains of directed segments and oriented
// triangles, and exact integration of the gerbe forms B and Omega over
// triangles and tetrahedra.

#include "magtrans/phase.hpp"
#include "magtrans/tensors.hpp"

#include <map>
#include <thread>
#include <vector>

namespace magtrans {

template <class S>
class PLPath {
 public:
  using Vec = GroupVector<S>;
  struct Breakpoint {
    S t;
    Vec v;
  };

  explicit PLPath(std::vector<Breakpoint> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2) throw std::invalid_argument("PLPath: need >= 2 breakpoints");
    for (std::size_t i = 1; i < pts_.size(); ++i)
      if (!(pts_[i - 1].t < pts_[i].t))
        throw std::invalid_argument("PLPath: breakpoints not strictly increasing");
  }

  const std::vector<Breakpoint>& breakpoints() const { return pts_; }
  const Vec& start() const { return pts_.front().v; }
  const Vec& end() const { return pts_.back().v; }
  const S& t_start() const { return pts_.front().t; }
  const S& t_end() const { return pts_.back().t; }
  bool is_closed() const { return start() == end(); }

  Vec value(const S& t) const {
    if (t <= pts_.front().t) return pts_.front().v;
    if (t >= pts_.back().t) return pts_.back().v;
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      if (t <= pts_[i].t) {
        const S u = (t - pts_[i - 1].t) / (pts_[i].t - pts_[i - 1].t);
        Vec r = pts_[i - 1].v;
        for (int k = 0; k < r.dim(); ++k)
          r[k] += u * (pts_[i].v[k] - pts_[i - 1].v[k]);
        return r;
      }
    }
    return pts_.back().v;
  }

 private:
  std::vector<Breakpoint> pts_;
};

// t -> t*x on [0,1]
template <class S>
PLPath<S> straight_path(const GroupVector<S>& x) {
  return PLPath<S>({{S(0), GroupVector<S>::zero(x.dim())}, {S(1), x}});
}

// Travel f, then the translate f(end) + f1(t); f1 must start at the origin.
template <class S>
PLPath<S> concat(const PLPath<S>& f, const PLPath<S>& f1) {
  if (!(f1.start() == GroupVector<S>::zero(f1.start().dim())))
    throw std::invalid_argument("concat: second path must start at the origin");
  std::vector<typename PLPath<S>::Breakpoint> pts = f.breakpoints();
  const S offset = f.t_end() - f1.t_start();
  const GroupVector<S> base = f.end();
  const auto& tail = f1.breakpoints();
  for (std::size_t i = 1; i < tail.size(); ++i)
    pts.push_back({tail[i].t + offset, base + tail[i].v});
  return PLPath<S>(std::move(pts));
}

// Formal integer combination of directed segments, kept reduced: segments are
// stored with a canonical direction (lexicographically smaller endpoint
// first) so a segment and its reverse cancel by multiset arithmetic.
template <class S>
class OneChain {
 public:
  using Vec = GroupVector<S>;
  using Segment = std::pair<Vec, Vec>;

  OneChain() = default;

  void add(const Vec& p, const Vec& q, long mult = 1) {
    if (mult == 0 || p == q) return;
    Segment key;
    long m = mult;
    if (p < q) {
      key = {p, q};
    } else {
      key = {q, p};
      m = -m;
    }
    auto [it, inserted] = terms_.emplace(key, m);
    if (!inserted) {
      it->second += m;
      if (it->second == 0) terms_.erase(it);
    }
  }

  OneChain& operator+=(const OneChain& o) {
    for (const auto& [seg, m] : o.terms_) add(seg.first, seg.second, m);
    return *this;
  }
  friend OneChain operator+(OneChain a, const OneChain& b) { return a += b; }

  OneChain reversed() const {
    OneChain r;
    for (const auto& [seg, m] : terms_) r.add(seg.first, seg.second, -m);
    return r;
  }

  OneChain translated(const Vec& g) const {
    OneChain r;
    for (const auto& [seg, m] : terms_) r.add(seg.first + g, seg.second + g, m);
    return r;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Segment, long>& terms() const { return terms_; }

  friend bool operator==(const OneChain& a, const OneChain& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<Segment, long> terms_;
};

template <class S>
OneChain<S> chain_sum(const OneChain<S>& a, const OneChain<S>& b) {
  return a + b;
}

template <class S>
OneChain<S> left_translate(const OneChain<S>& c, const GroupVector<S>& g) {
  return c.translated(g);
}

// The loop ell(x,y): boundary of the triangle with vertices 0, x, x+y.
template <class S>
OneChain<S> triangle_loop(const GroupVector<S>& x, const GroupVector<S>& y) {
  const auto zero = GroupVector<S>::zero(x.dim());
  OneChain<S> c;
  c.add(zero, x);
  c.add(x, x + y);
  c.add(x + y, zero);
  return c;
}

template <class S>
struct Triangle {
  GroupVector<S> p, q, r;

  bool degenerate() const {
    const auto u = q - p;
    const auto v = r - p;
    for (int i = 0; i < u.dim(); ++i)
      for (int j = i + 1; j < u.dim(); ++j)
        if (u[i] * v[j] - u[j] * v[i] != S(0)) return false;
    return true;
  }
};

template <class S>
class TwoChain {
 public:
  void add(Triangle<S> t, long mult = 1) {
    if (mult == 0 || t.degenerate()) return;
    terms_.push_back({std::move(t), mult});
  }
  const std::vector<std::pair<Triangle<S>, long>>& terms() const { return terms_; }

  OneChain<S> boundary() const {
    OneChain<S> b;
    for (const auto& [t, m] : terms_) {
      b.add(t.p, t.q, m);
      b.add(t.q, t.r, m);
      b.add(t.r, t.p, m);
    }
    return b;
  }

 private:
  std::vector<std::pair<Triangle<S>, long>> terms_;
};

// Tetrahedron with vertices 0, x, x+y, x+y+z, stored by its edge triple.
template <class S>
struct Tetrahedron {
  GroupVector<S> x, y, z;

  GroupVector<S> vertex(int i) const {
    auto v = GroupVector<S>::zero(x.dim());
    if (i >= 1) v = v + x;
    if (i >= 2) v = v + y;
    if (i >= 3) v = v + z;
    return v;
  }

  // The four spanning triangles, oriented so the total boundary reduces to
  // the empty 1-chain (closed surface).
  TwoChain<S> faces() const {
    const auto a = vertex(0), b = vertex(1), c = vertex(2), d = vertex(3);
    TwoChain<S> f;
    f.add({b, c, d}, +1);   // translate of ell~(y,z) by x
    f.add({a, c, d}, -1);   // ell~(x+y, z)
    f.add({a, b, d}, +1);   // ell~(x, y+z)
    f.add({a, b, c}, -1);   // ell~(x, y)
    return f;
  }
};

// Both sides of the loop 2-cocycle identity, compared as reduced 1-chains;
// both must reduce to the 4-edge cycle through 0, x, x+y, x+y+z.
template <class S>
bool verify_loop_cocycle(const GroupVector<S>& x, const GroupVector<S>& y,
                         const GroupVector<S>& z) {
  const auto lhs = chain_sum(triangle_loop(x, y), triangle_loop(x + y, z));
  const auto rhs = chain_sum(left_translate(triangle_loop(y, z), x),
                             triangle_loop(x, y + z));
  if (!(lhs == rhs)) return false;
  const auto zero = GroupVector<S>::zero(x.dim());
  OneChain<S> cycle;
  cycle.add(zero, x);
  cycle.add(x, x + y);
  cycle.add(x + y, x + y + z);
  cycle.add(x + y + z, zero);
  return lhs == cycle;
}

// Integral of Omega = sum a_ijk dx_i ^ dx_j ^ dx_k over V(x,y,z); in the
// all-ordered-triples convention this equals the trilinear contraction.
template <class S>
S integrate_omega_tet(const AntisymTensor3<S>& a, const Tetrahedron<S>& V) {
  return triple_eval(a, V.x, V.y, V.z);
}

// Exact integral of B = sum a_ijk x_i dx_j ^ dx_k over an oriented triangle.
// B has linear coefficients, so the centroid rule on the pulled-back 2-form
// is exact: value = sum a_ijk c_i M_jk with c the centroid and M_jk the
// planar area components.
template <class S>
S integrate_b_triangle(const AntisymTensor3<S>& a, const Triangle<S>& T) {
  const int n = a.dim();
  if (T.p.dim() != n) throw DimensionMismatch("integrate_b_triangle: dimension mismatch");
  const auto u = T.q - T.p;
  const auto v = T.r - T.p;
  std::vector<S> c(n);
  for (int i = 0; i < n; ++i) c[i] = (T.p[i] + T.q[i] + T.r[i]) / S(3);
  S acc(0);
  for (int i = 0; i < n; ++i) {
    if (c[i] == S(0)) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (a(i, j, k) == S(0)) continue;
        const S area_jk = (u[j] * v[k] - u[k] * v[j]) / S(2);
        acc += a(i, j, k) * c[i] * area_jk;
      }
  }
  return acc;
}

// | sum over oriented faces of int B  -  int_V Omega |
template <class S>
S stokes_check(const AntisymTensor3<S>& a, const Tetrahedron<S>& V) {
  S sum(0);
  const auto faces = V.faces();
  for (const auto& [t, m] : faces.terms())
    sum += S(m) * integrate_b_triangle(a, t);
  S diff = sum - integrate_omega_tet(a, V);
  return diff < S(0) ? -diff : diff;
}

template <class S>
Phase<S> tetra_phase(const AntisymTensor3<S>& a, const GroupVector<S>& x,
                     const GroupVector<S>& y, const GroupVector<S>& z) {
  return phase_of(integrate_omega_tet(a, Tetrahedron<S>{x, y, z}));
}

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

int thread_budget();  // respects MAGTRANS_THREADS

// Monte-Carlo oracle for int_V Omega at n=3: rejection sampling of the
// tetrahedron volume in its bounding box times the density of the top form.
MonteCarloEstimate mc_integrate_omega_tet(const AntisymTensor3<double>& a,
                                          const Tetrahedron<double>& V,
                                          long samples, std::uint64_t seed);

}  // namespace magtrans
