#include "magtrans/equivalence.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace magtrans {
namespace {

using Row = std::vector<Rational>;

struct AffineSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> nullspace;
};

// Reduced row echelon solve of the augmented system A[:, :M] v = A[:, M].
std::optional<AffineSolution> gauss_solve(std::vector<Row> A, int M) {
  const int rows = static_cast<int>(A.size());
  std::vector<int> piv;
  int r = 0;
  for (int col = 0; col < M && r < rows; ++col) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (A[i][col] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(A[r], A[pr]);
    const Rational pv = A[r][col];
    for (auto& v : A[r]) v /= pv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][col] == 0) continue;
      const Rational f = A[i][col];
      for (int j = 0; j <= M; ++j) A[i][j] -= f * A[r][j];
    }
    piv.push_back(col);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (A[i][M] != 0) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(M, Rational(0));
  for (int i = 0; i < static_cast<int>(piv.size()); ++i)
    sol.particular[piv[i]] = A[i][M];
  std::vector<bool> is_piv(M, false);
  for (int c : piv) is_piv[c] = true;
  for (int fc = 0; fc < M; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<Rational> v(M, Rational(0));
    v[fc] = 1;
    for (int i = 0; i < static_cast<int>(piv.size()); ++i) v[piv[i]] = -A[i][fc];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// floor division quotient, matching the sign convention of the gcd steps
BigInt fdiv(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// Solve A z = b over the integers by column reduction with unimodular
// bookkeeping (Hermite-style elimination).
std::optional<std::vector<BigInt>> int_solve(std::vector<std::vector<BigInt>> A,
                                             const std::vector<BigInt>& b) {
  if (A.empty()) return std::vector<BigInt>{};
  const int m = static_cast<int>(A.size());
  const int N = static_cast<int>(A[0].size());
  std::vector<std::vector<BigInt>> U(N, std::vector<BigInt>(N, 0));
  for (int i = 0; i < N; ++i) U[i][i] = 1;
  int cstart = 0;
  std::vector<int> pivcol(m, -1);
  for (int rr = 0; rr < m; ++rr) {
    for (;;) {
      std::vector<int> nz;
      for (int c = cstart; c < N; ++c)
        if (A[rr][c] != 0) nz.push_back(c);
      if (nz.size() <= 1) break;
      std::sort(nz.begin(), nz.end(),
                [&](int a, int c) { return abs_big(A[rr][a]) < abs_big(A[rr][c]); });
      const int c1 = nz[0], c2 = nz[1];
      const BigInt f = fdiv(A[rr][c2], A[rr][c1]);
      for (int i = 0; i < m; ++i) A[i][c2] -= f * A[i][c1];
      for (int i = 0; i < N; ++i) U[i][c2] -= f * U[i][c1];
    }
    int c1 = -1;
    for (int c = cstart; c < N; ++c)
      if (A[rr][c] != 0) { c1 = c; break; }
    if (c1 >= 0) {
      if (c1 != cstart) {
        for (int i = 0; i < m; ++i) std::swap(A[i][c1], A[i][cstart]);
        for (int i = 0; i < N; ++i) std::swap(U[i][c1], U[i][cstart]);
      }
      pivcol[rr] = cstart;
      ++cstart;
    }
  }
  std::vector<BigInt> y(N, 0);
  for (int rr = 0; rr < m; ++rr) {
    BigInt s = b[rr];
    for (int c = 0; c < cstart; ++c) s -= A[rr][c] * y[c];
    if (pivcol[rr] < 0) {
      if (s != 0) return std::nullopt;
    } else {
      const BigInt pv = A[rr][pivcol[rr]];
      if (s % pv != 0) return std::nullopt;
      y[pivcol[rr]] = s / pv;
    }
  }
  std::vector<BigInt> z(N, 0);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) z[i] += U[i][j] * y[j];
  return z;
}

long stirling2(int k, int j) {
  if (k == j) return 1;
  if (j == 0 || j > k) return 0;
  return j * stirling2(k - 1, j) + stirling2(k - 1, j - 1);
}

long factorial(int j) {
  long f = 1;
  for (int i = 2; i <= j; ++i) f *= i;
  return f;
}

// p^k = sum_j coef[j] * binom(p, j); integer-valuedness of a polynomial on
// the lattice is integrality of its binomial-basis coordinates.
std::map<int, Rational> mono_to_binom_1d(int k) {
  std::map<int, Rational> out;
  for (int j = 0; j <= k; ++j) {
    const long s = stirling2(k, j);
    if (s != 0) out[j] = Rational(s * factorial(j));
  }
  return out;
}

long binom(int k, int j) {
  long r = 1;
  for (int i = 0; i < j; ++i) r = r * (k - i) / (i + 1);
  return r;
}

// (v+w)^exps expanded over n variables: list of (ev, ew, coefficient)
struct ShiftTerm {
  std::vector<int> ev, ew;
  long coef;
};
std::vector<ShiftTerm> expand_shift(const std::vector<int>& exps, int n) {
  std::vector<ShiftTerm> cur{{std::vector<int>(n, 0), std::vector<int>(n, 0), 1}};
  for (int i = 0; i < n; ++i) {
    const int k = exps[i];
    if (k == 0) continue;
    std::vector<ShiftTerm> next;
    for (const auto& t : cur)
      for (int j = 0; j <= k; ++j) {
        ShiftTerm s = t;
        s.ev[i] += j;
        s.ew[i] += k - j;
        s.coef *= binom(k, j);
        next.push_back(std::move(s));
      }
    cur = std::move(next);
  }
  return cur;
}

// Constant plus linear combination of the unknown beta coefficients.
struct AffineCoeff {
  Rational c0;
  std::map<int, Rational> lin;
};

void affine_add(std::map<std::vector<int>, AffineCoeff>& P, std::vector<int> key,
                const Rational& c0, int mono_index, const Rational& lin_c) {
  auto& e = P[std::move(key)];
  e.c0 += c0;
  if (lin_c != 0) {
    auto [it, ins] = e.lin.emplace(mono_index, lin_c);
    if (!ins) {
      it->second += lin_c;
      if (it->second == 0) e.lin.erase(it);
    }
  }
}

void enumerate_monomials(int nvars, int deg, std::vector<std::vector<int>>& out) {
  // combinations with replacement of variable indices, degree 1..deg
  std::vector<int> combo;
  auto rec = [&](auto&& self, int start, int remaining) -> void {
    if (!combo.empty()) {
      std::vector<int> e(nvars, 0);
      for (int i : combo) e[i]++;
      out.push_back(std::move(e));
    }
    if (remaining == 0) return;
    for (int i = start; i < nvars; ++i) {
      combo.push_back(i);
      self(self, i, remaining - 1);
      combo.pop_back();
    }
  };
  rec(rec, 0, deg);
}

}  // namespace

Rational coboundary1_eval(int n, const Polynomial& beta,
                          const std::vector<Rational>& x,
                          const std::vector<Rational>& p,
                          const std::vector<Rational>& q) {
  auto pack = [n](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> v(a.begin(), a.end());
    v.insert(v.end(), b.begin(), b.end());
    return v;
  };
  std::vector<Rational> xp(n), pq(n);
  for (int i = 0; i < n; ++i) {
    xp[i] = x[i] + p[i];
    pq[i] = p[i] + q[i];
  }
  return beta.eval(pack(x, p)) + beta.eval(pack(xp, q)) - beta.eval(pack(x, pq));
}

EquivalenceResult solve_equivalence_poly(int n, const Polynomial& difference,
                                         int ansatz_degree) {
  EquivalenceResult res;
  if (difference.nvars() != 3 * n)
    throw std::invalid_argument("solve_equivalence_poly: difference must use 3n variables");

  std::vector<std::vector<int>> monos;
  enumerate_monomials(2 * n, ansatz_degree, monos);
  // deduplicate (the recursion emits each prefix once per extension path)
  std::sort(monos.begin(), monos.end());
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  const int M = static_cast<int>(monos.size());

  // coefficients of D - delta beta, per monomial in (x, p, q), affine in the
  // unknown beta coefficients
  std::map<std::vector<int>, AffineCoeff> R;
  for (int mi = 0; mi < M; ++mi) {
    const auto& mo = monos[mi];
    const std::vector<int> ex(mo.begin(), mo.begin() + n);
    const std::vector<int> ep(mo.begin() + n, mo.end());
    {  // -beta(x;p)
      std::vector<int> key(3 * n, 0);
      for (int i = 0; i < n; ++i) { key[i] = ex[i]; key[n + i] = ep[i]; }
      affine_add(R, std::move(key), Rational(0), mi, Rational(-1));
    }
    for (const auto& t : expand_shift(ex, n)) {  // -beta(x+p;q)
      std::vector<int> key(3 * n, 0);
      for (int i = 0; i < n; ++i) {
        key[i] = t.ev[i];
        key[n + i] = t.ew[i];
        key[2 * n + i] = ep[i];
      }
      affine_add(R, std::move(key), Rational(0), mi, Rational(-t.coef));
    }
    for (const auto& t : expand_shift(ep, n)) {  // +beta(x;p+q)
      std::vector<int> key(3 * n, 0);
      for (int i = 0; i < n; ++i) {
        key[i] = ex[i];
        key[n + i] = t.ev[i];
        key[2 * n + i] = t.ew[i];
      }
      affine_add(R, std::move(key), Rational(0), mi, Rational(t.coef));
    }
  }
  for (const auto& [e, c] : difference.terms()) affine_add(R, e, c, 0, Rational(0));

  // terms with x-dependence must vanish identically; pure (p,q) terms only
  // need to be integer-valued on the lattice
  std::vector<Row> exact_rows;
  std::vector<std::pair<std::vector<int>, AffineCoeff>> pure;
  for (const auto& [key, ac] : R) {
    if (ac.c0 == 0 && ac.lin.empty()) continue;
    int xdeg = 0;
    for (int i = 0; i < n; ++i) xdeg += key[i];
    if (xdeg > 0) {
      Row row(M + 1, Rational(0));
      for (const auto& [mi, v] : ac.lin) row[mi] = v;
      row[M] = -ac.c0;
      exact_rows.push_back(std::move(row));
    } else {
      pure.emplace_back(key, ac);
    }
  }

  auto gs = gauss_solve(std::move(exact_rows), M);
  if (!gs) {
    res.failure_reason = "no polynomial trivializer: the x-dependent part of the system is inconsistent";
    res.residual = 1.0;
    return res;
  }
  const auto& p0 = gs->particular;
  const auto& nullb = gs->nullspace;
  const int k = static_cast<int>(nullb.size());

  // pure residual rewritten in the binomial basis over (p, q)
  std::map<std::vector<int>, std::pair<Rational, std::vector<Rational>>> binrows;
  for (const auto& [key, ac] : pure) {
    Rational base = ac.c0;
    for (const auto& [mi, v] : ac.lin) base += v * p0[mi];
    std::vector<Rational> tvec(k, Rational(0));
    for (const auto& [mi, v] : ac.lin)
      for (int j = 0; j < k; ++j) tvec[j] += v * nullb[j][mi];
    std::vector<std::pair<std::vector<int>, Rational>> terms{{{}, Rational(1)}};
    for (int vi = 0; vi < 2 * n; ++vi) {
      const auto tb = mono_to_binom_1d(key[n + vi]);
      std::vector<std::pair<std::vector<int>, Rational>> next;
      for (const auto& [idx, c] : terms)
        for (const auto& [j, cf] : tb) {
          auto idx2 = idx;
          idx2.push_back(j);
          next.emplace_back(std::move(idx2), c * cf);
        }
      terms = std::move(next);
    }
    for (const auto& [idx, cf] : terms) {
      auto& row = binrows[idx];
      if (row.second.empty()) row.second.assign(k, Rational(0));
      row.first += cf * base;
      for (int j = 0; j < k; ++j) row.second[j] += cf * tvec[j];
    }
  }

  std::vector<Rational> c0v;
  std::vector<std::vector<Rational>> C;  // N x k
  for (const auto& [idx, row] : binrows) {
    c0v.push_back(row.first);
    C.push_back(row.second);
  }
  const int N = static_cast<int>(c0v.size());

  // left nullspace of C: v with v^T C = 0; along those directions the
  // residual cannot be moved, so K c0 must already be integral
  std::vector<Row> CT(k, Row(N + 1, Rational(0)));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < N; ++i) CT[j][i] = C[i][j];
  auto gs2 = gauss_solve(std::move(CT), N);
  std::vector<std::vector<BigInt>> Kint;
  for (const auto& v : gs2->nullspace) {
    BigInt den = 1;
    for (const auto& e : v) {
      const BigInt d = boost::multiprecision::denominator(e);
      den = den / boost::multiprecision::gcd(den, d) * d;
    }
    std::vector<BigInt> iv;
    iv.reserve(v.size());
    for (const auto& e : v) {
      const Rational scaled = e * Rational(den);
      iv.push_back(boost::multiprecision::numerator(scaled));
    }
    Kint.push_back(std::move(iv));
  }
  std::vector<BigInt> b;
  for (const auto& v : Kint) {
    Rational s(0);
    for (int i = 0; i < N; ++i) s += Rational(v[i]) * c0v[i];
    if (!scalar_traits<Rational>::is_integer(s)) {
      res.failure_reason = "obstructed: residual has a non-integer invariant component on the lattice";
      res.residual = scalar_traits<Rational>::to_double(scalar_traits<Rational>::mod1(s));
      return res;
    }
    b.push_back(boost::multiprecision::numerator(s));
  }
  auto z = int_solve(Kint, b);
  if (!z) {
    res.failure_reason = "obstructed: no integer choice of lattice residual is reachable";
    res.residual = 1.0;
    return res;
  }
  // z currently indexes the constraints that appeared in Kint's row space;
  // recover target integers per binomial row by solving C t = z_full - c0
  std::vector<Rational> rhs(N);
  {
    // z has one entry per column of Kint (length N) when Kint nonempty,
    // otherwise every row is free and the target integer is round(c0)
    std::vector<BigInt> zi(N, 0);
    if (!Kint.empty()) {
      zi = *z;
    } else {
      for (int i = 0; i < N; ++i) zi[i] = scalar_traits<Rational>::floor(c0v[i]);
    }
    for (int i = 0; i < N; ++i) rhs[i] = Rational(zi[i]) - c0v[i];
  }
  std::vector<Row> Crows(N, Row(k + 1, Rational(0)));
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < k; ++j) Crows[i][j] = C[i][j];
    Crows[i][k] = rhs[i];
  }
  auto gs3 = gauss_solve(std::move(Crows), k);
  if (!gs3) {
    res.failure_reason = "obstructed: lattice residual target unreachable in the ansatz family";
    res.residual = 1.0;
    return res;
  }
  const auto& t = gs3->particular;

  Polynomial beta(2 * n);
  for (int mi = 0; mi < M; ++mi) {
    Rational c = p0[mi];
    for (int j = 0; j < k; ++j) c += nullb[j][mi] * t[j];
    if (c != 0) beta.add_term(monos[mi], c);
  }
  res.found = true;
  res.beta = std::move(beta);
  return res;
}

EquivalenceResult cocycle_equivalence(const GroupCochain<Rational>& C1,
                                      const GroupCochain<Rational>& C2,
                                      int ansatz_degree) {
  if (C1.degree() != 2 || C2.degree() != 2)
    throw std::invalid_argument("cocycle_equivalence: degree-2 cochains required");
  if (C1.dim() != C2.dim())
    throw DimensionMismatch("cocycle_equivalence: dimension mismatch");
  if (!C1.exponent_poly() || !C2.exponent_poly())
    throw std::invalid_argument("cocycle_equivalence: closed-form exponents required");
  const int n = C1.dim();
  Polynomial D = *C1.exponent_poly() - *C2.exponent_poly();
  if (D.total_degree() > ansatz_degree)
    throw std::invalid_argument("cocycle_equivalence: exponent degree exceeds the ansatz");

  EquivalenceResult res = solve_equivalence_poly(n, D, ansatz_degree);
  if (!res.found) return res;

  // independent check: D - delta beta integer on random lattice samples
  RationalSampler sampler(7);
  for (int s = 0; s < 100; ++s) {
    const auto x = sampler.rational_vector(n);
    const auto p = sampler.lattice_vector(n);
    const auto q = sampler.lattice_vector(n);
    std::vector<Rational> all(x);
    all.insert(all.end(), p.begin(), p.end());
    all.insert(all.end(), q.begin(), q.end());
    const Rational r = D.eval(all) - coboundary1_eval(n, res.beta, x, p, q);
    if (!scalar_traits<Rational>::is_integer(r)) {
      res.found = false;
      res.failure_reason = "internal check failed: solved trivializer leaves a fractional residual";
      res.residual = scalar_traits<Rational>::to_double(scalar_traits<Rational>::mod1(r));
      return res;
    }
  }
  return res;
}

}  // namespace magtrans
