#include "magtrans/suites.hpp"

#include "magtrans/cochain.hpp"
#include "magtrans/equivalence.hpp"
#include "magtrans/fock.hpp"
#include "magtrans/geometry.hpp"
#include "magtrans/spectral.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace magtrans {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(const Rational& v) { return v.str(); }

struct Recorder {
  std::vector<CheckRecord>& out;

  void add(const std::string& name, bool passed, const std::string& measured,
           const std::string& expected, const std::string& kind,
           Clock::time_point t0) {
    out.push_back({name, passed, measured, expected, kind, seconds_since(t0)});
  }
};

AntisymTensor3<double> tensor_to_double(const AntisymTensor3<Rational>& a) {
  AntisymTensor3<double> t(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j)
      for (int k = j + 1; k < a.dim(); ++k)
        t.set_antisym(i, j, k, scalar_traits<Rational>::to_double(a(i, j, k)));
  return t;
}

bool tensor_is_integer(const AntisymTensor3<Rational>& a) {
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j)
      for (int k = j + 1; k < a.dim(); ++k)
        if (!scalar_traits<Rational>::is_integer(a(i, j, k))) return false;
  return true;
}

bool omega_is_integer(const TwoForm<Rational>& w) {
  for (int i = 0; i < w.dim(); ++i)
    for (int j = i + 1; j < w.dim(); ++j)
      if (!scalar_traits<Rational>::is_integer(w(i, j))) return false;
  return true;
}

RVec sample_rvec(RationalSampler& s, int n) { return RVec(s.rational_vector(n)); }
RVec sample_lattice(RationalSampler& s, int n) { return RVec(s.lattice_vector(n)); }

// ---------------------------------------------------------------- cocycle --

void suite_cocycle(const SuiteConfig& cfg, Recorder& rec) {
  auto t0 = Clock::now();
  const auto c = magnetic_3cocycle(cfg.tensor);
  const auto rep = verify_cocycle(c, cfg.samples, cfg.seed);
  rec.add("3-cocycle identity, exact coboundary", rep.passed,
          fmt(rep.worst_deviation), "0", "exact", t0);

  if (tensor_is_integer(cfg.tensor)) {
    t0 = Clock::now();
    RationalSampler s(cfg.seed + 1);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const auto v = c({sample_lattice(s, cfg.n), sample_lattice(s, cfg.n),
                        sample_lattice(s, cfg.n)});
      if (!v.is_trivial()) {
        ok = false;
        worst = std::max(worst, scalar_traits<Rational>::to_double(
                                    RPhase::circle_distance(v, RPhase())));
      }
    }
    rec.add("lattice integrality of the 3-cocycle", ok, fmt(worst), "0", "exact",
            t0);
  }

  if (cfg.perturb) {
    t0 = Clock::now();
    // corrupted exponent x1^2 y1 breaks the identity; this record must fail
    GroupCochain<Rational> bad(
        3, cfg.n, CoeffMode::Constant,
        [a = cfg.tensor](const RVec&, const std::vector<RVec>& v) {
          return phase_of(triple_eval(a, v[0], v[1], v[2]) + v[0][0] * v[0][0] * v[1][0]);
        });
    const auto brep = verify_cocycle(bad, std::min(cfg.samples, 50), cfg.seed);
    rec.add("deliberate exponent perturbation", brep.passed,
            fmt(brep.worst_deviation), "0", "exact", t0);
  }
}

// --------------------------------------------------------------- groupoid --

void suite_groupoid(const SuiteConfig& cfg, Recorder& rec) {
  auto t0 = Clock::now();
  const auto c = magnetic_3cocycle(cfg.tensor);
  const auto b = groupoid_potential(cfg.tensor);
  const auto db = group_coboundary(b);
  RationalSampler s(cfg.seed);
  bool ok = true;
  for (int i = 0; i < cfg.samples; ++i) {
    const auto u = sample_rvec(s, cfg.n);
    const std::vector<RVec> args{sample_rvec(s, cfg.n), sample_rvec(s, cfg.n),
                                 sample_rvec(s, cfg.n)};
    if (!(db(u, args) == c(args))) ok = false;
  }
  rec.add("groupoid trivialization: delta b equals c", ok, ok ? "equal" : "differs",
          "equal", "exact", t0);

  t0 = Clock::now();
  const auto ddb = verify_cocycle(db, std::max(50, cfg.samples / 5), cfg.seed + 2);
  rec.add("delta of delta b is the identity phase", ddb.passed,
          fmt(ddb.worst_deviation), "0", "exact", t0);
}

// ------------------------------------------------------------- loop-chain --

void suite_loop_chain(const SuiteConfig& cfg, Recorder& rec) {
  auto t0 = Clock::now();
  RationalSampler s(cfg.seed);
  bool ok = true;
  for (int i = 0; i < cfg.samples; ++i)
    if (!verify_loop_cocycle(sample_rvec(s, cfg.n), sample_rvec(s, cfg.n),
                             sample_rvec(s, cfg.n)))
      ok = false;
  rec.add("loop 2-cocycle identity on reduced chains", ok,
          ok ? "equal" : "differs", "equal", "exact", t0);

  t0 = Clock::now();
  const auto x = sample_rvec(s, cfg.n);
  const bool degen = verify_loop_cocycle(x, sample_rvec(s, cfg.n), RVec::zero(cfg.n));
  rec.add("loop identity with a degenerate edge", degen,
          degen ? "equal" : "differs", "equal", "exact", t0);
}

// ---------------------------------------------------------------- simplex --

void suite_simplex(const SuiteConfig& cfg, Recorder& rec) {
  auto t0 = Clock::now();
  RationalSampler s(cfg.seed);
  const auto c = magnetic_3cocycle(cfg.tensor);
  bool ok = true;
  for (int i = 0; i < cfg.samples; ++i) {
    const auto x = sample_rvec(s, cfg.n), y = sample_rvec(s, cfg.n),
               z = sample_rvec(s, cfg.n);
    if (!(tetra_phase(cfg.tensor, x, y, z) == c({x, y, z}))) ok = false;
  }
  rec.add("tetrahedron phase equals the 3-cocycle", ok, ok ? "equal" : "differs",
          "equal", "exact", t0);

  if (cfg.n == 3) {
    t0 = Clock::now();
    const auto ad = tensor_to_double(cfg.tensor);
    int excursions = 0;
    double worst_sigma = 0.0;
    for (int i = 0; i < 20; ++i) {
      Tetrahedron<double> V{
          DVec({s.rational().convert_to<double>(), s.rational().convert_to<double>(),
                s.rational().convert_to<double>()}),
          DVec({s.rational().convert_to<double>(), s.rational().convert_to<double>(),
                s.rational().convert_to<double>()}),
          DVec({s.rational().convert_to<double>(), s.rational().convert_to<double>(),
                s.rational().convert_to<double>()})};
      const double exact = integrate_omega_tet(ad, V);
      const auto est = mc_integrate_omega_tet(ad, V, 1000000, cfg.seed + i);
      const double err = std::abs(est.value - exact);
      const double band = std::max(3.0 * est.std_error, 1e-9);
      if (err > band) ++excursions;
      if (est.std_error > 0)
        worst_sigma = std::max(worst_sigma, err / est.std_error);
    }
    // 20 independent 3-sigma tests overshoot about once in twenty runs, so
    // one excursion is tolerated as long as it stays well inside 5 sigma
    const bool mc_ok = excursions == 0 || (excursions == 1 && worst_sigma < 5.0);
    rec.add("Monte-Carlo simplex integration within 3 sigma", mc_ok,
            fmt(worst_sigma) + " sigma, " + std::to_string(excursions) +
                " excursion(s)",
            "<= 1 trial beyond 3 sigma, none beyond 5", "sampled", t0);
  }
}

// ----------------------------------------------------------------- stokes --

void suite_stokes(const SuiteConfig& cfg, Recorder& rec) {
  auto t0 = Clock::now();
  RationalSampler s(cfg.seed);
  bool ok = true;
  for (int i = 0; i < 100; ++i) {
    const Tetrahedron<Rational> V{sample_rvec(s, cfg.n), sample_rvec(s, cfg.n),
                                  sample_rvec(s, cfg.n)};
    if (stokes_check(cfg.tensor, V) != 0) ok = false;
  }
  rec.add("Stokes balance over tetrahedron faces, exact", ok, ok ? "0" : "nonzero",
          "0", "exact", t0);

  t0 = Clock::now();
  const auto ad = tensor_to_double(cfg.tensor);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto rnd = [&] {
      return DVec({s.rational().convert_to<double>(),
                   s.rational().convert_to<double>(),
                   s.rational().convert_to<double>()});
    };
    if (cfg.n != 3) break;
    const Tetrahedron<double> V{rnd(), rnd(), rnd()};
    worst = std::max(worst, stokes_check(ad, V));
  }
  if (cfg.n == 3)
    rec.add("Stokes balance, float backend", worst <= 1e-12, fmt(worst),
            "<= 1e-12", "exact", t0);

  t0 = Clock::now();
  bool closed = true;
  for (int i = 0; i < 50; ++i) {
    const Tetrahedron<Rational> V{sample_rvec(s, cfg.n), sample_rvec(s, cfg.n),
                                  sample_rvec(s, cfg.n)};
    if (!V.faces().boundary().empty()) closed = false;
  }
  rec.add("face chains close up: empty reduced boundary", closed,
          closed ? "empty" : "nonempty", "empty", "exact", t0);
}

// --------------------------------------------------------------- hs-decay --

LoopFunction triangle_loop_function() {
  return LoopFunction::from_vertices({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}});
}

void suite_hs_decay(const SuiteConfig& cfg, Recorder& rec) {
  const std::vector<long> dists{32, 45, 64, 91, 128, 181, 256, 362, 512, 724, 1024};

  auto t0 = Clock::now();
  const auto tri = triangle_loop_function();
  const auto tri_fit = decay_fit(tri, 0, dists);
  rec.add("closed PL loop off-diagonal decay exponent",
          tri_fit.slope >= -2.4 && tri_fit.slope <= -1.6, fmt(tri_fit.slope),
          "[-2.4, -1.6]", "fitted", t0);

  t0 = Clock::now();
  std::vector<double> sums;
  for (long g : cfg.cutoffs) sums.push_back(hs_partial_sum(tri, 0, g));
  bool monotone = true;
  for (std::size_t i = 2; i < sums.size(); ++i) {
    if (cfg.cutoffs[i - 1] < 128) continue;
    if (sums[i] - sums[i - 1] >= sums[i - 1] - sums[i - 2]) monotone = false;
  }
  rec.add("closed-loop partial sums: shrinking increments", monotone,
          monotone ? "decreasing" : "not decreasing", "decreasing", "sampled", t0);

  t0 = Clock::now();
  const auto open = LoopFunction::linear(1, 0, cfg.loop_v);
  const auto open_fit = decay_fit(open, 0, dists);
  rec.add("open path off-diagonal decay exponent",
          open_fit.slope >= -1.3 && open_fit.slope <= -0.8, fmt(open_fit.slope),
          "[-1.3, -0.8]", "fitted", t0);

  t0 = Clock::now();
  std::vector<double> gx, gy;
  for (long g : cfg.cutoffs) {
    gx.push_back(static_cast<double>(g));
    gy.push_back(hs_partial_sum(open, 0, g));
  }
  const auto growth = log_fit(gx, gy);
  rec.add("open path: logarithmic growth of partial sums",
          growth.slope > 0 && growth.r_squared > 0.95,
          "slope " + fmt(growth.slope) + ", R2 " + fmt(growth.r_squared),
          "slope > 0, R2 > 0.95", "fitted", t0);
}

// ---------------------------------------------------------------- luscher --

void suite_luscher(const SuiteConfig& cfg, Recorder& rec) {
  auto t0 = Clock::now();
  double worst = 0.0;
  bool values_ok = true;
  for (int m = -5; m <= 5; ++m)
    for (int k = -5; k <= 5; ++k) {
      const auto f = TrigPolynomial::mode(1, 0, m);
      const auto g = TrigPolynomial::mode(1, 0, k);
      const auto tr = luscher_trace(f, g, 12);
      const auto in = luscher_integral(f, g);
      worst = std::max(worst, std::abs(tr - in));
      const std::complex<double> expect =
          (m + k == 0) ? std::complex<double>(-m, 0.0) : std::complex<double>(0.0, 0.0);
      if (std::abs(tr - expect) > 1e-12) values_ok = false;
    }
  rec.add("trace and integral cocycle forms agree", worst <= 1e-12, fmt(worst),
          "<= 1e-12", "exact", t0);
  rec.add("single-mode values -m on resonant pairs", values_ok,
          values_ok ? "match" : "mismatch", "match", "exact", t0);

  t0 = Clock::now();
  bool stable = true;
  for (int m = 1; m <= 4; ++m) {
    const auto f = TrigPolynomial::mode(1, 0, m);
    const auto g = TrigPolynomial::mode(1, 0, -m);
    const auto a = luscher_trace(f, g, 2 * m);
    const auto b = luscher_trace(f, g, 2 * m + 5);
    if (std::abs(a - b) > 1e-12) stable = false;
  }
  rec.add("trace independent of the window once covered", stable,
          stable ? "stable" : "drifts", "stable", "exact", t0);

  t0 = Clock::now();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  bool antisym = true;
  for (int i = 0; i < 50; ++i) {
    TrigPolynomial f(2), g(2);
    for (int k = 0; k < 2; ++k)
      for (long m = -4; m <= 4; ++m) {
        f.set_coeff(k, m, {U(rng), U(rng)});
        g.set_coeff(k, m, {U(rng), U(rng)});
      }
    if (std::abs(luscher_integral(f, g) + luscher_integral(g, f)) > 1e-12)
      antisym = false;
  }
  rec.add("antisymmetry of the 2-cocycle", antisym, antisym ? "ok" : "broken",
          "ok", "exact", t0);
}

// --------------------------------------------------------------------- b1 --

void suite_b1(const SuiteConfig& cfg, Recorder& rec) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto random_poly = [&](int n) {
    TrigPolynomial f(n);
    for (int k = 0; k < n; ++k)
      for (long m = -4; m <= 4; ++m) f.set_coeff(k, m, {U(rng), U(rng)});
    return f;
  };
  double worst = 0.0, adep = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto A = random_poly(2), X = random_poly(2), Y = random_poly(2);
    const auto d = delta_b1(A, X, Y);
    worst = std::max(worst, std::abs(d - kDeltaB1Sign * luscher_integral(X, Y)));
    adep = std::max(adep, std::abs(d - delta_b1(random_poly(2), X, Y)));
  }
  rec.add("coboundary of b1 reproduces the cocycle (sign -1)", worst <= 1e-12,
          fmt(worst), "<= 1e-12", "exact", t0);
  rec.add("coboundary of b1 independent of the potential", adep <= 1e-12,
          fmt(adep), "<= 1e-12", "exact", t0);

  t0 = Clock::now();
  const auto zero_val = b1_cochain(TrigPolynomial(1), TrigPolynomial::mode(1, 0, 2));
  rec.add("b1 vanishes on the zero potential", std::abs(zero_val) == 0.0,
          fmt(std::abs(zero_val)), "0", "exact", t0);
}

// -------------------------------------------------------------------- car --

void suite_car(const SuiteConfig& cfg, Recorder& rec) {
  auto t0 = Clock::now();
  const int n = std::min(cfg.n, 2);
  const FockSector sector(ModeWindow{-3, 3, n, 1});
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> mode(-3, 3), comp(0, n - 1);
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pairs;
  for (int i = 0; i < 100; ++i)
    pairs.push_back({{mode(rng), comp(rng)}, {mode(rng), comp(rng)}});
  const auto rep = car_check(sector, pairs);
  rec.add("CAR relations, normalization 2<u,v>", rep.passed,
          fmt(rep.max_deviation), "0", "exact", t0);

  t0 = Clock::now();
  bool ladder_ok = true;
  // creator of a filled sea mode and annihilator of an empty mode kill vacuum
  const auto cu = creation(sector, -1, 0);
  const auto av = annihilation(sector, 1, 0);
  ladder_ok &= cu.column(sector.vacuum()).empty();
  ladder_ok &= av.column(sector.vacuum()).empty();
  rec.add("vacuum killed by sea creators and empty-mode annihilators", ladder_ok,
          ladder_ok ? "annihilated" : "survives", "annihilated", "exact", t0);
}

// ---------------------------------------------------------- shift-compose --

void suite_shift_compose(const SuiteConfig& cfg, Recorder& rec) {
  const int n = std::min(cfg.n, 3);
  const ModeWindow w{cfg.window_low, cfg.window_high, n, cfg.window_margin};
  RationalSampler s(cfg.seed);
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_int_distribution<long> shift(-(cfg.window_margin / 2),
                                            cfg.window_margin / 2);
  auto sample_shift = [&] {
    std::vector<long> p(n);
    for (auto& v : p) v = shift(rng);
    return p;
  };

  auto t0 = Clock::now();
  bool untwisted = true;
  for (int i = 0; i < 20; ++i) {
    TwistedPoint tp{sample_rvec(s, n), TwoForm<Rational>(n)};
    const auto rep = compose_check(sample_shift(), sample_shift(), tp, w);
    if (!rep.passed || !rep.measured.is_trivial()) untwisted = false;
  }
  rec.add("untwisted shifts compose as a representation", untwisted,
          untwisted ? "phase 0" : "nonzero phase", "phase 0", "exact", t0);

  t0 = Clock::now();
  TwoForm<Rational> omega = cfg.omega.dim() == n ? cfg.omega : TwoForm<Rational>(n);
  if (n >= 2 && omega.dim() == n) {
    bool all_zero = true;
    for (int i = 0; i < n && all_zero; ++i)
      for (int j = i + 1; j < n; ++j)
        if (omega(i, j) != 0) all_zero = false;
    if (all_zero) omega.set(0, 1, Rational(1));
  }
  bool twisted = true;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    TwistedPoint tp{sample_rvec(s, n), omega};
    const auto rep = compose_check(sample_shift(), sample_shift(), tp, w);
    if (!rep.passed) twisted = false;
    worst = std::max(worst, rep.max_deviation);
  }
  rec.add("twisted composition phase matches the shift 2-cocycle", twisted,
          fmt(worst), "0", "exact", t0);
}

// ---------------------------------------------------------------- twisted --

void suite_twisted(const SuiteConfig& cfg, Recorder& rec) {
  const int n = std::max(2, std::min(cfg.n, 4));
  TwoForm<Rational> omega = cfg.omega.dim() == n && omega_is_integer(cfg.omega)
                                ? cfg.omega
                                : TwoForm<Rational>(n);
  {
    bool all_zero = true;
    for (int i = 0; i < n && all_zero; ++i)
      for (int j = i + 1; j < n; ++j)
        if (omega(i, j) != 0) all_zero = false;
    if (all_zero) omega.set(0, 1, Rational(1));
  }
  RationalSampler s(cfg.seed);

  auto t0 = Clock::now();
  bool equiv = true;
  for (int i = 0; i < cfg.samples; ++i) {
    TwistedPoint tp{sample_rvec(s, n), omega};
    if (!twisted_equivariance_check(tp, sample_lattice(s, n)).is_trivial())
      equiv = false;
  }
  rec.add("twisted generators equivariant under lattice shifts", equiv,
          equiv ? "phase 0" : "nonzero phase", "phase 0", "exact", t0);

  t0 = Clock::now();
  bool additive = true;
  for (int i = 0; i < cfg.samples; ++i) {
    const auto x = sample_rvec(s, n);
    const auto z1 = sample_lattice(s, n), z2 = sample_lattice(s, n);
    const auto lhs = phase_of(two_form_eval(omega, x, z1)) *
                     phase_of(two_form_eval(omega, x + z1, z2));
    const auto rhs = phase_of(two_form_eval(omega, x, z1 + z2));
    // the defect omega(z1, z2) is an integer for integer omega
    if (!(lhs == rhs)) additive = false;
  }
  rec.add("lattice twist phases compose additively mod 1", additive,
          additive ? "additive" : "defect", "additive", "exact", t0);
}

// ------------------------------------------------------------ equivalence --

void suite_equivalence(const SuiteConfig& cfg, Recorder& rec) {
  if (cfg.n != 3) return;  // the worked example lives at n = 3
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> W(-3, 3), K(-1, 1);

  auto t0 = Clock::now();
  bool solved = true;
  std::string detail;
  for (int trial = 0; trial < 6; ++trial) {
    long w01, w12, w02;
    if (trial == 0) {
      w01 = 3; w12 = 0; w02 = 0;
    } else {
      // alpha = 2(w01 + w12 - w02) must be divisible by 6 for a polynomial
      // trivializer to exist, so w02 is chosen in the right residue class
      w01 = W(rng);
      w12 = W(rng);
      w02 = w01 + w12 - 3 * K(rng);
    }
    TwoForm<Rational> omega(3);
    omega.set(0, 1, Rational(w01));
    omega.set(1, 2, Rational(w12));
    omega.set(0, 2, Rational(w02));
    const Rational alpha = Rational(2 * (w01 + w12 - w02));
    const auto C1 = shift_2cocycle(omega);
    const auto C2 = dd_2cocycle(
        AntisymTensor3<Rational>::epsilon().scaled(alpha / Rational(6)));
    const auto res = cocycle_equivalence(C1, C2);
    if (!res.found) {
      solved = false;
      detail = res.failure_reason;
    }
  }
  rec.add("shift cocycle equivalent to the trilinear cocycle", solved,
          solved ? "trivializer found" : detail, "trivializer found", "exact", t0);

  t0 = Clock::now();
  const auto same = cocycle_equivalence(shift_2cocycle(cfg.omega.dim() == 3
                                                           ? cfg.omega
                                                           : TwoForm<Rational>(3)),
                                        shift_2cocycle(cfg.omega.dim() == 3
                                                           ? cfg.omega
                                                           : TwoForm<Rational>(3)));
  rec.add("identical cochains admit a trivializer", same.found,
          same.found ? "found" : same.failure_reason, "found", "exact", t0);

  t0 = Clock::now();
  GroupCochain<Rational> trivial(
      2, 3, CoeffMode::TranslationModule,
      [](const RVec&, const std::vector<RVec>&) { return RPhase(); },
      /*lattice_args=*/true);
  trivial.set_exponent_poly(Polynomial(9));
  const auto neg =
      cocycle_equivalence(dd_2cocycle(AntisymTensor3<Rational>::epsilon()), trivial);
  rec.add("nontrivial class rejected by the solver", !neg.found,
          neg.found ? "unexpectedly solvable" : "failure reported",
          "failure reported", "exact", t0);
}

using SuiteFn = std::function<void(const SuiteConfig&, Recorder&)>;

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table{
      {"cocycle", suite_cocycle},       {"groupoid", suite_groupoid},
      {"loop-chain", suite_loop_chain}, {"simplex", suite_simplex},
      {"stokes", suite_stokes},         {"hs-decay", suite_hs_decay},
      {"luscher", suite_luscher},       {"b1", suite_b1},
      {"car", suite_car},               {"shift-compose", suite_shift_compose},
      {"twisted", suite_twisted},       {"equivalence", suite_equivalence}};
  return table;
}

Rational parse_rational(const json& v, const std::string& where, bool exact) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      return Rational(s);
    } catch (const std::exception&) {
      throw ConfigError(where + ": cannot parse rational '" + s + "'");
    }
  }
  if (v.is_number_float()) {
    if (exact)
      throw ConfigError(where +
                        ": float value not allowed with the rational backend; "
                        "use an integer or a 'p/q' string");
    return Rational(v.get<double>());
  }
  throw ConfigError(where + ": expected a number or 'p/q' string");
}

}  // namespace

const std::vector<std::string> kSuiteNames{
    "cocycle", "groupoid", "loop-chain", "simplex",       "stokes",  "hs-decay",
    "luscher", "b1",       "car",        "shift-compose", "twisted", "equivalence"};

SuiteConfig parse_config(const json& j) {
  SuiteConfig cfg;
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, val] : j.items()) {
    static const std::vector<std::string> known{
        "n",      "tensor",  "omega",   "window", "cutoffs", "samples", "seed",
        "backend", "tolerance", "perturb", "loop", "loop_v", "out_dir"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("config: unknown field '" + key + "'");
    (void)val;
  }
  if (j.contains("backend")) {
    const auto b = j.at("backend").get<std::string>();
    if (b == "rational")
      cfg.backend = Backend::RationalExact;
    else if (b == "float")
      cfg.backend = Backend::FloatTol;
    else
      throw ConfigError("backend: must be 'rational' or 'float'");
  }
  const bool exact = cfg.backend == Backend::RationalExact;
  if (j.contains("n")) {
    if (!j.at("n").is_number_integer() || j.at("n").get<int>() < 1)
      throw ConfigError("n: positive integer required");
    cfg.n = j.at("n").get<int>();
  }
  cfg.tensor = AntisymTensor3<Rational>::zero(cfg.n);
  cfg.omega = TwoForm<Rational>(cfg.n);
  if (j.contains("tensor")) {
    const auto& t = j.at("tensor");
    if (t.is_string()) {
      const auto name = t.get<std::string>();
      if (name == "epsilon") {
        if (cfg.n != 3) throw ConfigError("tensor: 'epsilon' requires n = 3");
        cfg.tensor = AntisymTensor3<Rational>::epsilon();
      } else if (name == "zero") {
        cfg.tensor = AntisymTensor3<Rational>::zero(cfg.n);
      } else {
        throw ConfigError("tensor: unknown shortcut '" + name + "'");
      }
    } else if (t.is_array()) {
      std::vector<std::tuple<int, int, int, Rational>> entries;
      int idx = 0;
      for (const auto& e : t) {
        const std::string where = "tensor[" + std::to_string(idx) + "]";
        if (!e.is_array() || e.size() != 4)
          throw ConfigError(where + ": expected [i, j, k, value]");
        const int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
        for (int ix : {i, jj, k})
          if (ix < 0 || ix >= cfg.n)
            throw ConfigError(where + ": index " + std::to_string(ix) +
                              " out of range for n = " + std::to_string(cfg.n));
        entries.emplace_back(i, jj, k, parse_rational(e[3], where, exact));
        ++idx;
      }
      cfg.tensor = AntisymTensor3<Rational>::from_entries(cfg.n, entries);
    } else {
      throw ConfigError("tensor: expected a shortcut string or an entry list");
    }
  } else if (cfg.n == 3) {
    cfg.tensor = AntisymTensor3<Rational>::epsilon();
  }
  if (j.contains("omega")) {
    const auto& o = j.at("omega");
    if (!o.is_array()) throw ConfigError("omega: expected an entry list");
    std::vector<std::tuple<int, int, Rational>> entries;
    int idx = 0;
    for (const auto& e : o) {
      const std::string where = "omega[" + std::to_string(idx) + "]";
      if (!e.is_array() || e.size() != 3)
        throw ConfigError(where + ": expected [i, j, value]");
      const int i = e[0].get<int>(), jj = e[1].get<int>();
      for (int ix : {i, jj})
        if (ix < 0 || ix >= cfg.n)
          throw ConfigError(where + ": index " + std::to_string(ix) +
                            " out of range for n = " + std::to_string(cfg.n));
      entries.emplace_back(i, jj, parse_rational(e[2], where, exact));
      ++idx;
    }
    cfg.omega = TwoForm<Rational>::from_entries(cfg.n, entries);
  }
  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (!w.is_object()) throw ConfigError("window: expected an object");
    if (w.contains("low")) cfg.window_low = w.at("low").get<int>();
    if (w.contains("high")) cfg.window_high = w.at("high").get<int>();
    if (w.contains("margin")) cfg.window_margin = w.at("margin").get<int>();
    try {
      ModeWindow{cfg.window_low, cfg.window_high, 1, cfg.window_margin}.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("window: ") + e.what());
    }
  }
  if (j.contains("cutoffs")) {
    cfg.cutoffs.clear();
    for (const auto& c : j.at("cutoffs")) {
      if (!c.is_number_integer() || c.get<long>() < 1)
        throw ConfigError("cutoffs: positive integers required");
      cfg.cutoffs.push_back(c.get<long>());
    }
    if (cfg.cutoffs.size() < 2 ||
        !std::is_sorted(cfg.cutoffs.begin(), cfg.cutoffs.end()))
      throw ConfigError("cutoffs: need an increasing list of >= 2 values");
  }
  if (j.contains("samples")) {
    if (!j.at("samples").is_number_integer() || j.at("samples").get<int>() < 1)
      throw ConfigError("samples: positive integer required");
    cfg.samples = j.at("samples").get<int>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer() || j.at("seed").get<long long>() < 1)
      throw ConfigError("seed: positive integer required");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("tolerance")) {
    cfg.tolerance = j.at("tolerance").get<double>();
    if (cfg.tolerance < 0) throw ConfigError("tolerance: must be >= 0");
  }
  if (j.contains("perturb")) cfg.perturb = j.at("perturb").get<bool>();
  if (j.contains("loop")) {
    cfg.loop = j.at("loop").get<std::string>();
    if (cfg.loop != "triangle" && cfg.loop != "open" && cfg.loop != "zero")
      throw ConfigError("loop: must be 'triangle', 'open' or 'zero'");
  }
  if (j.contains("loop_v")) cfg.loop_v = j.at("loop_v").get<double>();
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  return cfg;
}

SuiteConfig validate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

bool Report::passed() const {
  for (const auto& r : records)
    if (!r.passed) return false;
  return true;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["status"] = passed() ? "pass" : "fail";
  j["runtime_s"] = runtime_s;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json c;
    c["name"] = r.name;
    c["status"] = r.passed ? "pass" : "fail";
    c["measured"] = r.measured;
    c["expected"] = r.expected;
    c["kind"] = r.kind;
    c["runtime_s"] = r.runtime_s;
    j["checks"].push_back(std::move(c));
  }
  return j;
}

Report run_suite(const SuiteConfig& config, const std::string& suite) {
  const auto t0 = Clock::now();
  Report rep;
  rep.suite = suite;
  Recorder rec{rep.records};
  if (suite == "all") {
    for (const auto& name : kSuiteNames) suite_table().at(name)(config, rec);
  } else {
    const auto it = suite_table().find(suite);
    if (it == suite_table().end())
      throw ConfigError("suite: unknown suite '" + suite + "'");
    it->second(config, rec);
  }
  rep.runtime_s = seconds_since(t0);
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    const auto path =
        (std::filesystem::path(config.out_dir) / (suite + "_report.json")).string();
    atomic_write(path, rep.to_json().dump(2) + "\n");
  }
  return rep;
}

void emit_decay_table(const SuiteConfig& config, const std::string& path) {
  LoopFunction l = LoopFunction::zero(1);
  if (config.loop == "triangle")
    l = triangle_loop_function();
  else if (config.loop == "open")
    l = LoopFunction::linear(1, 0, config.loop_v);
  std::ostringstream out;
  out << "gamma,partial_hs_sum,increment,ray_distance,abs_element\n";
  double prev = 0.0;
  bool first = true;
  for (long g : config.cutoffs) {
    const double sum = hs_partial_sum(l, 0, g);
    const double inc = first ? sum : sum - prev;
    first = false;
    prev = sum;
    const double el = std::abs(fourier_element(l, 0, 0, -g));
    out << g << ',' << fmt(sum) << ',' << fmt(inc) << ',' << g << ',' << fmt(el)
        << '\n';
  }
  atomic_write(path, out.str());
}

void atomic_write(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace magtrans
