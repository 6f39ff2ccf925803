#include "magtrans/geometry.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace magtrans {

int thread_budget() {
  if (const char* env = std::getenv("MAGTRANS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

MonteCarloEstimate mc_integrate_omega_tet(const AntisymTensor3<double>& a,
                                          const Tetrahedron<double>& V,
                                          long samples, std::uint64_t seed) {
  if (a.dim() != 3 || V.x.dim() != 3)
    throw DimensionMismatch("mc_integrate_omega_tet: oracle is n=3 only");
  // edge matrix M = [B-A | C-A | D-A] with A=0, B=x, C=x+y, D=x+y+z
  std::array<std::array<double, 3>, 3> M;
  const auto B = V.vertex(1), C = V.vertex(2), D = V.vertex(3);
  for (int i = 0; i < 3; ++i) {
    M[i][0] = B[i];
    M[i][1] = C[i];
    M[i][2] = D[i];
  }
  const double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                     M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                     M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  MonteCarloEstimate est;
  est.samples = samples;
  if (det == 0.0) return est;
  std::array<std::array<double, 3>, 3> inv;
  const double id = 1.0 / det;
  inv[0][0] = (M[1][1] * M[2][2] - M[1][2] * M[2][1]) * id;
  inv[0][1] = (M[0][2] * M[2][1] - M[0][1] * M[2][2]) * id;
  inv[0][2] = (M[0][1] * M[1][2] - M[0][2] * M[1][1]) * id;
  inv[1][0] = (M[1][2] * M[2][0] - M[1][0] * M[2][2]) * id;
  inv[1][1] = (M[0][0] * M[2][2] - M[0][2] * M[2][0]) * id;
  inv[1][2] = (M[0][2] * M[1][0] - M[0][0] * M[1][2]) * id;
  inv[2][0] = (M[1][0] * M[2][1] - M[1][1] * M[2][0]) * id;
  inv[2][1] = (M[0][1] * M[2][0] - M[0][0] * M[2][1]) * id;
  inv[2][2] = (M[0][0] * M[1][1] - M[0][1] * M[1][0]) * id;

  std::array<double, 3> lo{0.0, 0.0, 0.0}, hi{0.0, 0.0, 0.0};
  for (const auto& vert : {B, C, D})
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], vert[i]);
      hi[i] = std::max(hi[i], vert[i]);
    }
  double vbox = 1.0;
  for (int i = 0; i < 3; ++i) vbox *= hi[i] - lo[i];

  const int threads = std::min<long>(thread_budget(), std::max(1L, samples / 4096));
  std::vector<long> hits(threads, 0);
  auto worker = [&](int t) {
    const long chunk = (samples + threads - 1) / threads;
    const long from = t * chunk;
    const long to = std::min(samples, from + chunk);
    long h = 0;
    for (long s = from; s < to; ++s) {
      std::array<double, 3> P;
      for (int i = 0; i < 3; ++i)
        P[i] = lo[i] + (hi[i] - lo[i]) *
                           uniform01_at(seed, 3 * static_cast<std::uint64_t>(s) + i);
      double sum = 0.0;
      bool inside = true;
      for (int i = 0; i < 3 && inside; ++i) {
        double lam = 0.0;
        for (int j = 0; j < 3; ++j) lam += inv[i][j] * P[j];
        if (lam < 0.0) inside = false;
        sum += lam;
      }
      if (inside && sum <= 1.0) ++h;
    }
    hits[t] = h;
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();

  long total = 0;
  for (long h : hits) total += h;
  const double phat = static_cast<double>(total) / static_cast<double>(samples);
  const double rho = 6.0 * a(0, 1, 2);  // density of Omega against Lebesgue
  const double sgn = det > 0.0 ? 1.0 : -1.0;
  est.value = rho * sgn * phat * vbox;
  est.std_error = std::abs(rho) * vbox *
                  std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
  return est;
}

}  // namespace magtrans
