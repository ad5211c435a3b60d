// Timing harness for the two kernels with serial reference implementations:
// dense series multiplication and the trace point-count sweep.  The parallel
// variants must return bit-identical results, so each row asserts equality
// before reporting times.  On a single-core host the interesting output is
// the overhead column, not a speedup.

#include <qmf/ellcurve.hpp>
#include <qmf/forms.hpp>
#include <qmf/series.hpp>

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

using namespace qmf;

namespace {

double seconds_of(const std::function<void()>& fn, int reps) {
  double best = 1e100;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt < best) best = dt;
  }
  return best;
}

RatSeries random_series(std::mt19937& rng, long prec) {
  std::uniform_int_distribution<long> num(-99, 99);
  std::uniform_int_distribution<long> den(1, 24);
  std::vector<Rat> coeffs;
  coeffs.reserve(static_cast<size_t>(prec));
  for (long i = 0; i < prec; ++i) {
    Rat r(num(rng), den(rng));
    r.canonicalize();
    coeffs.push_back(r);
  }
  return RatSeries::from_coeffs(0, std::move(coeffs), prec);
}

bool bench_mul(long prec) {
  std::mt19937 rng(static_cast<unsigned>(1000 + prec));
  RatSeries a = random_series(rng, prec);
  RatSeries b = random_series(rng, prec);
  RatSeries rs, rp;
  double ts = seconds_of([&] { rs = a.mul_serial(b); }, 3);
  double tp = seconds_of([&] { rp = a.mul_parallel(b); }, 3);
  bool same = rs == rp;
  std::printf("  mul        prec %5ld   serial %8.4fs   parallel %8.4fs   x%.2f   %s\n", prec,
              ts, tp, tp > 0 ? ts / tp : 0.0, same ? "identical" : "MISMATCH");
  return same;
}

bool bench_ap(const char* tag, long p) {
  Curve E = curve_report(tag).minimal;
  long as = 0, ap = 0;
  double ts = seconds_of([&] { as = ap_trace_serial(E, p); }, 3);
  double tp = seconds_of([&] { ap = ap_trace_parallel(E, p); }, 3);
  bool same = as == ap;
  std::printf("  ap %-7s p %7ld    serial %8.4fs   parallel %8.4fs   x%.2f   %s\n", tag, p, ts,
              tp, tp > 0 ? ts / tp : 0.0, same ? "identical" : "MISMATCH");
  return same;
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", omp_get_max_threads());
  bool ok = true;

  std::printf("dense rational series product, serial reference vs OpenMP kernel\n");
  for (long prec : {200L, 400L, 800L}) ok = bench_mul(prec) && ok;

  std::printf("point-count trace sweep, serial reference vs OpenMP kernel\n");
  ok = bench_ap("G0.1", 49999) && ok;
  ok = bench_ap("G0.11", 99991) && ok;
  ok = bench_ap("G0.14", 99991) && ok;

  // One end-to-end expansion for context: the auto-dispatching product is the
  // inner loop of every form construction.
  double te = seconds_of([] { (void)delta_form(1, 600); }, 1);
  std::printf("context: delta_form(1, 600) in %.4fs via the dispatching product\n", te);

  if (!ok) {
    std::printf("kernel mismatch detected\n");
    return 1;
  }
  std::printf("all kernel pairs identical\n");
  return 0;
}
