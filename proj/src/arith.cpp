#include "qmf/arith.hpp"

#include <algorithm>

namespace qmf {

std::vector<long> divisors(long n) {
  if (n <= 0) throw Error("divisors: positive input required");
  std::vector<long> out;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Int sigma(int k, long n) {
  Int s = 0;
  for (long d : divisors(n)) s += int_pow(Int(d), static_cast<unsigned long>(k));
  return s;
}

int moebius(long n) {
  if (n <= 0) throw Error("moebius: positive input required");
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

int legendre7(long d) {
  long r = d % 7;
  if (r < 0) r += 7;
  if (r == 0) return 0;
  // Nonzero squares mod 7: {1, 2, 4}.
  return (r == 1 || r == 2 || r == 4) ? 1 : -1;
}

std::vector<Int> sigma_table(int k, long n) {
  std::vector<Int> tab(static_cast<size_t>(std::max<long>(n, 0)), Int(0));
  for (long d = 1; d < n; ++d) {
    Int dk = int_pow(Int(d), static_cast<unsigned long>(k));
    for (long m = d; m < n; m += d) tab[static_cast<size_t>(m)] += dk;
  }
  return tab;
}

std::vector<long> primes_up_to(long n) {
  std::vector<bool> composite(static_cast<size_t>(std::max<long>(n + 1, 2)), false);
  std::vector<long> out;
  for (long p = 2; p <= n; ++p) {
    if (composite[static_cast<size_t>(p)]) continue;
    out.push_back(p);
    for (long m = p * p; m <= n; m += p) composite[static_cast<size_t>(m)] = true;
  }
  return out;
}

LevelData level_data(long N) {
  if (N <= 0) throw Error("level_data: positive level required");
  LevelData ld;
  ld.N = N;
  long mu = N, rest = N;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    mu = mu / p * (p + 1);
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) mu = mu / rest * (rest + 1);
  ld.mu = mu;
  ld.k = Rat(Int(12 * sigma(0, N)), Int(mu));
  ld.k.canonicalize();
  ld.h = Rat(sigma(1, N), Int(mu));
  ld.h.canonicalize();
  ld.admissible = rat_is_int(ld.k) && rat_is_int(ld.h) && divides(Int(2), Int(ld.k.get_num()));
  return ld;
}

std::vector<LevelData> admissible_levels(long bound) {
  std::vector<LevelData> out;
  for (long N = 1; N <= bound; ++N) {
    LevelData ld = level_data(N);
    if (ld.admissible) out.push_back(ld);
  }
  return out;
}

}  // namespace qmf
