#pragma once

#include <vector>

#include "qmf/rational.hpp"

namespace qmf {

// Divisors of n in ascending order.
std::vector<long> divisors(long n);

// sigma_k(n) = sum of k-th powers of divisors.
Int sigma(int k, long n);

// Moebius function.
int moebius(long n);

// Legendre symbol (d/7), defined on all integers.
int legendre7(long d);

// sigma_k(m) for 1 <= m < n, index 0 unused (zero).
std::vector<Int> sigma_table(int k, long n);

std::vector<long> primes_up_to(long n);

// Index, weight constant and eta exponent data for Gamma_0(N):
//   mu   = N * prod_{p|N} (1 + 1/p)
//   k    = 12 * sigma_0(N) / mu
//   h    = sigma_1(N) / mu
// N is admissible when k is an even integer and h is an integer; those N get
// an eta product Delta_N = (prod_{d|N} eta(d tau))^{24/mu} with integral
// exponent and valuation h.
struct LevelData {
  long N = 0;
  long mu = 0;
  Rat k;
  Rat h;
  bool admissible = false;
};

LevelData level_data(long N);

std::vector<LevelData> admissible_levels(long bound);

}  // namespace qmf
