#include "zm/common.hpp"
#include "zm/kernels.hpp"

#include <string>

namespace zm {

// Linear sieve: every composite is visited once, from its smallest prime
// factor p. e[n] is the exponent of p in n, so d(n p) = d(n) (e+2)/(e+1)
// when p | n and d(n) * 2 otherwise.
DivisorTable::DivisorTable(std::uint64_t limit) : limit_(limit) {
  require(limit >= 1, "divisor table limit must be >= 1");
  values_.assign(limit + 1, 0);
  std::vector<std::uint8_t> exponent(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  values_[1] = 1;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (values_[n] == 0) {
      values_[n] = 2;
      exponent[n] = 1;
      primes.push_back(static_cast<std::uint32_t>(n));
    }
    for (const std::uint32_t p : primes) {
      const std::uint64_t m = n * p;
      if (m > limit) break;
      if (n % p == 0) {
        const unsigned e = exponent[n];
        values_[m] = values_[n] / (e + 1) * (e + 2);
        exponent[m] = static_cast<std::uint8_t>(e + 1);
        break;
      }
      values_[m] = values_[n] * 2;
      exponent[m] = 1;
    }
  }
}

std::uint32_t DivisorTable::at(std::uint64_t n) const {
  if (n < 1 || n > limit_)
    throw ValidationError("divisor table index " + std::to_string(n) + " outside [1, " +
                          std::to_string(limit_) + "]");
  return values_[n];
}

DivisorTable build_divisor_table(std::uint64_t limit) { return DivisorTable(limit); }

}  // namespace zm
