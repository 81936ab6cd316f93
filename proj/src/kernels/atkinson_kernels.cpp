#include "zm/common.hpp"
#include "zm/kernels.hpp"

#include <cmath>

namespace zm {

double arsinh(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return x * (1.0 - x2 / 6.0 + 3.0 * x2 * x2 / 40.0);
  }
  // log(x + sqrt(1 + x^2)) with the 1 split off so log1p sees the small part.
  const double r = std::sqrt(1.0 + ax * ax);
  const double v = std::log1p(ax + ax * ax / (1.0 + r));
  return x < 0 ? -v : v;
}

double atkinson_f(double T, double n) {
  require(T > 0 && n >= 1, "atkinson_f requires T > 0 and n >= 1");
  const double x = std::sqrt(kPi * n / (2.0 * T));
  return 2.0 * T * arsinh(x) + std::sqrt(2.0 * kPi * n * T + kPi * kPi * n * n) - 0.25 * kPi;
}

double atkinson_e(double T, double n) {
  require(T > 0 && n >= 1, "atkinson_e requires T > 0 and n >= 1");
  const double x2 = kPi * n / (2.0 * T);
  const double x = std::sqrt(x2);
  return std::pow(1.0 + x2, -0.25) * (x / arsinh(x));
}

double atkinson_nprime(double T, double N) {
  require(T > 0 && N > 0, "atkinson_nprime requires T > 0 and N > 0");
  // a - b with a^2 - b^2 = (T / 2pi)^2, rewritten to avoid cancellation.
  const double a = T / kTwoPi + 0.5 * N;
  const double b = std::sqrt(0.25 * N * N + N * T / kTwoPi);
  const double q = T / kTwoPi;
  return q * q / (a + b);
}

std::complex<double> gaussian_integral(std::complex<double> A, std::complex<double> B) {
  require(B.real() > 0, "gaussian_integral requires Re(B) > 0");
  return std::sqrt(kPi / B) * std::exp(A * A / (4.0 * B));
}

}  // namespace zm
