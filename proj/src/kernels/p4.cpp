#include "zm/common.hpp"
#include "zm/kernels.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>

namespace zm {

P4Coefficients P4Coefficients::defaults() {
  P4Coefficients c;
  c.a4 = 1.0 / (2.0 * kPi * kPi);
  c.a3 = 2.0 * (4.0 * kEulerGamma - 1.0 - std::log(kTwoPi) - 12.0 * kZetaPrime2 / (kPi * kPi)) / (kPi * kPi);
  return c;
}

double p4_eval(const P4Coefficients& c, double x) {
  return (((c.a4 * x + c.a3) * x + c.a2) * x + c.a1) * x + c.a0;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

P4Coefficients load_p4_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open P4 config " + path.string());
  P4Coefficients c = P4Coefficients::defaults();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (eq == std::string_view::npos) throw ValidationError(where + ": expected key = value");
    const std::string_view key = trim(s.substr(0, eq));
    const std::string_view val = trim(s.substr(eq + 1));
    double v = 0;
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size() || !std::isfinite(v))
      throw ValidationError(where + ": bad number '" + std::string(val) + "'");
    if (key == "a0") c.a0 = v;
    else if (key == "a1") c.a1 = v;
    else if (key == "a2") c.a2 = v;
    else if (key == "a3") c.a3 = v;
    else if (key == "a4") c.a4 = v;
    else throw ValidationError(where + ": unknown key '" + std::string(key) + "'");
  }
  return c;
}

}  // namespace zm
