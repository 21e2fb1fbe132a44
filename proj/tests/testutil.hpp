#ifndef SENDOV9_TESTUTIL_HPP
#define SENDOV9_TESTUTIL_HPP

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "sendov9/interval.hpp"
#include "sendov9/rational.hpp"

namespace testutil {

/// "d.ddd...e±XX" -> exact rational (for containment checks against the
/// 50-digit oracle strings).
inline sendov::Rational rational_sci(const std::string& s) {
  auto epos = s.find_first_of("eE");
  std::string mantissa = (epos == std::string::npos) ? s : s.substr(0, epos);
  long exp10 = (epos == std::string::npos) ? 0 : std::stol(s.substr(epos + 1));
  sendov::Rational m = sendov::Rational::from_string(mantissa);
  sendov::Rational scale(1);
  for (long i = 0; i < (exp10 < 0 ? -exp10 : exp10); ++i)
    scale = scale * sendov::Rational(10);
  return exp10 >= 0 ? m * scale : m / scale;
}

/// The enclosure must contain the exact decimal value (oracle-pinned).
inline bool contains_value(const sendov::Interval& enc, const std::string& sci) {
  sendov::Rational v = rational_sci(sci);
  return v.cmp(enc.lo) >= 0 && v.cmp(enc.hi) <= 0;
}

inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string source_path(const std::string& rel) {
  return std::string(SENDOV9_SOURCE_DIR) + "/" + rel;
}

}  // namespace testutil

#endif
