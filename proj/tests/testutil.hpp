#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "dpi/ast.hpp"

namespace dpi::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string package_path(const std::string& name) {
  return std::string(DPI_PACKAGE_DIR) + "/" + name;
}

inline std::string viewer_label_src() {
  return read_file(package_path("viewer_label.pkg"));
}
inline std::string set_iterator_src() {
  return read_file(package_path("set_iterator.pkg"));
}
inline std::string jdbc_src() { return read_file(package_path("jdbc.pkg")); }

// Deterministic xorshift generator for property tests.
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed = 0x9e3779b97f4a7c15ull) : s(seed) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int range(int lo, int hi) {  // inclusive
    return lo + (int)(next() % (uint64_t)(hi - lo + 1));
  }
  bool coin() { return next() & 1; }
};

}  // namespace dpi::testing
