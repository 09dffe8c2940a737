#pragma once

// Exact canonical labeling for small vertex-colored multidigraphs with
// labeled edges: color refinement plus individualize-and-refine, taking the
// lexicographically minimal certificate. All state spaces in the analysis
// are deduplicated through this (concrete configurations, ideal
// configurations, nested object graphs), so it must be exact, not a hash.

#include <cstdint>
#include <string>
#include <vector>

namespace dpi {

struct CanonGraph {
  int n = 0;
  std::vector<uint64_t> color;  // initial node colors
  std::vector<std::vector<std::pair<uint32_t, int>>> out;  // (label, dst)
};

struct CanonResult {
  std::vector<int> order;     // order[new_index] = old_index
  std::vector<int> position;  // position[old_index] = new_index
  std::string certificate;    // canonical serialization
};

CanonResult canonicalize(const CanonGraph& g);

}  // namespace dpi
