#include "dpi/canonical.hpp"

#include <algorithm>
#include <map>

#include "dpi/diag.hpp"

namespace dpi {

namespace {

struct Canon {
  const CanonGraph& g;
  std::vector<std::vector<std::pair<uint32_t, int>>> in;  // reverse edges

  explicit Canon(const CanonGraph& gg) : g(gg), in(gg.n) {
    for (int v = 0; v < g.n; v++)
      for (auto& [lbl, w] : g.out[v]) in[w].push_back({lbl, v});
  }

  // Refine colors to the coarsest stable partition; colors are dense ranks
  // ordered by signature, so refinement is canonical.
  void refine(std::vector<int>& col) const {
    using Sig = std::tuple<int, std::vector<std::pair<uint32_t, int>>,
                           std::vector<std::pair<uint32_t, int>>>;
    for (;;) {
      std::vector<Sig> sig(g.n);
      for (int v = 0; v < g.n; v++) {
        std::vector<std::pair<uint32_t, int>> o, i;
        o.reserve(g.out[v].size());
        for (auto& [lbl, w] : g.out[v]) o.push_back({lbl, col[w]});
        for (auto& [lbl, w] : in[v]) i.push_back({lbl, col[w]});
        std::sort(o.begin(), o.end());
        std::sort(i.begin(), i.end());
        sig[v] = {col[v], std::move(o), std::move(i)};
      }
      std::map<Sig, int> rank;
      for (auto& s : sig) rank.emplace(s, 0);
      int r = 0;
      for (auto& [s, v] : rank) v = r++;
      std::vector<int> ncol(g.n);
      for (int v = 0; v < g.n; v++) ncol[v] = rank[sig[v]];
      if (ncol == col) return;
      col = std::move(ncol);
    }
  }

  bool discrete(const std::vector<int>& col) const {
    std::vector<char> seen(g.n, 0);
    for (int c : col) {
      if (c >= g.n || seen[c]) return false;
      seen[c] = 1;
    }
    return true;
  }

  std::string certificate_for(const std::vector<int>& col) const {
    // col is a bijection node -> position.
    std::vector<int> order(g.n);
    for (int v = 0; v < g.n; v++) order[col[v]] = v;
    std::string cert;
    cert.reserve(g.n * 16);
    auto put = [&cert](uint64_t x) {
      for (int k = 0; k < 8; k++) cert.push_back((char)((x >> (8 * k)) & 0xff));
    };
    for (int p = 0; p < g.n; p++) {
      int v = order[p];
      put(g.color[v]);
      std::vector<std::pair<uint32_t, int>> es;
      for (auto& [lbl, w] : g.out[v]) es.push_back({lbl, col[w]});
      std::sort(es.begin(), es.end());
      put(es.size());
      for (auto& [lbl, w] : es) {
        put(lbl);
        put((uint64_t)w);
      }
    }
    return cert;
  }

  void search(std::vector<int> col, std::string& best,
              std::vector<int>& best_col) const {
    refine(col);
    if (discrete(col)) {
      std::string cert = certificate_for(col);
      if (best.empty() || cert < best) {
        best = std::move(cert);
        best_col = std::move(col);
      }
      return;
    }
    // Smallest non-singleton cell with the smallest color.
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < g.n; v++) cells[col[v]].push_back(v);
    const std::vector<int>* target = nullptr;
    size_t best_size = SIZE_MAX;
    for (auto& [c, vs] : cells) {
      if (vs.size() > 1 && vs.size() < best_size) {
        best_size = vs.size();
        target = &vs;
      }
    }
    DPI_CHECK(target, "refinement said non-discrete but no splittable cell");
    for (int v : *target) {
      std::vector<int> col2 = col;
      for (int w = 0; w < g.n; w++)
        col2[w] = col[w] * 2 + 1;  // make room below every class
      col2[v] = col[v] * 2;       // individualized: unique smaller color
      search(std::move(col2), best, best_col);
    }
  }
};

}  // namespace

CanonResult canonicalize(const CanonGraph& g) {
  DPI_CHECK(g.n <= 512, "graph too large to canonicalize: " << g.n);
  Canon c(g);
  // Dense initial colors from the raw colors.
  std::map<uint64_t, int> rank;
  for (auto x : g.color) rank.emplace(x, 0);
  int r = 0;
  for (auto& [x, v] : rank) v = r++;
  std::vector<int> col(g.n);
  for (int v = 0; v < g.n; v++) col[v] = rank[g.color[v]];

  std::string best;
  std::vector<int> best_col;
  if (g.n == 0) {
    return {{}, {}, {}};
  }
  c.search(std::move(col), best, best_col);

  CanonResult res;
  res.certificate = std::move(best);  // embeds raw colors, collision-free
  res.order.resize(g.n);
  res.position = best_col;
  for (int v = 0; v < g.n; v++) res.order[best_col[v]] = v;
  return res;
}

}  // namespace dpi
