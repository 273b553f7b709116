#include "wsir/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wsir/rng.hpp"

namespace wsir {

namespace detail {

std::vector<std::pair<std::uint32_t, std::uint32_t>> er_edges_pairwise(
    std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return edges;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> er_edges_skip(
    std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(total) * 1.1) + 16);
  const double log1mp = std::log1p(-p);
  // linear pair index walk with geometric gaps between present edges;
  // (i, j) recovered from the index via running row bookkeeping
  std::uint64_t row_start = 0;  // linear index of pair (i, i+1)
  std::uint32_t i = 0;
  std::uint64_t row_len = n - 1;
  double next = -1.0;
  while (true) {
    const double gap =
        std::floor(std::log(rng.uniform_pos()) / log1mp);  // >= 0
    if (next + 1.0 + gap >= static_cast<double>(total)) break;
    next += 1.0 + gap;
    const std::uint64_t k = static_cast<std::uint64_t>(next);
    while (k >= row_start + row_len) {
      row_start += row_len;
      --row_len;
      ++i;
    }
    const std::uint32_t j = static_cast<std::uint32_t>(i + 1 + (k - row_start));
    edges.emplace_back(i, j);
  }
  return edges;
}

}  // namespace detail

Graph Graph::build(std::size_t n,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                   double recorded_p) {
  Graph g;
  g.n_ = n;
  g.p_ = recorded_p;
  g.edge_count_ = edges.size();
  g.offsets_.assign(n + 1, 0);
  for (const auto& [i, j] : edges) {
    if (i >= n || j >= n || i == j)
      throw std::invalid_argument("bad edge in graph construction");
    ++g.offsets_[i + 1];
    ++g.offsets_[j + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.adj_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [i, j] : edges) {
    g.adj_[cursor[i]++] = j;
    g.adj_[cursor[j]++] = i;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto b = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto e = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(b, e);
    if (std::adjacent_find(b, e) != e)
      throw std::invalid_argument("duplicate edge in graph construction");
  }
  return g;
}

Graph Graph::erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("erdos_renyi requires n >= 1");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("erdos_renyi requires p in (0,1)");
  auto edges = (n <= 20000) ? detail::er_edges_pairwise(n, p, seed)
                            : detail::er_edges_skip(n, p, seed);
  return build(n, std::move(edges), p);
}

Graph Graph::complete(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return build(n, std::move(edges), 1.0);
}

Graph Graph::from_edges(
    std::size_t n,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
    double recorded_p) {
  return build(n, {edges.begin(), edges.end()}, recorded_p);
}

bool Graph::adjacent(std::uint32_t i, std::uint32_t j) const {
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

void Graph::save_edge_list(std::ostream& os) const {
  os << n_ << ' ' << edge_count_ << '\n';
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j : neighbors(i))
      if (i < j) os << i << ' ' << j << '\n';
}

Graph Graph::load_edge_list(std::istream& is, double recorded_p) {
  std::size_t n = 0, m = 0;
  if (!(is >> n >> m)) throw std::runtime_error("edge list: bad header");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::uint32_t i, j;
    if (!(is >> i >> j))
      throw std::runtime_error("edge list: truncated at edge " +
                               std::to_string(k));
    if (!(i < j)) throw std::runtime_error("edge list: requires i < j");
    edges.emplace_back(i, j);
  }
  return build(n, std::move(edges), recorded_p);
}

std::size_t cross_edges(const Graph& g, std::span<const std::uint32_t> C,
                        std::span<const std::uint32_t> D) {
  if (C.empty() || D.empty()) return 0;
  std::vector<std::uint8_t> in_d(g.vertex_count(), 0);
  for (std::uint32_t v : D) in_d[v] = 1;
  for (std::uint32_t v : C)
    if (in_d[v]) throw std::invalid_argument("cross_edges: sets overlap");
  std::size_t count = 0;
  for (std::uint32_t v : C)
    for (std::uint32_t u : g.neighbors(v)) count += in_d[u];
  return count;
}

double estimate_beta(const Graph& g, double c, double d, std::size_t trials,
                     std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  const auto size_c = static_cast<std::size_t>(std::ceil(c * static_cast<double>(n)));
  const auto size_d = static_cast<std::size_t>(std::ceil(d * static_cast<double>(n)));
  if (size_c + size_d > n)
    throw std::invalid_argument("estimate_beta: ceil(cn)+ceil(dn) exceeds n");

  Rng rng(seed);
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t v = 0; v < n; ++v) perm[v] = v;

  double best = 0.0;
  const double expected = static_cast<double>(size_c) *
                          static_cast<double>(size_d) * g.edge_prob();
  for (std::size_t t = 0; t < trials; ++t) {
    // partial Fisher-Yates: first size_c+size_d entries form C then D
    for (std::size_t k = 0; k < size_c + size_d; ++k) {
      const std::size_t r = k + rng.uniform_index(n - k);
      std::swap(perm[k], perm[r]);
    }
    const std::span<const std::uint32_t> C(perm.data(), size_c);
    const std::span<const std::uint32_t> D(perm.data() + size_c, size_d);
    const double dev =
        std::abs(static_cast<double>(cross_edges(g, C, D)) - expected);
    best = std::max(best, dev);
  }
  return best;
}

}  // namespace wsir
