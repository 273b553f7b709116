#ifndef WSIR_GRAPH_HPP
#define WSIR_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace wsir {

/// Undirected simple graph on {0..n-1}, CSR adjacency with sorted
/// neighbor lists. Immutable after construction.
class Graph {
 public:
  static Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

  /// All-edges fixture: complete graph, edge probability recorded as 1.
  static Graph complete(std::size_t n);

  /// Build from an explicit edge list (pairs i<j, no duplicates).
  static Graph from_edges(std::size_t n,
                          std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
                          double recorded_p);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  double edge_prob() const { return p_; }

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(std::uint32_t v) const {
    return offsets_[v + 1] - offsets_[v];
  }
  bool adjacent(std::uint32_t i, std::uint32_t j) const;

  /// Edge-list text format: header "n m", then "i j" per edge, i<j.
  void save_edge_list(std::ostream& os) const;
  static Graph load_edge_list(std::istream& is, double recorded_p = 0.0);

 private:
  Graph() = default;
  static Graph build(std::size_t n,
                     std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                     double recorded_p);

  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  double p_ = 0.0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> adj_;
};

namespace detail {
// Both G(n,p) samplers; erdos_renyi picks pairwise iteration for
// n <= 2e4 and geometric skip-sampling above. Equal in distribution.
std::vector<std::pair<std::uint32_t, std::uint32_t>> er_edges_pairwise(
    std::size_t n, double p, std::uint64_t seed);
std::vector<std::pair<std::uint32_t, std::uint32_t>> er_edges_skip(
    std::size_t n, double p, std::uint64_t seed);
}  // namespace detail

/// alpha(C, D): edges with one endpoint in C, the other in D.
/// C and D must be disjoint.
std::size_t cross_edges(const Graph& g, std::span<const std::uint32_t> C,
                        std::span<const std::uint32_t> D);

/// Sampled lower bound for beta(c,d,n): max over `trials` random
/// disjoint pairs |C| = ceil(cn), |D| = ceil(dn) of
/// |alpha(C,D) - |C||D| p|, with p the graph's recorded edge probability.
double estimate_beta(const Graph& g, double c, double d, std::size_t trials,
                     std::uint64_t seed);

}  // namespace wsir

#endif
