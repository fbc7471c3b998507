#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string_view>
#include <utility>
#include <vector>

#include "drsc/labels.hpp"
#include "drsc/matrix.hpp"

namespace drsc {

// Undirected simple graph held as a dense symmetric 0/1 adjacency matrix.
// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Edges are 0-based dense indices; duplicates collapse, self-loops are dropped.
  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  // Validates symmetry, zero diagonal and 0/1 entries.
  static Graph from_adjacency(Matrix adjacency);

  std::size_t n() const noexcept { return adjacency_.rows(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const Matrix& adjacency() const noexcept { return adjacency_; }
  bool has_edge(std::size_t i, std::size_t j) const { return adjacency_(i, j) != 0.0; }

  // External node id of each dense index (identity unless loaded from a file).
  const std::vector<std::int64_t>& node_ids() const noexcept { return node_ids_; }

 private:
  Matrix adjacency_;
  std::size_t edge_count_ = 0;
  std::vector<std::int64_t> node_ids_;

  friend Graph build_graph(std::vector<std::int64_t> ids,
                           const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);
};

struct LabeledGraph {
  Graph graph;
  LabelVector truth;
  int K = 0;
};

struct DegreeStats {
  int d_min = 0;
  int d_max = 0;
  std::vector<int> degree_vector;
};

// Edge list: one "u v" or "u,v" pair per line; lines starting with '#' or '%'
// are comments. Node ids may be sparse; they are remapped densely in ascending
// order. `index_base` is the id of the first node (0 or 1).
Graph load_edge_list(std::istream& in, int index_base = 1);
Graph load_edge_list(std::string_view text, int index_base = 1);

// Label file: one "node_id,label" pair per line covering nodes
// index_base..index_base+n-1 exactly once. Labels are compacted to {1..K}.
LabelVector load_labels(std::istream& in, std::size_t n, int index_base = 1);
LabelVector load_labels(std::string_view text, std::size_t n, int index_base = 1);

// Loads an edge list and a label file whose ids refer to the same nodes.
// Nodes that only appear in the label file are kept as isolated nodes.
LabeledGraph load_labeled_graph(std::istream& edges, std::istream& labels, int index_base = 1);
LabeledGraph load_labeled_graph(std::string_view edges, std::string_view labels, int index_base = 1);

DegreeStats degree_stats(const Graph& g);
bool is_connected(const Graph& g);

// Zachary's karate club: 34 members, 78 ties, two factions.
LabeledGraph karate_club();
std::string_view karate_edge_list_text();
std::string_view karate_labels_text();

}  // namespace drsc
