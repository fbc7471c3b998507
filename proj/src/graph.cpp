#include "drsc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>

#include "drsc/error.hpp"

namespace drsc {
namespace {

using RawEdge = std::pair<std::int64_t, std::int64_t>;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_blank_or_comment(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  if (pos == std::string_view::npos) return true;
  return line[pos] == '#' || line[pos] == '%';
}

std::int64_t parse_id(std::string_view field, std::size_t line_no, int index_base, const char* what) {
  std::int64_t value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line_no, std::string("invalid ") + what + " '" + std::string(field) + "'");
  if (value < index_base)
    throw ParseError(line_no, std::string(what) + " " + std::string(field) + " below index base " +
                                  std::to_string(index_base));
  return value;
}

void check_index_base(int index_base) {
  if (index_base != 0 && index_base != 1) throw InvalidArgument("index base must be 0 or 1");
}

std::vector<RawEdge> parse_edges(std::istream& in, int index_base) {
  check_index_base(index_base);
  std::vector<RawEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw ParseError(line_no, "expected two node ids, got '" + line + "'");
    edges.emplace_back(parse_id(fields[0], line_no, index_base, "node id"),
                       parse_id(fields[1], line_no, index_base, "node id"));
  }
  return edges;
}

std::vector<std::pair<std::int64_t, int>> parse_label_pairs(std::istream& in, int index_base) {
  check_index_base(index_base);
  std::vector<std::pair<std::int64_t, int>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw ParseError(line_no, "expected 'node_id,label', got '" + line + "'");
    const std::int64_t id = parse_id(fields[0], line_no, index_base, "node id");
    int label = 0;
    const auto* end = fields[1].data() + fields[1].size();
    const auto [ptr, ec] = std::from_chars(fields[1].data(), end, label);
    if (ec != std::errc() || ptr != end)
      throw ParseError(line_no, "invalid label '" + std::string(fields[1]) + "'");
    pairs.emplace_back(id, label);
  }
  return pairs;
}

std::vector<RawEdge> without_self_loops(std::vector<RawEdge> edges) {
  std::erase_if(edges, [](const RawEdge& e) { return e.first == e.second; });
  return edges;
}

}  // namespace

Graph build_graph(std::vector<std::int64_t> ids, const std::vector<RawEdge>& edges) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::map<std::int64_t, std::size_t> index;
  for (std::size_t k = 0; k < ids.size(); ++k) index.emplace(ids[k], k);

  Graph g;
  g.adjacency_ = Matrix(ids.size(), ids.size());
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    const std::size_t a = index.at(u), b = index.at(v);
    if (g.adjacency_(a, b) == 0.0) {
      g.adjacency_(a, b) = g.adjacency_(b, a) = 1.0;
      ++g.edge_count_;
    }
  }
  g.node_ids_ = std::move(ids);
  return g;
}

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::int64_t> ids(n);
  for (std::size_t k = 0; k < n; ++k) ids[k] = static_cast<std::int64_t>(k);
  std::vector<RawEdge> raw;
  raw.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidArgument("edge endpoint out of range");
    raw.emplace_back(static_cast<std::int64_t>(u), static_cast<std::int64_t>(v));
  }
  return build_graph(std::move(ids), raw);
}

Graph Graph::from_adjacency(Matrix adjacency) {
  if (!adjacency.is_square()) throw InvalidArgument("adjacency must be square");
  const std::size_t n = adjacency.rows();
  Graph g;
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0) throw InvalidArgument("adjacency diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = adjacency(i, j);
      if (a != adjacency(j, i)) throw InvalidArgument("adjacency must be symmetric");
      if (a != 0.0 && a != 1.0) throw InvalidArgument("adjacency entries must be 0 or 1");
      if (a == 1.0) ++g.edge_count_;
    }
  }
  g.adjacency_ = std::move(adjacency);
  g.node_ids_.resize(n);
  for (std::size_t k = 0; k < n; ++k) g.node_ids_[k] = static_cast<std::int64_t>(k);
  return g;
}

Graph load_edge_list(std::istream& in, int index_base) {
  auto edges = without_self_loops(parse_edges(in, index_base));
  if (edges.empty()) throw Error("no edges");
  std::vector<std::int64_t> ids;
  for (const auto& [u, v] : edges) {
    ids.push_back(u);
    ids.push_back(v);
  }
  return build_graph(std::move(ids), edges);
}

Graph load_edge_list(std::string_view text, int index_base) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in, index_base);
}

LabelVector load_labels(std::istream& in, std::size_t n, int index_base) {
  const auto pairs = parse_label_pairs(in, index_base);
  std::vector<int> raw(n);
  std::vector<bool> seen(n, false);
  for (const auto& [id, label] : pairs) {
    const auto k = static_cast<std::size_t>(id - index_base);
    if (k >= n) throw Error("label for node " + std::to_string(id) + " outside the graph");
    if (seen[k]) throw Error("duplicate label for node " + std::to_string(id));
    seen[k] = true;
    raw[k] = label;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!seen[k]) throw Error("missing label for node " + std::to_string(k + static_cast<std::size_t>(index_base)));
  return compact_labels(raw);
}

LabelVector load_labels(std::string_view text, std::size_t n, int index_base) {
  std::istringstream in{std::string(text)};
  return load_labels(in, n, index_base);
}

LabeledGraph load_labeled_graph(std::istream& edges_in, std::istream& labels_in, int index_base) {
  auto edges = without_self_loops(parse_edges(edges_in, index_base));
  if (edges.empty()) throw Error("no edges");
  const auto pairs = parse_label_pairs(labels_in, index_base);

  std::map<std::int64_t, int> label_of;
  for (const auto& [id, label] : pairs)
    if (!label_of.emplace(id, label).second) throw Error("duplicate label for node " + std::to_string(id));

  std::vector<std::int64_t> ids;
  for (const auto& [u, v] : edges) {
    for (auto id : {u, v}) {
      if (!label_of.contains(id)) throw Error("missing label for node " + std::to_string(id));
      ids.push_back(id);
    }
  }
  for (const auto& [id, label] : label_of) ids.push_back(id);

  LabeledGraph out;
  out.graph = build_graph(std::move(ids), edges);
  std::vector<int> raw;
  raw.reserve(out.graph.n());
  for (auto id : out.graph.node_ids()) raw.push_back(label_of.at(id));
  out.truth = compact_labels(raw);
  out.K = out.truth.K;
  return out;
}

LabeledGraph load_labeled_graph(std::string_view edges, std::string_view labels, int index_base) {
  std::istringstream e{std::string(edges)};
  std::istringstream l{std::string(labels)};
  return load_labeled_graph(e, l, index_base);
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  s.degree_vector.resize(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    int d = 0;
    for (double a : g.adjacency().row(i)) d += a != 0.0;
    s.degree_vector[i] = d;
  }
  if (!s.degree_vector.empty()) {
    const auto [lo, hi] = std::minmax_element(s.degree_vector.begin(), s.degree_vector.end());
    s.d_min = *lo;
    s.d_max = *hi;
  }
  return s;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.n();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    const auto row = g.adjacency().row(u);
    for (std::size_t v = 0; v < n; ++v) {
      if (row[v] != 0.0 && !seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

}  // namespace drsc
