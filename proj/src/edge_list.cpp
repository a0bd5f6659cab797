// Copyright 2026 The infsamp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "infsamp/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "infsamp/error.hpp"

namespace infsamp {
namespace {

constexpr std::string_view kBlanks = " \t\r\v\f";

// Splits on blanks into at most `max_tokens` + 1 tokens (the extra one
// signals "too many").
std::size_t tokenize(std::string_view line, std::string_view* out,
                     std::size_t max_tokens) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (count <= max_tokens) {
    pos = line.find_first_not_of(kBlanks, pos);
    if (pos == std::string_view::npos) break;
    const std::size_t end = line.find_first_of(kBlanks, pos);
    out[count++] = line.substr(pos, end == std::string_view::npos
                                        ? std::string_view::npos
                                        : end - pos);
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return count;
}

std::uint64_t parse_id(std::string_view token, const std::string& source,
                       std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(source, line, "node id overflow: " + std::string(token));
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(source, line,
                     "expected a non-negative integer, got '" +
                         std::string(token) + "'");
  return value;
}

double parse_probability(std::string_view token, const std::string& source,
                         std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      !(value >= 0.0 && value <= 1.0))
    throw ParseError(source, line,
                     "expected a probability in [0,1], got '" +
                         std::string(token) + "'");
  return value;
}

std::string_view strip(std::string_view s) {
  const std::size_t first = s.find_first_not_of(kBlanks);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(kBlanks) - first + 1);
}

struct Header {
  std::uint64_t n = 0;
  bool weighted = false;
};

// Recognizes "# n=<n> weighted=<0|1>".
std::optional<Header> parse_header(std::string_view comment) {
  std::string_view tokens[3];
  if (tokenize(comment.substr(1), tokens, 2) != 2) return std::nullopt;
  if (!tokens[0].starts_with("n=") || !tokens[1].starts_with("weighted="))
    return std::nullopt;
  Header header;
  const auto n_text = tokens[0].substr(2);
  const auto [ptr, ec] =
      std::from_chars(n_text.data(), n_text.data() + n_text.size(), header.n);
  if (ec != std::errc() || ptr != n_text.data() + n_text.size())
    return std::nullopt;
  const auto w_text = tokens[1].substr(9);
  if (w_text == "1") {
    header.weighted = true;
  } else if (w_text != "0") {
    return std::nullopt;
  }
  return header;
}

struct RawEdge {
  std::uint64_t u;
  std::uint64_t v;
  double q;
};

}  // namespace

LoadedGraph read_edge_list(std::istream& in, const LoadOptions& options,
                           const std::string& source) {
  if (!(options.default_q >= 0.0 && options.default_q <= 1.0))
    throw ValidationError("default_q must lie in [0,1]");
  LoadedGraph result;
  std::optional<Header> header;
  bool seen_edge = false;
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = strip(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (!seen_edge && !header) header = parse_header(text);
      continue;
    }
    seen_edge = true;
    std::string_view tokens[4];
    const std::size_t expected = header && header->weighted ? 3 : 2;
    const std::size_t count = tokenize(text, tokens, 3);
    if (count != expected)
      throw ParseError(source, line_no,
                       "expected " + std::to_string(expected) +
                           " columns, got " + std::to_string(count));
    RawEdge edge{parse_id(tokens[0], source, line_no),
                 parse_id(tokens[1], source, line_no), options.default_q};
    if (expected == 3) edge.q = parse_probability(tokens[2], source, line_no);
    if (header && (edge.u >= header->n || edge.v >= header->n))
      throw ParseError(source, line_no,
                       "node id exceeds declared n=" + std::to_string(header->n));
    if (edge.u == edge.v) {
      ++result.self_loops_dropped;
      continue;
    }
    raw.push_back(edge);
  }
  if (in.bad()) throw ParseError(source, 0, "read error");

  // Dense renumbering.
  std::vector<std::uint64_t> ids;
  if (header) {
    if (header->n >= std::numeric_limits<NodeId>::max())
      throw ParseError(source, 0, "declared n exceeds 32-bit id space");
    ids.resize(header->n);
    for (std::uint64_t i = 0; i < header->n; ++i) ids[i] = i;
  } else {
    ids.reserve(raw.size() * 2);
    for (const auto& e : raw) {
      ids.push_back(e.u);
      ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() >= std::numeric_limits<NodeId>::max())
      throw ParseError(source, 0, "too many distinct nodes for 32-bit ids");
  }
  auto dense = [&](std::uint64_t id) {
    if (header) return static_cast<NodeId>(id);
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) -
                               ids.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(raw.size() * 2);
  for (const auto& e : raw) {
    NodeId u = dense(e.u);
    NodeId v = dense(e.v);
    if (u > v) std::swap(u, v);
    const std::uint64_t key = (std::uint64_t{u} << 32) | v;
    if (!seen.insert(key).second) {
      ++result.duplicates_dropped;
      continue;
    }
    edges.push_back({u, v, e.q});
  }

  std::size_t n = ids.size();
  if (options.prune_degree_at_most) {
    std::vector<std::size_t> degree(n, 0);
    for (const auto& e : edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    std::vector<NodeId> remap(n, std::numeric_limits<NodeId>::max());
    std::vector<std::uint64_t> kept_ids;
    for (std::size_t v = 0; v < n; ++v) {
      if (degree[v] <= *options.prune_degree_at_most) continue;
      remap[v] = static_cast<NodeId>(kept_ids.size());
      kept_ids.push_back(ids[v]);
    }
    std::vector<Edge> kept;
    for (const auto& e : edges) {
      const NodeId u = remap[e.u];
      const NodeId v = remap[e.v];
      if (u == std::numeric_limits<NodeId>::max() ||
          v == std::numeric_limits<NodeId>::max())
        continue;
      kept.push_back({u, v, e.q});
    }
    result.nodes_pruned = n - kept_ids.size();
    ids = std::move(kept_ids);
    edges = std::move(kept);
    n = ids.size();
  }

  result.graph = WeightedGraph(n, std::move(edges));
  result.original_ids = std::move(ids);
  for (NodeId v = 0; v < n; ++v)
    if (result.graph.degree(v) >= options.candidate_degree_min)
      result.candidates.push_back(v);
  return result;
}

LoadedGraph load_edge_list(const std::filesystem::path& path,
                           const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return read_edge_list(in, options, path.string());
}

void save_edge_list(const WeightedGraph& graph, std::ostream& out,
                    bool weighted) {
  out << "# n=" << graph.num_nodes() << " weighted=" << (weighted ? 1 : 0)
      << '\n';
  char buffer[64];
  for (const auto& e : graph.edges()) {
    out << e.u << ' ' << e.v;
    if (weighted) {
      const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, e.q);
      out << ' ' << std::string_view(buffer, ptr - buffer);
    }
    out << '\n';
  }
}

void save_edge_list(const WeightedGraph& graph,
                    const std::filesystem::path& path, bool weighted) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
  save_edge_list(graph, out, weighted);
  if (!out) throw ParseError(path.string(), 0, "write error");
}

std::vector<CommunityEntry> load_community_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  const std::string source = path.string();
  if (!in) throw ParseError(source, 0, "cannot open file");
  std::vector<CommunityEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = strip(line);
    if (text.empty() || text.front() == '#') continue;
    std::string_view tokens[3];
    if (tokenize(text, tokens, 2) != 2)
      throw ParseError(source, line_no, "expected 'node_id community_id'");
    entries.push_back({parse_id(tokens[0], source, line_no),
                       parse_id(tokens[1], source, line_no)});
  }
  return entries;
}

std::vector<std::uint32_t> assign_communities(
    const LoadedGraph& loaded, const std::vector<CommunityEntry>& entries) {
  std::unordered_map<std::uint64_t, NodeId> node_of;
  node_of.reserve(loaded.original_ids.size());
  for (NodeId v = 0; v < loaded.original_ids.size(); ++v)
    node_of.emplace(loaded.original_ids[v], v);
  std::unordered_map<std::uint64_t, std::uint32_t> community_of;
  std::vector<std::uint32_t> assignment(loaded.graph.num_nodes(), kUnassigned);
  for (const auto& entry : entries) {
    const auto node = node_of.find(entry.node);
    if (node == node_of.end()) continue;
    const auto [it, inserted] = community_of.emplace(
        entry.community, static_cast<std::uint32_t>(community_of.size()));
    assignment[node->second] = it->second;
  }
  return assignment;
}

}  // namespace infsamp
