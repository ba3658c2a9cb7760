#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sofic/lang.hpp"

namespace sofic {

struct Vertex {
  std::string descriptor;
};

struct Edge {
  std::size_t src;
  std::size_t dst;
  std::size_t label;  // index into LabelledGraph::alphabet

  auto operator<=>(const Edge&) const = default;
};

/// Finite directed multigraph with labelled edges. Vertex ids are positions in `vertices`.
struct LabelledGraph {
  std::vector<Symbol> alphabet;  // sorted, duplicate free
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  LabelledGraph() = default;
  explicit LabelledGraph(std::vector<Symbol> letters);

  std::size_t add_vertex(std::string descriptor);
  void add_edge(std::size_t src, std::size_t dst, std::size_t label);
  void add_edge(std::size_t src, std::size_t dst, const Symbol& label);
  /// Index of a letter, or nullopt when the letter is not in the alphabet.
  std::optional<std::size_t> label_index(const Symbol& s) const;
  std::size_t size() const noexcept { return vertices.size(); }

  /// succ[v][a] = targets of a-labelled edges leaving v (with multiplicity).
  std::vector<std::vector<std::vector<std::size_t>>> successors() const;
  /// pred[v][a] = sources of a-labelled edges entering v (with multiplicity).
  std::vector<std::vector<std::vector<std::size_t>>> predecessors() const;
};

/// One central vertex "c" and, for each generator of length n, n-1 interior vertices.
LabelledGraph loop_graph(const GeneratingList& list);

/// Strongly connected components; comp[v] is the component index of v.
/// Components are numbered in reverse topological order (sinks first).
std::vector<std::size_t> strongly_connected_components(const LabelledGraph& g,
                                                       std::size_t& count);
bool is_irreducible(const LabelledGraph& g);

/// Induced subgraph on `keep` (in the given order).
LabelledGraph induced_subgraph(const LabelledGraph& g, const std::vector<std::size_t>& keep);
/// Removes vertices that do not lie on a biinfinite path.
LabelledGraph essential_subgraph(const LabelledGraph& g);
/// Reverses all edges.
LabelledGraph reversed(const LabelledGraph& g);

/// Deterministic, essential, follower-separated presentation of the irreducible sofic
/// shift presented by g (the right Fischer cover).
LabelledGraph right_resolving_presentation(const LabelledGraph& g);

bool is_right_resolving(const LabelledGraph& g);
bool is_left_resolving(const LabelledGraph& g);

/// Vertices sorted by descriptor, edges sorted by (source, target, label).
LabelledGraph canonical(const LabelledGraph& g);

/// Vertex bijection f with f(g-vertex) = h-vertex preserving labelled edge multiplicities.
std::optional<std::vector<std::size_t>> labelled_iso(const LabelledGraph& g, const LabelledGraph& h);

std::string to_dot(const LabelledGraph& g, const std::set<std::size_t>& highlights = {});

/// Labels of all paths of length n (any start vertex).
std::set<Word> block_words(const LabelledGraph& g, std::size_t n);

}  // namespace sofic
