#include "sofic/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

#include "sofic/error.hpp"

namespace sofic {

LabelledGraph::LabelledGraph(std::vector<Symbol> letters) : alphabet(std::move(letters)) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
}

std::size_t LabelledGraph::add_vertex(std::string descriptor) {
  vertices.push_back({std::move(descriptor)});
  return vertices.size() - 1;
}

void LabelledGraph::add_edge(std::size_t src, std::size_t dst, std::size_t label) {
  if (src >= vertices.size() || dst >= vertices.size()) {
    throw Error(ErrorCode::UnknownVertexId, std::to_string(std::max(src, dst)));
  }
  edges.push_back({src, dst, label});
}

void LabelledGraph::add_edge(std::size_t src, std::size_t dst, const Symbol& label) {
  auto idx = label_index(label);
  if (!idx) throw Error(ErrorCode::SymbolNotInAlphabet, label.token);
  add_edge(src, dst, *idx);
}

std::optional<std::size_t> LabelledGraph::label_index(const Symbol& s) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), s);
  if (it == alphabet.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - alphabet.begin());
}

std::vector<std::vector<std::vector<std::size_t>>> LabelledGraph::successors() const {
  std::vector<std::vector<std::vector<std::size_t>>> out(
      vertices.size(), std::vector<std::vector<std::size_t>>(alphabet.size()));
  for (const auto& e : edges) out[e.src][e.label].push_back(e.dst);
  return out;
}

std::vector<std::vector<std::vector<std::size_t>>> LabelledGraph::predecessors() const {
  std::vector<std::vector<std::vector<std::size_t>>> out(
      vertices.size(), std::vector<std::vector<std::size_t>>(alphabet.size()));
  for (const auto& e : edges) out[e.dst][e.label].push_back(e.src);
  return out;
}

LabelledGraph loop_graph(const GeneratingList& list) {
  LabelledGraph g(list.alphabet());
  const std::size_t center = g.add_vertex("c");
  std::size_t next = 1;
  for (const auto& w : list.words()) {
    std::size_t prev = center;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::size_t to = center;
      if (i + 1 < w.size()) to = g.add_vertex("v" + std::to_string(next++));
      g.add_edge(prev, to, w[i]);
      prev = to;
    }
  }
  return g;
}

std::vector<std::size_t> strongly_connected_components(const LabelledGraph& g,
                                                       std::size_t& count) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> fwd(n), bwd(n);
  for (const auto& e : g.edges) {
    fwd[e.src].push_back(e.dst);
    bwd[e.dst].push_back(e.src);
  }
  // Kosaraju: finishing order on the forward graph, then sweep the reversed graph.
  std::vector<std::size_t> order;
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < fwd[v].size()) {
        std::size_t w = fwd[v][i++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<std::size_t> comp(n, n);
  std::vector<std::size_t> ids;
  count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != n) continue;
    std::vector<std::size_t> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (auto w : bwd[v]) {
        if (comp[w] == n) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  // Kosaraju numbers sources first; flip so that sinks come first.
  for (auto& c : comp) c = count - 1 - c;
  return comp;
}

bool is_irreducible(const LabelledGraph& g) {
  if (g.size() == 0) return false;
  std::size_t count = 0;
  strongly_connected_components(g, count);
  return count == 1 && !g.edges.empty();
}

LabelledGraph induced_subgraph(const LabelledGraph& g, const std::vector<std::size_t>& keep) {
  LabelledGraph out(g.alphabet);
  std::vector<std::size_t> index(g.size(), g.size());
  for (auto v : keep) index[v] = out.add_vertex(g.vertices[v].descriptor);
  for (const auto& e : g.edges) {
    if (index[e.src] != g.size() && index[e.dst] != g.size()) {
      out.add_edge(index[e.src], index[e.dst], e.label);
    }
  }
  return out;
}

LabelledGraph essential_subgraph(const LabelledGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  for (const auto& e : g.edges) {
    ++outdeg[e.src];
    ++indeg[e.dst];
  }
  std::vector<char> dead(n, 0);
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0 || outdeg[v] == 0) {
      dead[v] = 1;
      queue.push_back(v);
    }
  }
  std::vector<std::vector<const Edge*>> incident(n);
  for (const auto& e : g.edges) {
    incident[e.src].push_back(&e);
    if (e.dst != e.src) incident[e.dst].push_back(&e);
  }
  while (!queue.empty()) {
    std::size_t v = queue.back();
    queue.pop_back();
    for (const Edge* e : incident[v]) {
      std::size_t other = e->src == v ? e->dst : e->src;
      if (dead[other]) continue;
      if (e->src == v) --indeg[other];
      if (e->dst == v) --outdeg[other];
      if (indeg[other] == 0 || outdeg[other] == 0) {
        dead[other] = 1;
        queue.push_back(other);
      }
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < n; ++v) {
    if (!dead[v]) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

LabelledGraph reversed(const LabelledGraph& g) {
  LabelledGraph out = g;
  for (auto& e : out.edges) std::swap(e.src, e.dst);
  return out;
}

namespace {

std::string subset_descriptor(const LabelledGraph& g, const std::vector<std::size_t>& set) {
  std::vector<std::string> names;
  for (auto v : set) names.push_back(g.vertices[v].descriptor);
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out + "}";
}

}  // namespace

LabelledGraph right_resolving_presentation(const LabelledGraph& input) {
  LabelledGraph g = essential_subgraph(input);
  if (g.size() == 0) throw Error(ErrorCode::EmptyGraph, "no biinfinite path");
  const std::size_t k = g.alphabet.size();
  const auto succ = g.successors();

  // Subset construction from the set of all vertices.
  std::vector<std::vector<std::size_t>> states;
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::vector<long>> delta;
  std::vector<std::size_t> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  states.push_back(all);
  index[all] = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    delta.emplace_back(k, -1);
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<std::size_t> next;
      for (auto v : states[s]) next.insert(next.end(), succ[v][a].begin(), succ[v][a].end());
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      auto [it, inserted] = index.emplace(next, states.size());
      if (inserted) states.push_back(std::move(next));
      delta[s][a] = static_cast<long>(it->second);
    }
  }

  // Moore refinement: states are equivalent iff they have the same follower set.
  const std::size_t n = states.size();
  std::vector<std::size_t> cls(n, 0);
  std::size_t classes = 1;
  while (true) {
    std::map<std::vector<long>, std::size_t> sig_index;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<long> sig{static_cast<long>(cls[s])};
      for (std::size_t a = 0; a < k; ++a) {
        sig.push_back(delta[s][a] < 0 ? -1 : static_cast<long>(cls[delta[s][a]]));
      }
      auto [it, inserted] = sig_index.emplace(std::move(sig), sig_index.size());
      next[s] = it->second;
    }
    cls = std::move(next);
    if (sig_index.size() == classes) break;
    classes = sig_index.size();
  }

  // Quotient automaton; each class is named after its smallest member subset.
  std::vector<long> rep(classes, -1);
  for (std::size_t s = 0; s < n; ++s) {
    auto& r = rep[cls[s]];
    if (r < 0) {
      r = static_cast<long>(s);
      continue;
    }
    const auto& cur = states[static_cast<std::size_t>(r)];
    if (std::make_pair(states[s].size(), states[s]) < std::make_pair(cur.size(), cur)) {
      r = static_cast<long>(s);
    }
  }
  LabelledGraph quotient(g.alphabet);
  for (std::size_t c = 0; c < classes; ++c) {
    quotient.add_vertex(subset_descriptor(g, states[static_cast<std::size_t>(rep[c])]));
  }
  for (std::size_t c = 0; c < classes; ++c) {
    auto s = static_cast<std::size_t>(rep[c]);
    for (std::size_t a = 0; a < k; ++a) {
      if (delta[s][a] >= 0) quotient.add_edge(c, cls[static_cast<std::size_t>(delta[s][a])], a);
    }
  }

  // The Fischer cover is the unique terminal component.
  std::size_t count = 0;
  auto comp = strongly_connected_components(quotient, count);
  std::vector<char> exits(count, 0);
  for (const auto& e : quotient.edges) {
    if (comp[e.src] != comp[e.dst]) exits[comp[e.src]] = 1;
  }
  std::vector<std::size_t> sinks;
  for (std::size_t c = 0; c < count; ++c) {
    if (!exits[c]) sinks.push_back(c);
  }
  if (sinks.size() != 1) {
    throw Error(ErrorCode::NotIrreducible, "presentation has several terminal components");
  }
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < classes; ++v) {
    if (comp[v] == sinks[0]) keep.push_back(v);
  }
  auto out = induced_subgraph(quotient, keep);
  if (out.edges.empty()) throw Error(ErrorCode::EmptyGraph, "terminal component has no edges");
  return out;
}

bool is_right_resolving(const LabelledGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : g.edges) {
    if (!seen.insert({e.src, e.label}).second) return false;
  }
  return true;
}

bool is_left_resolving(const LabelledGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : g.edges) {
    if (!seen.insert({e.dst, e.label}).second) return false;
  }
  return true;
}

LabelledGraph canonical(const LabelledGraph& g) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.vertices[a].descriptor < g.vertices[b].descriptor;
  });
  auto out = induced_subgraph(g, order);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

namespace {

using PairLabels = std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>>;

PairLabels pair_labels(const LabelledGraph& g) {
  PairLabels out;
  for (const auto& e : g.edges) out[{e.src, e.dst}].push_back(g.alphabet[e.label].token);
  for (auto& [key, v] : out) std::sort(v.begin(), v.end());
  return out;
}

const std::vector<std::string>& lookup(const PairLabels& m, std::size_t a, std::size_t b) {
  static const std::vector<std::string> none;
  auto it = m.find({a, b});
  return it == m.end() ? none : it->second;
}

}  // namespace

std::optional<std::vector<std::size_t>> labelled_iso(const LabelledGraph& g,
                                                     const LabelledGraph& h) {
  const std::size_t n = g.size();
  if (n != h.size() || g.edges.size() != h.edges.size()) return std::nullopt;
  if (n == 0) return std::vector<std::size_t>{};

  // Color refinement on the disjoint union; labels compared by token text.
  struct Arc {
    std::size_t src, dst;
    std::string label;
  };
  std::vector<Arc> arcs;
  for (const auto& e : g.edges) arcs.push_back({e.src, e.dst, g.alphabet[e.label].token});
  for (const auto& e : h.edges) arcs.push_back({e.src + n, e.dst + n, h.alphabet[e.label].token});
  std::vector<std::size_t> color(2 * n, 0);
  std::size_t colors = 1;
  while (true) {
    using Sig = std::tuple<std::size_t, std::vector<std::pair<std::string, std::size_t>>,
                           std::vector<std::pair<std::string, std::size_t>>>;
    std::vector<Sig> sigs(2 * n);
    for (std::size_t v = 0; v < 2 * n; ++v) std::get<0>(sigs[v]) = color[v];
    for (const auto& a : arcs) {
      std::get<1>(sigs[a.src]).push_back({a.label, color[a.dst]});
      std::get<2>(sigs[a.dst]).push_back({a.label, color[a.src]});
    }
    std::map<Sig, std::size_t> ids;
    for (auto& s : sigs) {
      std::sort(std::get<1>(s).begin(), std::get<1>(s).end());
      std::sort(std::get<2>(s).begin(), std::get<2>(s).end());
      ids.emplace(s, 0);
    }
    std::size_t next_id = 0;
    for (auto& [s, id] : ids) id = next_id++;
    for (std::size_t v = 0; v < 2 * n; ++v) color[v] = ids[sigs[v]];
    if (ids.size() == colors) break;
    colors = ids.size();
  }
  std::vector<std::size_t> count_g(colors, 0), count_h(colors, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++count_g[color[v]];
    ++count_h[color[v + n]];
  }
  if (count_g != count_h) return std::nullopt;

  const auto pg = pair_labels(g);
  const auto ph = pair_labels(h);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return count_g[color[a]] < count_g[color[b]];
  });

  std::vector<std::size_t> map(n, n);
  std::vector<char> used(n, 0);
  std::vector<std::size_t> mapped;
  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == n) return true;
    std::size_t v = order[i];
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || color[w + n] != color[v]) continue;
      if (lookup(pg, v, v) != lookup(ph, w, w)) continue;
      bool ok = true;
      for (auto u : mapped) {
        if (lookup(pg, v, u) != lookup(ph, w, map[u]) || lookup(pg, u, v) != lookup(ph, map[u], w)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      mapped.push_back(v);
      if (assign(i + 1)) return true;
      mapped.pop_back();
      used[w] = 0;
      map[v] = n;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return map;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const LabelledGraph& g, const std::set<std::size_t>& highlights) {
  for (auto v : highlights) {
    if (v >= g.size()) throw Error(ErrorCode::UnknownVertexId, std::to_string(v));
  }
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.vertices[a].descriptor < g.vertices[b].descriptor;
  });
  std::string out = "digraph cover {\n";
  for (auto v : order) {
    out += "  " + dot_quote(g.vertices[v].descriptor) + " [shape=box";
    if (highlights.count(v)) out += " style=filled fillcolor=gray";
    out += "];\n";
  }
  std::vector<std::tuple<std::string, std::string, std::string>> lines;
  for (const auto& e : g.edges) {
    lines.emplace_back(g.vertices[e.src].descriptor, g.vertices[e.dst].descriptor,
                       g.alphabet[e.label].token);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [s, d, l] : lines) {
    out += "  " + dot_quote(s) + " -> " + dot_quote(d) + " [label=" + dot_quote(l) + "];\n";
  }
  return out + "}\n";
}

std::set<Word> block_words(const LabelledGraph& g, std::size_t n) {
  std::set<Word> out;
  const auto succ = g.successors();
  Word cur;
  std::function<void(const std::vector<std::size_t>&)> walk = [&](const std::vector<std::size_t>& at) {
    if (cur.size() == n) {
      out.insert(cur);
      return;
    }
    for (std::size_t a = 0; a < g.alphabet.size(); ++a) {
      std::vector<std::size_t> next;
      for (auto v : at) next.insert(next.end(), succ[v][a].begin(), succ[v][a].end());
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      cur.push_back(g.alphabet[a]);
      walk(next);
      cur.pop_back();
    }
  };
  std::vector<std::size_t> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  if (!all.empty()) walk(all);
  return out;
}

}  // namespace sofic
