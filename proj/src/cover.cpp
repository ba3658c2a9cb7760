#include "sofic/cover.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "sofic/error.hpp"

namespace sofic {

namespace {

using Set = std::vector<std::size_t>;
using Adjacency = std::vector<std::vector<std::vector<std::size_t>>>;

Set step(const Adjacency& adj, const Set& from, std::size_t a) {
  Set out;
  for (auto v : from) out.insert(out.end(), adj[v][a].begin(), adj[v][a].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Set all_vertices(const LabelledGraph& g) {
  Set s(g.size());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

std::string cycle_text(const LabelledGraph& g, const std::vector<std::size_t>& cycle) {
  std::string out = "[";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += ' ';
    out += g.vertices[cycle[i]].descriptor;
  }
  return out + "]";
}

}  // namespace

std::string SftCertificate::describe() const {
  if (is_sft) return "IS_SFT memory=" + std::to_string(memory);
  std::string out = "NOT_SFT";
  if (witness) {
    out += " label=" + to_string(witness->label) + " cycle1=" +
           cycle_text(presentation, witness->cycle1) + " cycle2=" +
           cycle_text(presentation, witness->cycle2);
  }
  return out;
}

SftCertificate sft_certificate(const GeneratingList& list) {
  return sft_certificate(loop_graph(list));
}

SftCertificate sft_certificate(const LabelledGraph& shift) {
  SftCertificate cert;
  cert.presentation = right_resolving_presentation(shift);
  const auto& h = cert.presentation;
  const std::size_t n = h.size();
  const std::size_t k = h.alphabet.size();
  if (n == 1) {
    cert.is_sft = true;
    cert.memory = 0;
    return cert;
  }
  // Pair graph on ordered pairs of distinct states; right-resolving makes every
  // successor of an off-diagonal pair unique per letter.
  std::vector<std::vector<long>> next(n, std::vector<long>(k, -1));
  for (const auto& e : h.edges) next[e.src][e.label] = static_cast<long>(e.dst);
  auto id = [n](std::size_t p, std::size_t q) { return p * n + q; };
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(n * n);  // (target, label)
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      for (std::size_t a = 0; a < k; ++a) {
        long p2 = next[p][a], q2 = next[q][a];
        if (p2 < 0 || q2 < 0 || p2 == q2) continue;
        out[id(p, q)].push_back({id(static_cast<std::size_t>(p2), static_cast<std::size_t>(q2)), a});
      }
    }
  }

  // Iterative DFS: longest path lengths, or a cycle.
  std::vector<int> state(n * n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::size_t> longest(n * n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> parent(n * n, {n * n, 0});
  for (std::size_t root = 0; root < n * n; ++root) {
    if (root / n == root % n || state[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < out[v].size()) {
        auto [w, a] = out[v][i++];
        if (state[w] == 0) {
          state[w] = 1;
          parent[w] = {v, a};
          stack.push_back({w, 0});
        } else if (state[w] == 1) {
          // Cycle w -> ... -> v -> w.
          std::vector<std::size_t> pairs{v};
          std::vector<std::size_t> labels{a};
          for (std::size_t x = v; x != w;) {
            auto [px, pa] = parent[x];
            pairs.push_back(px);
            labels.push_back(pa);
            x = px;
          }
          // pairs = v, ..., w (backwards); labels[j] is the edge entering pairs[j-1].
          std::reverse(pairs.begin(), pairs.end());  // w ... v
          std::vector<std::size_t> ordered_labels;
          for (std::size_t j = labels.size(); j-- > 1;) ordered_labels.push_back(labels[j]);
          ordered_labels.push_back(labels[0]);
          SoficWitness wit;
          for (std::size_t j = 0; j < pairs.size(); ++j) {
            wit.cycle1.push_back(pairs[j] / n);
            wit.cycle2.push_back(pairs[j] % n);
            wit.label.push_back(h.alphabet[ordered_labels[j]]);
          }
          cert.is_sft = false;
          cert.witness = std::move(wit);
          return cert;
        } else {
          longest[v] = std::max(longest[v], longest[w] + 1);
        }
      } else {
        std::size_t done = v;
        state[done] = 2;
        stack.pop_back();
        if (!stack.empty()) {
          auto up = stack.back().first;
          longest[up] = std::max(longest[up], longest[done] + 1);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t v = 0; v < n * n; ++v) best = std::max(best, longest[v]);
  cert.is_sft = true;
  cert.memory = best + 1;
  return cert;
}

bool replays(const SoficWitness& w, const LabelledGraph& h) {
  const std::size_t len = w.label.size();
  if (len == 0 || w.cycle1.size() != len || w.cycle2.size() != len) return false;
  if (w.cycle1 == w.cycle2) return false;
  auto has_edge = [&](std::size_t s, std::size_t d, const Symbol& a) {
    auto idx = h.label_index(a);
    if (!idx) return false;
    return std::any_of(h.edges.begin(), h.edges.end(), [&](const Edge& e) {
      return e.src == s && e.dst == d && e.label == *idx;
    });
  };
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t j = (i + 1) % len;
    if (!has_edge(w.cycle1[i], w.cycle1[j], w.label[i])) return false;
    if (!has_edge(w.cycle2[i], w.cycle2[j], w.label[i])) return false;
  }
  return true;
}

std::vector<std::size_t> Cover::start_set(const Word& w) const {
  const auto pred = presentation.predecessors();
  Set cur = all_vertices(presentation);
  for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it) {
    auto a = presentation.label_index(*it);
    if (!a) return {};
    cur = step(pred, cur, *a);
  }
  return cur;
}

std::vector<std::size_t> Cover::end_set(const Word& w) const {
  const auto succ = presentation.successors();
  Set cur = all_vertices(presentation);
  for (const auto& s : w) {
    auto a = presentation.label_index(s);
    if (!a) return {};
    cur = step(succ, cur, *a);
    if (cur.empty()) break;
  }
  return cur;
}

std::optional<std::size_t> Cover::vertex_of(const Word& w) const {
  if (w.size() < memory) return std::nullopt;
  auto s = start_set(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(memory)));
  auto it = by_fingerprint_.find(s);
  if (it == by_fingerprint_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Cover::vertex_of_start_set(const std::vector<std::size_t>& s) const {
  auto it = by_fingerprint_.find(s);
  if (it == by_fingerprint_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Cover::vertex_by_descriptor(const std::string& d) const {
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (graph.vertices[v].descriptor == d) return v;
  }
  return std::nullopt;
}

std::set<Word> Cover::fingerprint_words(std::size_t vertex) const {
  std::set<Word> out;
  const auto succ = presentation.successors();
  const auto& target = fingerprints.at(vertex);
  Word cur;
  std::function<void(const Set&)> walk = [&](const Set& at) {
    if (cur.size() == memory) {
      bool hit = std::any_of(at.begin(), at.end(), [&](std::size_t v) {
        return std::binary_search(target.begin(), target.end(), v);
      });
      if (hit) out.insert(cur);
      return;
    }
    for (std::size_t a = 0; a < presentation.alphabet.size(); ++a) {
      Set next = step(succ, at, a);
      if (next.empty()) continue;
      cur.push_back(presentation.alphabet[a]);
      walk(next);
      cur.pop_back();
    }
  };
  walk(all_vertices(presentation));
  return out;
}

Cover left_fischer_cover(const GeneratingList& list, CoverKind kind) {
  auto cert = sft_certificate(list);
  if (!cert.is_sft) throw Error(ErrorCode::NotSft, cert.describe());
  const auto& h = cert.presentation;
  const std::size_t m = cert.memory;
  const auto pred = h.predecessors();
  const std::size_t k = h.alphabet.size();

  // Start sets of all blocks of length 0, 1, ..., m, each with its least block.
  std::map<Set, Word> layer{{all_vertices(h), Word{}}};
  for (std::size_t len = 0; len < m; ++len) {
    std::map<Set, Word> next;
    for (const auto& [s, rep] : layer) {
      for (std::size_t a = 0; a < k; ++a) {
        Set pre = step(pred, s, a);
        if (pre.empty()) continue;
        Word cand{h.alphabet[a]};
        cand.insert(cand.end(), rep.begin(), rep.end());
        auto it = next.find(pre);
        if (it == next.end()) {
          next.emplace(std::move(pre), std::move(cand));
        } else if (cand < it->second) {
          it->second = std::move(cand);
        }
      }
    }
    layer = std::move(next);
  }

  std::vector<std::pair<Word, Set>> classes;
  for (auto& [s, rep] : layer) classes.emplace_back(rep, s);
  std::sort(classes.begin(), classes.end());

  Cover cover;
  cover.kind = kind;
  cover.memory = m;
  cover.graph = LabelledGraph(list.alphabet());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    cover.graph.add_vertex(to_string(classes[i].first));
    cover.representatives.push_back(classes[i].first);
    cover.fingerprints.push_back(classes[i].second);
    cover.by_fingerprint_[classes[i].second] = i;
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      Set pre = step(pred, classes[i].second, a);
      if (pre.empty()) continue;
      auto it = cover.by_fingerprint_.find(pre);
      if (it == cover.by_fingerprint_.end()) {
        throw Error(ErrorCode::NotWellDefined, "edge source class missing for " +
                                                   to_string(classes[i].first));
      }
      cover.graph.add_edge(it->second, i, *cover.graph.label_index(h.alphabet[a]));
    }
  }
  std::sort(cover.graph.edges.begin(), cover.graph.edges.end());
  cover.presentation = h;

  std::size_t count = 0;
  strongly_connected_components(cover.graph, count);
  cover.components = count;
  if (kind == CoverKind::Fischer && count != 1) {
    throw Error(ErrorCode::NotIrreducible, "cover has " + std::to_string(count) + " components");
  }
  return cover;
}

std::set<Word> infer_forbidden_words(const GeneratingList& list) {
  auto cert = sft_certificate(list);
  if (!cert.is_sft) throw Error(ErrorCode::NotSft, cert.describe());
  const auto& h = cert.presentation;
  const auto succ = h.successors();
  const std::size_t m = cert.memory;
  const Set all = all_vertices(h);
  auto allowed = [&](const Word& w) {
    Set cur = all;
    for (const auto& s : w) {
      cur = step(succ, cur, *h.label_index(s));
      if (cur.empty()) return false;
    }
    return true;
  };

  std::set<Word> out;
  Word x;
  std::function<void(const Set&)> walk = [&](const Set& at) {
    for (std::size_t a = 0; a < h.alphabet.size(); ++a) {
      Set next = step(succ, at, a);
      x.push_back(h.alphabet[a]);
      if (next.empty()) {
        if (allowed(Word(x.begin() + 1, x.end()))) out.insert(x);
      } else if (x.size() <= m) {
        walk(next);
      }
      x.pop_back();
    }
  };
  if (m > 0) walk(all);
  return out;
}

std::set<Word> block_language(const GeneratingList& list, std::size_t n) {
  return block_words(loop_graph(list), n);
}

}  // namespace sofic
