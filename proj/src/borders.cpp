#include "sofic/borders.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "sofic/error.hpp"
#include "sofic/families.hpp"

namespace sofic {

namespace {

using Set = std::vector<std::size_t>;
using Adjacency = std::vector<std::vector<std::vector<std::size_t>>>;

constexpr std::size_t kCenter = 0;
constexpr std::size_t kMaxConcatenations = 20000;

Set step(const Adjacency& adj, const Set& from, std::size_t a) {
  Set out;
  for (auto v : from) out.insert(out.end(), adj[v][a].begin(), adj[v][a].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Set step_word(const LabelledGraph& g, const Adjacency& adj, Set cur, const Word& w) {
  for (const auto& s : w) {
    auto a = g.label_index(s);
    if (!a) return {};
    cur = step(adj, cur, *a);
    if (cur.empty()) break;
  }
  return cur;
}

Word unroll(const Lasso& ray, std::size_t n) {
  Word w = ray.prefix;
  while (w.size() < n && !ray.cycle.empty()) w.insert(w.end(), ray.cycle.begin(), ray.cycle.end());
  w.resize(std::min(w.size(), n));
  return w;
}

// Classes S(u) for u the label of a length-m path leaving the center of the loop graph.
std::set<std::size_t> border_classes(const LabelledGraph& loop, const Cover& cover) {
  const auto& h = cover.presentation;
  const auto hpred = h.predecessors();
  Set all(h.size());
  std::iota(all.begin(), all.end(), 0);
  std::set<std::pair<std::size_t, Set>> layer;
  for (std::size_t q = 0; q < loop.size(); ++q) layer.insert({q, all});
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> in(loop.size());
  for (const auto& e : loop.edges) in[e.dst].push_back({e.src, e.label});
  for (std::size_t t = 0; t < cover.memory; ++t) {
    std::set<std::pair<std::size_t, Set>> next;
    for (const auto& [q, s] : layer) {
      for (auto [p, a] : in[q]) {
        auto ha = h.label_index(loop.alphabet[a]);
        Set pre = step(hpred, s, *ha);
        if (!pre.empty()) next.insert({p, std::move(pre)});
      }
    }
    layer = std::move(next);
  }
  std::set<std::size_t> out;
  for (const auto& [q, s] : layer) {
    if (q != kCenter) continue;
    auto v = cover.vertex_of_start_set(s);
    if (!v) throw Error(ErrorCode::NotWellDefined, "border class missing from cover");
    out.insert(*v);
  }
  return out;
}

std::set<Word> words_into_center(const LabelledGraph& loop, std::size_t m) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> in(loop.size());
  for (const auto& e : loop.edges) in[e.dst].push_back({e.src, e.label});
  std::set<Word> out;
  Word rev;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (rev.size() == m) {
      out.insert(Word(rev.rbegin(), rev.rend()));
      return;
    }
    for (auto [p, a] : in[v]) {
      rev.push_back(loop.alphabet[a]);
      walk(p);
      rev.pop_back();
    }
  };
  walk(kCenter);
  return out;
}

std::optional<Lasso> universal_fast_path(const GeneratingList& list, std::size_t m) {
  for (const auto& g : list.words()) {
    Word w = g;
    while (w.size() < std::max<std::size_t>(m, 1)) w.insert(w.end(), g.begin(), g.end());
    if (bordering_status(list, w, Side::Left, w.size()) == BorderingStatus::StronglyBordering) {
      return Lasso{{}, g};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Lasso> strongly_left_bordering_ray(const GeneratingList& list) {
  const LabelledGraph loop = loop_graph(list);
  const auto succ = loop.successors();
  const std::size_t k = loop.alphabet.size();
  using Config = std::pair<Set, Set>;  // positions reached from the center, from other starts
  Set others;
  for (std::size_t v = 1; v < loop.size(); ++v) others.push_back(v);
  std::map<Config, std::size_t> index;
  std::vector<Config> configs;
  std::vector<std::pair<std::size_t, std::size_t>> parent;
  configs.push_back({{kCenter}, others});
  index[configs[0]] = 0;
  parent.push_back({0, 0});
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!configs[i].first.empty() && configs[i].second.empty()) {
      Word prefix;
      for (std::size_t j = i; j != 0; j = parent[j].first) prefix.push_back(loop.alphabet[parent[j].second]);
      std::reverse(prefix.begin(), prefix.end());
      // Walk from one surviving position back to the center.
      std::size_t v = configs[i].first.front();
      while (v != kCenter) {
        std::size_t a = 0;
        while (succ[v][a].empty()) ++a;
        prefix.push_back(loop.alphabet[a]);
        v = succ[v][a].front();
      }
      return Lasso{prefix, list.words().front()};
    }
    for (std::size_t a = 0; a < k; ++a) {
      Set c = step(succ, configs[i].first, a);
      if (c.empty()) continue;
      Config next{std::move(c), step(succ, configs[i].second, a)};
      auto [it, inserted] = index.emplace(next, configs.size());
      if (inserted) {
        configs.push_back(std::move(next));
        parent.push_back({i, a});
      }
    }
  }
  return std::nullopt;
}

bool is_intrinsically_synchronizing(const Cover& cover, const Word& w) {
  return cover.end_set(w).size() == 1;
}

std::size_t default_generator_bound(const GeneratingList& list, const Cover& cover) {
  return 3 * cover.memory + list.total_length();
}

BorderReport border_report(const GeneratingList& list, const Cover& cover,
                           std::optional<std::size_t> generator_bound) {
  BorderReport report;
  const std::size_t m = cover.memory;
  const LabelledGraph loop = loop_graph(list);
  report.border_vertices = border_classes(loop, cover);
  report.p0_fingerprint = words_into_center(loop, m);

  auto ray = universal_fast_path(list, m);
  report.universal_from_fast_path = ray.has_value();
  if (!ray) ray = strongly_left_bordering_ray(list);
  if (ray) {
    report.universal_ray = ray;
    report.universal_vertex = cover.vertex_of(unroll(*ray, m));
  }

  // Concatenations of generators by increasing length.
  report.search_bound = generator_bound.value_or(default_generator_bound(list, cover));
  const auto& h = cover.presentation;
  const auto hsucc = h.successors();
  Set all(h.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::map<Word, Set>> levels(report.search_bound + 1);
  levels[0][Word{}] = all;
  std::size_t total = 0;
  for (std::size_t len = 1; len <= report.search_bound; ++len) {
    std::map<Word, Set> level;
    for (const auto& g : list.words()) {
      if (g.size() > len) continue;
      for (const auto& [x, t] : levels[len - g.size()]) {
        Word w = x;
        w.insert(w.end(), g.begin(), g.end());
        if (level.count(w)) continue;
        level.emplace(std::move(w), step_word(h, hsucc, t, g));
      }
    }
    if (total + level.size() > kMaxConcatenations) {
      report.generators_truncated = true;
      report.search_bound = len - 1;
      levels.resize(len);
      break;
    }
    total += level.size();
    levels[len] = std::move(level);
  }
  for (std::size_t len = 1; len < levels.size(); ++len) {
    for (const auto& [w, t] : levels[len]) {
      if (t.size() != 1) continue;
      auto v = cover.vertex_of(unroll(Lasso{{}, w}, m));
      if (!v) continue;
      bool minimal = true;
      for (std::size_t p = 1; p < len && minimal; ++p) {
        auto it = levels[p].find(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p)));
        if (it != levels[p].end() && it->second.size() == 1) minimal = false;
      }
      report.generators[*v].push_back({w, minimal});
    }
  }

  if (report.universal_vertex) report.left_modular = is_modular(list, cover, report).modular;
  return report;
}

ModularityResult is_modular(const GeneratingList& list, const Cover& cover,
                            const BorderReport& report) {
  if (!report.universal_vertex) throw Error(ErrorCode::UniversalPointMissing, "");
  const std::size_t universal = *report.universal_vertex;
  const LabelledGraph loop = loop_graph(list);
  const auto lsucc = loop.successors();
  const auto& f = cover.graph;

  struct State {
    std::size_t vertex;
    Set positions;
    bool border;
    auto operator<=>(const State&) const = default;
  };
  std::map<State, std::size_t> index;
  std::vector<State> states;
  std::vector<std::pair<long, std::size_t>> parent;  // (parent state, label)
  for (std::size_t s = 0; s < f.size(); ++s) {
    State st{s, {kCenter}, report.border_vertices.count(s) > 0};
    index.emplace(st, states.size());
    states.push_back(st);
    parent.push_back({-1, 0});
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(f.size());
  for (const auto& e : f.edges) out[e.src].push_back({e.dst, e.label});

  ModularityResult result;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const State cur = states[i];
    if (cur.vertex == universal) {
      bool in_star = std::binary_search(cur.positions.begin(), cur.positions.end(), kCenter);
      if (in_star != cur.border) {
        Word w;
        std::size_t j = i;
        for (; parent[j].first >= 0; j = static_cast<std::size_t>(parent[j].first)) {
          w.push_back(f.alphabet[parent[j].second]);
        }
        std::reverse(w.begin(), w.end());
        result.modular = false;
        result.counterexample = w;
        result.start_vertex = states[j].vertex;
        result.start_is_border = cur.border;
        return result;
      }
    }
    for (auto [dst, a] : out[cur.vertex]) {
      auto la = loop.label_index(f.alphabet[a]);
      Set pos = la ? step(lsucc, cur.positions, *la) : Set{};
      State next{dst, std::move(pos), cur.border};
      auto [it, inserted] = index.emplace(next, states.size());
      if (inserted) {
        states.push_back(next);
        parent.push_back({static_cast<long>(i), a});
      }
    }
  }
  result.modular = true;
  return result;
}

ModularityResult is_modular(const GeneratingList& list, Side side) {
  GeneratingList l = side == Side::Left ? list : reversed(list);
  Cover cover = left_fischer_cover(l);
  BorderReport report = border_report(l, cover, 0);
  return is_modular(l, cover, report);
}

SurgeryCover sum_surgery_fischer(const Cover& c1, const BorderReport& r1, const Cover& c2,
                                 const BorderReport& r2) {
  if (!r1.universal_vertex || !r2.universal_vertex) {
    throw Error(ErrorCode::UniversalPointMissing, "");
  }
  if (r1.left_modular != true || r2.left_modular != true) {
    throw Error(ErrorCode::NotModular, "both lists must be left-modular");
  }
  for (const auto& s : c1.graph.alphabet) {
    if (c2.graph.label_index(s)) throw Error(ErrorCode::AlphabetsOverlap, s.token);
  }
  std::vector<Symbol> letters = c1.graph.alphabet;
  letters.insert(letters.end(), c2.graph.alphabet.begin(), c2.graph.alphabet.end());
  SurgeryCover out;
  out.graph = LabelledGraph(letters);
  auto& g = out.graph;
  const std::size_t plus = g.add_vertex("P+");
  out.universal_vertex = plus;

  const Cover* covers[2] = {&c1, &c2};
  const BorderReport* reports[2] = {&r1, &r2};
  std::vector<std::size_t> map[2];
  for (int i = 0; i < 2; ++i) {
    const auto& cg = covers[i]->graph;
    map[i].resize(cg.size());
    for (std::size_t v = 0; v < cg.size(); ++v) {
      map[i][v] = v == *reports[i]->universal_vertex
                      ? plus
                      : g.add_vertex(std::to_string(i + 1) + ":" + cg.vertices[v].descriptor);
    }
  }
  for (int i = 0; i < 2; ++i) {
    const auto& cg = covers[i]->graph;
    const int other = 1 - i;
    for (const auto& e : cg.edges) {
      const Symbol& label = cg.alphabet[e.label];
      g.add_edge(map[i][e.src], map[i][e.dst], label);
      if (e.dst != *reports[i]->universal_vertex) continue;
      for (auto q : reports[other]->border_vertices) {
        if (q == *reports[other]->universal_vertex) continue;
        g.add_edge(map[i][e.src], map[other][q], label);
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return out;
}

SurgeryCover sum_surgery(const GeneratingList& l1, const GeneratingList& l2) {
  Cover c1 = left_fischer_cover(l1);
  Cover c2 = left_fischer_cover(l2);
  auto r1 = border_report(l1, c1, 0);
  auto r2 = border_report(l2, c2, 0);
  return sum_surgery_fischer(c1, r1, c2, r2);
}

SurgeryCover diag_sum_cover(const std::vector<std::size_t>& ns, const GeneratingList& lm) {
  GeneratingList ld = build_diag(ns);
  for (const auto& s : ld.alphabet()) {
    if (lm.contains_symbol(s)) throw Error(ErrorCode::AlphabetsOverlap, s.token);
  }
  Cover fd = left_fischer_cover(ld);
  Cover fm = left_fischer_cover(lm);
  BorderReport rm = border_report(lm, fm, 0);
  if (!rm.universal_vertex) throw Error(ErrorCode::UniversalPointMissing, "");
  if (rm.left_modular != true) throw Error(ErrorCode::NotModular, "modular summand required");
  const std::size_t p0 = *rm.universal_vertex;

  std::vector<Symbol> letters = ld.alphabet();
  letters.insert(letters.end(), lm.alphabet().begin(), lm.alphabet().end());
  SurgeryCover out;
  out.graph = LabelledGraph(letters);
  auto& g = out.graph;
  std::vector<std::size_t> dmap(fd.graph.size()), mmap(fm.graph.size());
  for (std::size_t v = 0; v < fd.graph.size(); ++v) {
    dmap[v] = g.add_vertex("d:" + fd.graph.vertices[v].descriptor);
  }
  for (std::size_t v = 0; v < fm.graph.size(); ++v) {
    mmap[v] = g.add_vertex("m:" + fm.graph.vertices[v].descriptor);
  }
  for (const auto& e : fd.graph.edges) g.add_edge(dmap[e.src], dmap[e.dst], fd.graph.alphabet[e.label]);
  for (const auto& e : fm.graph.edges) g.add_edge(mmap[e.src], mmap[e.dst], fm.graph.alphabet[e.label]);

  const auto letters_d = diag_letters(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const std::size_t j = i == 0 ? 1 : 0;
    auto di = fd.vertex_of(unroll(Lasso{{}, {letters_d[i], letters_d[j]}}, fd.memory));
    if (!di) throw Error(ErrorCode::NotWellDefined, "missing diagonal border class");
    for (const auto& e : fm.graph.edges) {
      if (e.dst == p0) g.add_edge(mmap[e.src], dmap[*di], fm.graph.alphabet[e.label]);
    }
    for (auto p : rm.border_vertices) g.add_edge(dmap[*di], mmap[p], letters_d[i]);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return out;
}

}  // namespace sofic
