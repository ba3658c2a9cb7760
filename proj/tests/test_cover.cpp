#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sofic/cover.hpp"
#include "sofic/error.hpp"
#include "sofic/families.hpp"

using namespace sofic;

namespace {

Word w(const char* s) { return word_from_chars(s); }

LabelledGraph fig1() {
  LabelledGraph g(std::vector<Symbol>{Symbol("a"), Symbol("b")});
  auto p0 = g.add_vertex("P0"), p1 = g.add_vertex("P1"), p2 = g.add_vertex("P2");
  g.add_edge(p0, p0, Symbol("b"));
  g.add_edge(p0, p1, Symbol("b"));
  g.add_edge(p1, p1, Symbol("a"));
  g.add_edge(p1, p2, Symbol("a"));
  g.add_edge(p2, p0, Symbol("a"));
  return g;
}

}  // namespace

TEST_CASE("sft certificates") {
  auto ex1 = sft_certificate(parse_list("aa\naaa\nb\n"));
  CHECK(ex1.is_sft);
  CHECK(ex1.memory == 2);
  CHECK(ex1.describe() == "IS_SFT memory=2");

  auto full = sft_certificate(parse_list("a\nb\n"));
  CHECK(full.is_sft);
  CHECK(full.memory == 0);

  auto even = sft_certificate(parse_list("a\nbb\n"));
  CHECK_FALSE(even.is_sft);
  REQUIRE(even.witness.has_value());
  CHECK(even.witness->cycle1 != even.witness->cycle2);
  CHECK(replays(*even.witness, even.presentation));
  CHECK(even.describe().rfind("NOT_SFT", 0) == 0);
}

TEST_CASE("Fischer cover of Example 1") {
  auto c = left_fischer_cover(parse_list("aa\naaa\nb\n"));
  CHECK(c.memory == 2);
  CHECK(c.graph.size() == 3);
  CHECK(labelled_iso(fig1(), c.graph).has_value());
  CHECK(is_left_resolving(c.graph));
  std::vector<std::string> names;
  for (const auto& v : c.graph.vertices) names.push_back(v.descriptor);
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"aa", "ab", "ba"});
}

TEST_CASE("cover sizes of family instances") {
  RParams r;
  r.g = {1};
  CHECK(left_fischer_cover(build_family(r)).graph.size() == 5);
  CHECK(left_fischer_cover(build_diag({3, 3})).graph.size() == 4);
}

TEST_CASE("not SFT inputs are rejected") {
  try {
    left_fischer_cover(parse_list("a\nbb\n"));
    FAIL("expected NotSft");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSft);
    CHECK(e.detail().find("NOT_SFT") != std::string::npos);
  }
}

TEST_CASE("forbidden words") {
  CHECK(infer_forbidden_words(parse_list("aa\naaa\nb\n")) == std::set<Word>{w("bab")});
  CHECK(infer_forbidden_words(parse_list("a\nb\n")).empty());
  auto diag = infer_forbidden_words(build_diag({3, 2}));
  auto a = diag_letters(2);
  CHECK(diag == std::set<Word>{Word{a[0], a[0], a[0]}, Word{a[1], a[1]}});
}

TEST_CASE("block language") {
  auto b3 = block_language(parse_list("aa\naaa\nb\n"), 3);
  CHECK(b3.size() == 7);
  CHECK_FALSE(b3.count(w("bab")));
  CHECK(block_language(parse_list("a\nbb\n"), 2) == std::set<Word>{w("aa"), w("ab"), w("ba"), w("bb")});
  CHECK(block_language(parse_list("ab\n"), 0) == std::set<Word>{Word{}});
  CHECK(block_language(parse_list("aa\naaa\nb\n"), 6) == oracle::blocks(parse_list("aa\naaa\nb\n"), 6));
}

TEST_CASE("covers match the fingerprint oracle on random SFT lists") {
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 25) {
    auto l = oracle::random_list(rng, 4, 4, 3);
    auto cert = sft_certificate(l);
    if (!cert.is_sft || cert.memory > 4) continue;
    auto comps = left_fischer_cover(l, CoverKind::Krieger).components;
    if (comps != 1) continue;
    ++tested;
    auto c = left_fischer_cover(l);
    CHECK(is_left_resolving(c.graph));
    CHECK(is_irreducible(c.graph));
    // Fingerprints pairwise distinct.
    std::set<std::vector<std::size_t>> fps(c.fingerprints.begin(), c.fingerprints.end());
    CHECK(fps.size() == c.graph.size());
    // An m' > m fingerprint cover has the same shape.
    if (cert.memory > 0) {
      auto o = oracle::fingerprint_cover(l, cert.memory + 1);
      CHECK(labelled_iso(c.graph, o).has_value());
    }
    for (std::size_t n = 1; n <= 2 * c.memory + 2; ++n) CHECK(block_words(c.graph, n) == oracle::blocks(l, n));
    // Memory is minimal: some equally labelled paths of length m - 1 end apart.
    if (cert.memory >= 1) {
      const auto& h = cert.presentation;
      bool split = false;
      for (const auto& u : block_words(h, cert.memory - 1)) {
        if (cert.memory - 1 == 0) {
          split = h.size() > 1;
          break;
        }
        std::set<std::size_t> ends;
        auto succ = h.successors();
        for (std::size_t s = 0; s < h.size(); ++s) {
          std::vector<std::size_t> cur{s};
          for (const auto& sym : u) {
            std::vector<std::size_t> nxt;
            for (auto v : cur)
              for (auto t : succ[v][*h.label_index(sym)]) nxt.push_back(t);
            cur = nxt;
          }
          ends.insert(cur.begin(), cur.end());
        }
        if (ends.size() > 1) split = true;
      }
      CHECK(split);
    }
  }
}

TEST_CASE("forbidden words regenerate the shift") {
  std::mt19937_64 rng(77);
  int tested = 0;
  while (tested < 15) {
    auto l = oracle::random_list(rng, 4, 3, 2);
    auto cert = sft_certificate(l);
    if (!cert.is_sft || cert.memory > 4) continue;
    ++tested;
    auto f = infer_forbidden_words(l);
    for (std::size_t n = 1; n <= cert.memory + 2; ++n) {
      std::set<Word> avoid;
      std::vector<Word> all{Word{}};
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Word> nxt;
        for (const auto& x : all)
          for (const auto& s : l.alphabet()) {
            auto y = x;
            y.push_back(s);
            nxt.push_back(y);
          }
        all = nxt;
      }
      for (const auto& x : all) {
        bool ok = true;
        for (const auto& bad : f)
          for (std::size_t i = 0; ok && i + bad.size() <= x.size(); ++i)
            if (std::equal(bad.begin(), bad.end(), x.begin() + i)) ok = false;
        if (ok) avoid.insert(x);
      }
      CHECK(avoid == oracle::blocks(l, n));
    }
  }
}

TEST_CASE("reversed cover") {
  auto l = parse_list("ab\nb\n");
  auto right = left_fischer_cover(reversed(l));
  CHECK(is_left_resolving(right.graph));
  CHECK(right.graph.size() >= 1);
}
