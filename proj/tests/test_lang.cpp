#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sofic/error.hpp"
#include "sofic/lang.hpp"

using namespace sofic;

namespace {

Word w(const char* s) { return word_from_chars(s); }

GeneratingList ex1() { return parse_list("aa\naaa\nb\n"); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::EmptyList;
}

}  // namespace

TEST_CASE("parse_list tokenizes lines") {
  auto l = ex1();
  CHECK(l.size() == 3);
  CHECK(l.alphabet() == std::vector<Symbol>{Symbol("a"), Symbol("b")});
  CHECK(l.words()[0] == w("aa"));

  auto spaced = parse_list("a a\nb\n");
  CHECK(spaced == GeneratingList({w("aa"), w("b")}));

  auto dup = parse_list("# comment\n\nab\nab\n");
  CHECK(dup.size() == 1);

  auto multi = parse_list("al\nal be\n", ParseOptions{true});
  CHECK(multi.alphabet() == std::vector<Symbol>{Symbol("al"), Symbol("be")});
}

TEST_CASE("parse_list errors") {
  CHECK(code_of([] { parse_list(""); }) == ErrorCode::EmptyList);
  CHECK(code_of([] { parse_list("# only\n\n"); }) == ErrorCode::EmptyList);
  CHECK(code_of([] { parse_list("a\nε\n"); }) == ErrorCode::EmptyWord);
  try {
    parse_list("a\nb\x01\n");
    FAIL("expected MalformedLine");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedLine);
    CHECK(e.detail().find("2") != std::string::npos);
  }
}

TEST_CASE("format_list round trips") {
  for (const char* text : {"aa\naaa\nb\n", "al\nal ga be\nbe at ga\n", "é\néa\n"}) {
    auto l = parse_list(text);
    CHECK(parse_list(format_list(l)) == l);
  }
}

TEST_CASE("fragment") {
  auto ab = GeneratingList({w("ab")});
  auto f = fragment(ab, Symbol("a"), 2);
  CHECK(f.size() == 2);
  auto fresh = fresh_symbols(Symbol("a"), 2);
  CHECK(fresh[0].token == "a#1");
  CHECK(f.words()[0] == Word{fresh[0], Symbol("b")});

  auto aa = GeneratingList({w("aa")});
  CHECK(fragment(aa, Symbol("a"), 2).size() == 4);

  CHECK(code_of([] { fragment(GeneratingList({word_from_chars("aa"), word_from_chars("b")}), Symbol("c"), 2); }) ==
        ErrorCode::SymbolNotInAlphabet);
  CHECK(code_of([] {
          fragment(GeneratingList({word_from_chars("ab")}), Symbol("a"), 2,
                   std::vector<Symbol>{Symbol("b"), Symbol("x")});
        }) == ErrorCode::FreshSymbolCollision);
}

TEST_CASE("fragment size and defragment property") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    auto l = oracle::random_list(rng, 4, 4, 3);
    const Symbol s = l.alphabet().front();
    const std::size_t k = 1 + t % 3;
    auto f = fragment(l, s, k);
    std::size_t expected = 0;
    for (const auto& word : l.words()) {
      std::size_t p = 1;
      for (std::size_t i = 0; i < count_symbol(word, s); ++i) p *= k;
      expected += p;
    }
    CHECK(f.size() == expected);
    CHECK(defragment(f, fresh_symbols(s, k), s) == l);
  }
}

TEST_CASE("fragmentation commutes with disjoint sums") {
  auto l1 = ex1();
  auto l2 = parse_list("cc\nccc\nd\n");
  auto lhs = fragment(sum_lists(l1, l2).list, Symbol("a"), 3);
  auto rhs = sum_lists(fragment(l1, Symbol("a"), 3), l2).list;
  CHECK(lhs == rhs);
}

TEST_CASE("sum_lists") {
  auto s = sum_lists(ex1(), parse_list("cc\nccc\nd\n"));
  CHECK(s.list.size() == 6);
  CHECK(s.alphabet_disjoint);
  auto same = sum_lists(ex1(), ex1());
  CHECK(same.list == ex1());
  CHECK_FALSE(same.alphabet_disjoint);
  auto e = sum_lists(parse_list("aa\nb\n"), parse_list("e\n"));
  CHECK(e.list == parse_list("aa\nb\ne\n"));
  CHECK(e.alphabet_disjoint);
}

TEST_CASE("symbol_expand") {
  auto fresh = std::vector<Symbol>{Symbol("a1"), Symbol("a2")};
  auto r = symbol_expand(GeneratingList({w("ab")}), Symbol("a"), 2, fresh);
  CHECK(r.words() == std::vector<Word>{Word{Symbol("a1"), Symbol("a2"), Symbol("b")}});
  auto r2 = symbol_expand(parse_list("aa\nb\n"), Symbol("a"), 2, fresh);
  CHECK(r2.size() == 2);
  CHECK(r2.words()[0].size() == 4);
}

TEST_CASE("partitionings of Example 1 words") {
  auto l = ex1();
  auto b = enumerate_partitionings(l, w("b"), 3);
  REQUIRE(b.partitionings.size() == 1);
  CHECK(b.partitionings.begin()->beginning.empty());
  CHECK(b.partitionings.begin()->end.empty());

  std::set<Word> beginnings;
  for (const auto& p : enumerate_partitionings(l, w("ab"), 3).partitionings) beginnings.insert(p.beginning);
  CHECK(beginnings == std::set<Word>{w("a"), w("aa")});

  auto aab = enumerate_partitionings(l, w("aab"), 3).partitionings;
  bool clean = false, with_a = false;
  for (const auto& p : aab) {
    if (p.beginning.empty() && p.end.empty() && p.generators.size() == 2) clean = true;
    if (p.beginning == w("a")) with_a = true;
  }
  CHECK(clean);
  CHECK(with_a);
}

TEST_CASE("bordering status") {
  auto l = ex1();
  CHECK(bordering_status(l, w("b"), Side::Left, 4) == BorderingStatus::StronglyBordering);
  CHECK(bordering_status(l, w("aab"), Side::Left, 4) == BorderingStatus::Bordering);
  CHECK(bordering_status(l, w("ab"), Side::Left, 4) == BorderingStatus::NotBordering);
  CHECK(code_of([&] { bordering_status(l, w("bab"), Side::Left, 4); }) == ErrorCode::NotInLanguage);
}

TEST_CASE("partitionings agree with the brute-force oracle and reassemble") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    auto l = oracle::random_list(rng, 3, 3, 2);
    std::uniform_int_distribution<std::size_t> len(1, 5), sym(0, 1);
    Word q;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) q.push_back(Symbol(std::string(1, char('a' + sym(rng)))));
    auto got = enumerate_partitionings(l, q, 4);
    CHECK(got.partitionings == oracle::partitionings(l, q, 4));
    for (const auto& p : got.partitionings) CHECK(partitioned_word(l, p) == q);
  }
}

TEST_CASE("reversal duality of bordering") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int t = 0; t < 80; ++t) {
    auto l = oracle::random_list(rng, 3, 3, 2);
    auto blocks = oracle::blocks(l, 3);
    for (const auto& q : blocks) {
      CHECK(bordering_status(l, q, Side::Right, 5) == bordering_status(reversed(l), reversed(q), Side::Left, 5));
      ++checked;
    }
  }
  CHECK(checked > 100);
}
