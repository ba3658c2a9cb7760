#pragma once

// Brute-force reference implementations. Slow on purpose: nothing here shares code
// with the library beyond the basic word and matrix types.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sofic/graph.hpp"
#include "sofic/lang.hpp"
#include "sofic/matrix.hpp"

namespace oracle {

using sofic::GeneratingList;
using sofic::Symbol;
using sofic::Word;

// B_n(X(L)) from explicit concatenations. A length-n window of a biinfinite
// concatenation starts inside some generator, so concatenations of total length
// n + 2 * maxlen cover every window.
inline std::set<Word> blocks(const GeneratingList& list, std::size_t n) {
  std::set<Word> out;
  const std::size_t cap = n + 2 * list.max_word_length();
  std::vector<Word> frontier{Word{}};
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& g : list.words()) {
        Word v = w;
        v.insert(v.end(), g.begin(), g.end());
        if (v.size() > cap) continue;
        if (v.size() >= n) {
          for (std::size_t i = 0; i + n <= v.size(); ++i) out.insert(Word(v.begin() + i, v.begin() + i + n));
        }
        next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Left cover of an m-step SFT from m-block fingerprints: u ~ u' when the same
// m-blocks may precede them. Edge class(prefix_m(a u)) -> class(u) labelled a.
inline sofic::LabelledGraph fingerprint_cover(const GeneratingList& list, std::size_t m) {
  auto b2m = blocks(list, 2 * m + 1);
  std::set<Word> bm, bm1;
  for (const auto& w : b2m) {
    bm.insert(Word(w.begin(), w.begin() + m));
    bm1.insert(Word(w.begin(), w.begin() + m + 1));
  }
  std::map<Word, std::set<Word>> fp;
  for (const auto& u : bm) fp[u];
  for (const auto& w : b2m) fp[Word(w.begin() + m, w.begin() + 2 * m)].insert(Word(w.begin(), w.begin() + m));
  std::map<std::set<Word>, std::size_t> cls;
  sofic::LabelledGraph g(list.alphabet());
  std::map<Word, std::size_t> vertex;
  for (const auto& [u, f] : fp) {
    auto it = cls.find(f);
    if (it == cls.end()) it = cls.emplace(f, g.add_vertex(sofic::to_string(u))).first;
    vertex[u] = it->second;
  }
  std::set<std::tuple<std::size_t, std::size_t, Symbol>> edges;
  for (const auto& w : bm1) {
    Word u(w.begin() + 1, w.end());
    Word pre(w.begin(), w.begin() + m);
    if (!vertex.count(u) || !vertex.count(pre)) continue;
    edges.insert({vertex[pre], vertex[u], w.front()});
  }
  for (const auto& [s, d, a] : edges) g.add_edge(s, d, a);
  return g;
}

// All partitionings of w found by placing w at every offset of every short concatenation.
inline std::set<sofic::Partitioning> partitionings(const GeneratingList& list, const Word& w,
                                                   std::size_t max_generators) {
  std::set<sofic::Partitioning> out;
  std::vector<std::vector<std::size_t>> seqs{{}};
  for (std::size_t len = 1; len <= max_generators; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& s : seqs) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        auto t = s;
        t.push_back(i);
        next.push_back(t);
      }
    }
    seqs = next;
    for (const auto& s : seqs) {
      Word cat;
      for (auto i : s) cat.insert(cat.end(), list.words()[i].begin(), list.words()[i].end());
      const auto& first = list.words()[s.front()];
      const auto& last = list.words()[s.back()];
      for (std::size_t off = 0; off < first.size() && off + w.size() <= cat.size(); ++off) {
        std::size_t cut = cat.size() - off - w.size();
        if (cut >= last.size()) continue;
        if (s.size() == 1 && off + w.size() > first.size()) continue;
        if (!std::equal(w.begin(), w.end(), cat.begin() + off)) continue;
        sofic::Partitioning p;
        p.beginning = Word(first.begin(), first.begin() + off);
        p.generators = s;
        p.end = Word(last.end() - cut, last.end());
        out.insert(p);
      }
    }
  }
  return out;
}

inline mpz_class minor_det(const sofic::IntMatrix& m, const std::vector<std::size_t>& r,
                           const std::vector<std::size_t>& c) {
  // Laplace expansion; only used for k <= 5.
  if (r.size() == 1) return m(r[0], c[0]);
  mpz_class total = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::vector<std::size_t> rr(r.begin() + 1, r.end()), cc;
    for (std::size_t t = 0; t < c.size(); ++t)
      if (t != j) cc.push_back(c[t]);
    mpz_class sub = m(r[0], c[j]) * minor_det(m, rr, cc);
    total += (j % 2 == 0) ? sub : mpz_class(-sub);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

// Invariant factors from determinantal divisors d_k = gcd of the k x k minors.
inline std::vector<mpz_class> invariant_factors(const sofic::IntMatrix& m) {
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    mpz_class d = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        mpz_class x = minor_det(m, r, c);
        mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), x.get_mpz_t());
      }
    if (d == 0) break;
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

inline sofic::IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  sofic::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

inline GeneratingList random_list(std::mt19937_64& rng, std::size_t max_words, std::size_t max_len,
                                  std::size_t alphabet) {
  std::uniform_int_distribution<std::size_t> nw(1, max_words), len(1, max_len), sym(0, alphabet - 1);
  std::vector<Word> words;
  std::size_t count = nw(rng);
  for (std::size_t i = 0; i < count; ++i) {
    Word w;
    std::size_t l = len(rng);
    for (std::size_t j = 0; j < l; ++j) w.push_back(Symbol(std::string(1, char('a' + sym(rng)))));
    words.push_back(w);
  }
  return GeneratingList(words);
}

}  // namespace oracle
