#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "sofic/borders.hpp"
#include "sofic/cli.hpp"
#include "sofic/cover.hpp"
#include "sofic/error.hpp"
#include "sofic/families.hpp"
#include "sofic/matrix.hpp"

namespace sofic::cli {

namespace {

struct Check {
  std::ostream& out;
  int failures = 0;

  void operator()(bool ok, const std::string& what) {
    out << (ok ? "ok   " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  }
};

BowenFranksClass pipeline(const GeneratingList& list) {
  return signed_bowen_franks(adjacency_matrix(left_fischer_cover(list).graph));
}

std::string tor(const std::vector<mpz_class>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].get_str();
  return s + "]";
}

GeneratingList rename(const GeneratingList& list, const std::string& suffix) {
  std::vector<Word> words;
  for (const auto& w : list.words()) {
    Word v;
    for (const auto& s : w) v.push_back(Symbol(s.token + suffix));
    words.push_back(v);
  }
  return GeneratingList(words);
}

int example1(const ReproduceOptions&, std::ostream& out) {
  Check check{out};
  auto list = parse_list("aa\naaa\nb\n");
  auto cover = left_fischer_cover(list);

  LabelledGraph fig1(std::vector<Symbol>{Symbol("a"), Symbol("b")});
  auto p0 = fig1.add_vertex("P0"), p1 = fig1.add_vertex("P1"), p2 = fig1.add_vertex("P2");
  fig1.add_edge(p0, p0, Symbol("b"));
  fig1.add_edge(p0, p1, Symbol("b"));
  fig1.add_edge(p1, p1, Symbol("a"));
  fig1.add_edge(p1, p2, Symbol("a"));
  fig1.add_edge(p2, p0, Symbol("a"));
  auto iso = labelled_iso(fig1, cover.graph);
  check(iso.has_value(), "cover is labelled-isomorphic to the three-vertex figure");
  check(cover.memory == 2, "memory m = 2");
  check(infer_forbidden_words(list) == std::set<Word>{word_from_chars("bab")}, "forbidden words {bab}");
  if (!iso) return 1;

  auto report = border_report(list, cover);
  const std::size_t P0 = (*iso)[p0], P1 = (*iso)[p1];
  check(report.border_vertices == std::set<std::size_t>{P0, P1}, "border vertices {P0, P1}");
  check(report.universal_vertex == P0, "universal border point P0");
  auto has = [&](std::size_t v, const std::string& w, bool minimal) {
    auto it = report.generators.find(v);
    if (it == report.generators.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](const GeneratorWord& g) {
      return g.word == word_from_chars(w) && g.minimal == minimal;
    });
  };
  check(has(P0, "b", true), "b is a minimal generator of P0");
  check(has(P1, "aa", true), "aa is a minimal generator of P1");
  check(has(P1, "aab", false), "aab is a non-minimal generator of P1");
  check(report.left_modular == true, "list is left-modular");
  check(pipeline(list).to_string() == "sign=-1 torsion=[] free_rank=0 det=-1", "signed BF (-, trivial)");
  return check.failures ? 1 : 0;
}

int lemma_2r1(const ReproduceOptions& opt, std::ostream& out) {
  Check check{out};
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> count(1, 3);
  for (std::size_t r = 2; r <= 3; ++r) {
    RParams base;
    base.r = r;
    base.g.assign(r - 1, 1);
    auto cover = left_fischer_cover(build_family(base));
    check(cover.graph.size() == 2 * r + 1, "r=" + std::to_string(r) + " unfragmented cover has " +
                                               std::to_string(cover.graph.size()) + " vertices");
  }
  for (int i = 0; i < 50; ++i) {
    RParams p;
    p.r = 2 + i % 2;
    p.al = count(rng);
    p.at = count(rng);
    p.be = count(rng);
    for (std::size_t j = 0; j + 1 < p.r; ++j) p.g.push_back(count(rng));
    auto bf = pipeline(build_family(p));
    auto cf = closed_form_invariant(p);
    check(bf.cyclic() && bf.det == cf.det,
          format_family_params(p) + " det=" + bf.det.get_str() + " closed=" + cf.det.get_str());
  }
  return check.failures ? 1 : 0;
}

int det_range(const ReproduceOptions& opt, std::ostream& out) {
  Check check{out};
  for (long k = opt.k_lo; k <= opt.k_hi; ++k) {
    auto p = search_det(k);
    auto bf = pipeline(build_family(p));
    check(bf.det == k && bf.cyclic(), "k=" + std::to_string(k) + " " + format_family_params(p) + " " +
                                          bf.to_string());
  }
  return check.failures ? 1 : 0;
}

int diag(const ReproduceOptions&, std::ostream& out) {
  Check check{out};
  const std::vector<std::vector<std::size_t>> cases{{4, 2}, {8, 4, 2}, {9, 3, 3}, {3, 3}};
  for (const auto& ns : cases) {
    DiagParams p{ns};
    auto bf = pipeline(build_family(p));
    auto cf = closed_form_invariant(p);
    bool ok = bf.det < 0 && bf.det == cf.det;
    if (cf.torsion) ok = ok && bf.torsion == *cf.torsion;
    check(ok, format_family_params(p) + " " + bf.to_string() +
                  (cf.torsion ? " predicted torsion=" + tor(*cf.torsion) : ""));
  }
  return check.failures ? 1 : 0;
}

int surgery(const ReproduceOptions&, std::ostream& out) {
  Check check{out};
  auto ex1 = parse_list("aa\naaa\nb\n");
  RParams r2;
  r2.g = {1};
  RParams r3;
  r3.r = 3;
  r3.g = {1, 1};
  auto lr2 = build_family(r2), lr3 = build_family(r3);
  auto x = parse_list("x\n"), y = parse_list("y\n");
  const std::vector<std::pair<GeneratingList, GeneratingList>> pairs{
      {ex1, rename(ex1, "'")}, {ex1, x},          {x, ex1},          {lr2, x},
      {lr2, rename(lr2, "'")}, {lr3, y},          {lr2, rename(ex1, "'")}, {x, y},
      {ex1, rename(lr3, "'")}, {rename(lr3, "'"), lr2}};
  for (const auto& [l1, l2] : pairs) {
    auto s = sum_surgery(l1, l2);
    auto direct = left_fischer_cover(sum_lists(l1, l2).list);
    check(labelled_iso(s.graph, direct.graph).has_value(),
          "sum of " + std::to_string(l1.size()) + "+" + std::to_string(l2.size()) + " words, " +
              std::to_string(direct.graph.size()) + " vertices");
  }
  const std::vector<DPlusMParams> dm{
      {{{3, 3}}, {1, 1, 1, 1, 1}}, {{{3, 3}}, {2, 1, 1, 1, 1}}, {{{4, 3}}, {1, 2, 1, 1, 2}},
      {{{9, 3, 3}}, {1, 1, 1, 1, 1}}};
  for (const auto& p : dm) {
    auto s = diag_sum_cover(p.diag.n, build_family(p.modular));
    auto direct = left_fischer_cover(build_family(p));
    check(labelled_iso(s.graph, direct.graph).has_value(),
          "diagonal plus modular " + format_family_params(p));
  }
  return check.failures ? 1 : 0;
}

int example3(const ReproduceOptions&, std::ostream& out) {
  Check check{out};
  bool negative = false, positive = false, x_zero_seen = false;
  for (std::size_t ga = 1; ga <= 5; ++ga) {
    for (std::size_t a = 1; a <= 6; ++a) {
      DPlusMParams p{{{4, 2}}, {a, 1, 1, 1, ga}};
      auto bf = pipeline(build_family(p));
      negative = negative || bf.sign < 0;
      positive = positive || bf.sign > 0;
      auto x = dplusm_conjectured_x(p.modular);
      bool ok = bf.generators() <= 2 && bf.det == dplusm_det(p.diag, x);
      if (x == 0) {
        x_zero_seen = true;
        ok = ok && bf.torsion == std::vector<mpz_class>{6} && bf.free_rank == 0;
      }
      check(ok, "ga=" + std::to_string(ga) + " a=" + std::to_string(a) + " x=" + x.get_str() + " " +
                    bf.to_string());
    }
  }
  check(negative && positive, "both determinant signs occur");
  check(x_zero_seen, "grid contains the x = 0 line");
  return check.failures ? 1 : 0;
}

const std::map<std::string, std::function<int(const ReproduceOptions&, std::ostream&)>>& targets() {
  static const std::map<std::string, std::function<int(const ReproduceOptions&, std::ostream&)>> t{
      {"example1", example1}, {"lemma-2r+1", lemma_2r1}, {"det-range", det_range},
      {"diag", diag},         {"surgery", surgery},      {"example3", example3}};
  return t;
}

}  // namespace

std::vector<std::string> reproduce_targets() {
  std::vector<std::string> names;
  for (const auto& [k, v] : targets()) names.push_back(k);
  return names;
}

int reproduce(const std::string& target, const ReproduceOptions& options, std::ostream& out,
              std::ostream& err) {
  auto it = targets().find(target);
  if (it == targets().end()) {
    err << "usage error: unknown target " << target << "; known:";
    for (const auto& n : reproduce_targets()) err << " " << n;
    err << "\n";
    return 2;
  }
  out << "reproduce " << target << "\n";
  int rc = it->second(options, out);
  out << (rc == 0 ? "MATCH" : "MISMATCH") << "\n";
  return rc;
}

}  // namespace sofic::cli
