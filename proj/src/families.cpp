#include "sofic/families.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "sofic/error.hpp"

namespace sofic {

namespace {

Word letters(std::initializer_list<const char*> tokens) {
  Word w;
  for (const char* t : tokens) w.emplace_back(t);
  return w;
}

GeneratingList fragment_all(GeneratingList list,
                            const std::vector<std::pair<std::string, std::size_t>>& counts) {
  for (const auto& [token, k] : counts) {
    if (k > 1) list = fragment(list, Symbol(token), k);
  }
  return list;
}

std::vector<std::pair<std::string, std::size_t>> r_counts(const RParams& p, const std::string& suffix) {
  std::vector<std::pair<std::string, std::size_t>> out{
      {"al" + suffix, p.al}, {"at" + suffix, p.at}, {"be" + suffix, p.be}};
  for (std::size_t k = 2; k <= p.r; ++k) out.push_back({"g" + std::to_string(k) + suffix, p.g[k - 2]});
  return out;
}

std::vector<Word> r_words(const RParams& p, const std::string& suffix) {
  Symbol al("al" + suffix), at("at" + suffix), be("be" + suffix);
  Word gs;
  for (std::size_t k = 2; k <= p.r; ++k) gs.emplace_back("g" + std::to_string(k) + suffix);
  std::vector<Word> out{{al}, {at}};
  for (const auto& g : gs) out.push_back({g});
  Word first{al};
  first.insert(first.end(), gs.begin(), gs.end());
  first.push_back(be);
  Word second{be, at};
  second.insert(second.end(), gs.begin(), gs.end());
  out.push_back(first);
  out.push_back(second);
  return out;
}

void check_positive(std::size_t v, const char* what) {
  if (v == 0) throw Error(ErrorCode::InvalidParams, std::string(what) + " must be positive");
}

void validate_r(const RParams& p) {
  if (p.r < 2) throw Error(ErrorCode::InvalidParams, "R needs r >= 2");
  if (p.g.size() != p.r - 1) throw Error(ErrorCode::InvalidParams, "R needs r-1 gamma counts");
  check_positive(p.al, "al");
  check_positive(p.at, "at");
  check_positive(p.be, "be");
  for (auto g : p.g) check_positive(g, "g");
}

void validate_diag(const DiagParams& p) {
  if (p.n.size() < 2) throw Error(ErrorCode::InvalidParams, "Diag needs k >= 2");
  for (auto n : p.n) {
    if (n < 2) throw Error(ErrorCode::InvalidParams, "Diag needs every n_i >= 2");
  }
  if (*std::max_element(p.n.begin(), p.n.end()) <= 2) {
    throw Error(ErrorCode::InvalidParams, "Diag needs max n_i > 2");
  }
}

void validate_posdet(const PosDetParams& p) {
  check_positive(p.a, "a");
  check_positive(p.al, "al");
  check_positive(p.at, "at");
  check_positive(p.be, "be");
  check_positive(p.ga, "ga");
}

bool has_chain(const DiagParams& p) {
  if (p.n[0] <= 2) return false;
  for (std::size_t i = 1; i < p.n.size(); ++i) {
    if (p.n[i - 1] % p.n[i] != 0) return false;
  }
  return true;
}

mpz_class product(const std::vector<mpz_class>& v) {
  mpz_class p = 1;
  for (const auto& x : v) p *= x;
  return p;
}

ClosedForm cyclic_form(const mpz_class& det) {
  ClosedForm f;
  f.det = det;
  f.sign = sgn(det);
  f.cyclic = true;
  if (det != 0) {
    mpz_class a = abs(det);
    f.torsion = a > 1 ? std::vector<mpz_class>{a} : std::vector<mpz_class>{};
  }
  return f;
}

mpz_class r_det(const RParams& p) {
  mpz_class al = p.al, at = p.at, be = p.be;
  std::vector<mpz_class> g(p.g.begin(), p.g.end());
  mpz_class gsum = 0;
  for (const auto& x : g) gsum += x;
  mpz_class gp = product(g);
  return 1 - al - at - gsum - (al + at) * be * gp + al * at * be * gp * gp;
}

mpz_class hsum_det(const HSumParams& p) {
  mpz_class gamma = p.f;
  mpz_class extra = 0;
  for (const auto& b : p.blocks) {
    mpz_class al = b.al, at = b.at, be = b.be;
    mpz_class inner = 1;  // γ_2 ... γ_{r-1}
    for (std::size_t k = 2; k < b.r; ++k) {
      gamma += b.g[k - 2];
      inner *= b.g[k - 2];
    }
    gamma += al + at;
    mpz_class last = b.g.back();
    mpz_class bj = al * be * inner * last;
    mpz_class tj = at * inner * (bj - be) - 1;
    extra += last * tj - bj;
  }
  return 1 - gamma + extra;
}

mpz_class posdet_det(const PosDetParams& p) {
  mpz_class a = p.a, al = p.al, at = p.at, be = p.be, ga = p.ga;
  return be * al * at * ga * ga - al * be * ga - at * be * ga - al - at - ga - a + 1;
}

mpz_class diag_det(const DiagParams& p) {
  std::vector<mpz_class> n(p.n.begin(), p.n.end());
  mpz_class total = product(n);
  mpz_class k = static_cast<unsigned long>(n.size());
  mpz_class sum = 0;
  for (std::size_t i = 0; i < n.size(); ++i) sum += total / n[i];
  return -(k - 1) * total + sum;
}

// Invariant factors of a diagonal matrix, by prime-wise sorting of exponents.
std::vector<mpz_class> invariant_factors(std::vector<mpz_class> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
  }
  std::vector<mpz_class> out;
  for (auto& x : d) {
    if (abs(x) > 1) out.push_back(abs(x));
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::size_t parse_count(const std::string& v) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::InvalidParams, "expected a positive integer, got '" + v + "'");
  }
  return std::stoul(v);
}

std::vector<std::size_t> parse_counts(const std::string& v) {
  std::vector<std::size_t> out;
  for (const auto& x : split(v, ':')) out.push_back(parse_count(x));
  return out;
}

std::map<std::string, std::string> parse_pairs(const std::string& text) {
  std::map<std::string, std::string> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidParams, "expected key=value: " + item);
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : kv) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      throw Error(ErrorCode::InvalidParams, "unknown parameter " + k);
    }
  }
}

std::size_t get(const std::map<std::string, std::string>& kv, const char* key, std::size_t def) {
  auto it = kv.find(key);
  return it == kv.end() ? def : parse_count(it->second);
}

RParams parse_r(const std::string& text) {
  auto kv = parse_pairs(text);
  reject_unknown(kv, {"r", "al", "at", "be", "g"});
  RParams p;
  p.r = get(kv, "r", 2);
  p.al = get(kv, "al", 1);
  p.at = get(kv, "at", 1);
  p.be = get(kv, "be", 1);
  if (kv.count("g")) {
    p.g = parse_counts(kv["g"]);
    if (!kv.count("r")) p.r = p.g.size() + 1;
  } else {
    p.g.assign(p.r >= 2 ? p.r - 1 : 0, 1);
  }
  return p;
}

PosDetParams parse_posdet(const std::string& text) {
  auto kv = parse_pairs(text);
  reject_unknown(kv, {"a", "al", "at", "be", "ga"});
  return {get(kv, "a", 1), get(kv, "al", 1), get(kv, "at", 1), get(kv, "be", 1), get(kv, "ga", 1)};
}

DiagParams parse_diag(const std::string& text) {
  auto kv = parse_pairs(text);
  reject_unknown(kv, {"n"});
  if (!kv.count("n")) throw Error(ErrorCode::InvalidParams, "Diag needs n=n1:n2:...");
  return {parse_counts(kv["n"])};
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ':';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string format_r(const RParams& p) {
  return "r=" + std::to_string(p.r) + ",al=" + std::to_string(p.al) + ",at=" + std::to_string(p.at) +
         ",be=" + std::to_string(p.be) + ",g=" + join(p.g);
}

std::string format_posdet(const PosDetParams& p) {
  return "a=" + std::to_string(p.a) + ",al=" + std::to_string(p.al) + ",at=" + std::to_string(p.at) +
         ",be=" + std::to_string(p.be) + ",ga=" + std::to_string(p.ga);
}

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

}  // namespace

std::string family_name(const FamilyParams& p) {
  static const char* names[] = {"R", "B", "HSum", "Diag", "PosDet", "DPlusM"};
  return names[p.index()];
}

void validate(const FamilyParams& params) {
  std::visit(Overload{
                 [](const RParams& p) { validate_r(p); },
                 [](const BParams& p) {
                   if (p.r < 2) throw Error(ErrorCode::InvalidParams, "B needs r >= 2");
                   if (p.n.size() != p.r || p.c.size() != p.r) {
                     throw Error(ErrorCode::InvalidParams, "B needs r lengths and r multiplicities");
                   }
                   for (auto x : p.n) check_positive(x, "n");
                   for (auto x : p.c) check_positive(x, "c");
                   check_positive(p.d, "d");
                   check_positive(p.N, "N");
                 },
                 [](const HSumParams& p) {
                   if (p.blocks.empty()) throw Error(ErrorCode::InvalidParams, "HSum needs a block");
                   check_positive(p.f, "f");
                   for (const auto& b : p.blocks) validate_r(b);
                 },
                 [](const DiagParams& p) { validate_diag(p); },
                 [](const PosDetParams& p) { validate_posdet(p); },
                 [](const DPlusMParams& p) {
                   validate_diag(p.diag);
                   validate_posdet(p.modular);
                 },
             },
             params);
}

std::vector<Symbol> diag_letters(std::size_t k) {
  std::vector<Symbol> out;
  for (std::size_t i = 1; i <= k; ++i) out.emplace_back("a" + std::to_string(i));
  return out;
}

GeneratingList build_diag(const std::vector<std::size_t>& ns) {
  validate_diag({ns});
  const std::size_t k = ns.size();
  const auto a = diag_letters(k);
  const bool has_two = k >= 3 && std::count(ns.begin(), ns.end(), std::size_t{2}) > 0;
  std::vector<Word> words;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t l = 1; l + 1 < ns[i]; ++l) {
      Word tail(l, a[i]);
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        Word w{a[j]};
        w.insert(w.end(), tail.begin(), tail.end());
        words.push_back(w);
        for (std::size_t m = 0; m < k; ++m) {
          if (m == j) continue;
          Word v{a[m]};
          v.insert(v.end(), w.begin(), w.end());
          words.push_back(v);
          // A letter with n = 2 never ends a word, so a run a_x^(n_x - 1) followed by two
          // single letters needs a three letter prefix.
          if (!has_two) continue;
          for (std::size_t q = 0; q < k; ++q) {
            if (q == m) continue;
            Word u{a[q]};
            u.insert(u.end(), v.begin(), v.end());
            words.push_back(std::move(u));
          }
        }
      }
    }
  }
  return GeneratingList(std::move(words));
}

namespace {

GeneratingList build_posdet(const PosDetParams& p) {
  GeneratingList base({letters({"a"}), letters({"al"}), letters({"at"}), letters({"ga"}),
                       letters({"al", "ga", "be"}), letters({"be", "at", "ga"})});
  return fragment_all(base, {{"a", p.a}, {"al", p.al}, {"at", p.at}, {"be", p.be}, {"ga", p.ga}});
}

GeneratingList build_r(const RParams& p, const std::string& suffix) {
  return fragment_all(GeneratingList(r_words(p, suffix)), r_counts(p, suffix));
}

GeneratingList build_b(const BParams& p) {
  std::vector<Word> words;
  auto block = [](const std::string& base, std::size_t len) {
    Word w;
    for (std::size_t j = 1; j <= len; ++j) w.emplace_back(base + "_" + std::to_string(j));
    return w;
  };
  std::vector<Word> alpha, alpha_t;
  std::vector<std::vector<Word>> gamma(p.r + 1);
  for (std::size_t i = 1; i <= p.c[0]; ++i) {
    alpha.push_back(block("al" + std::to_string(i), p.n[0]));
    alpha_t.push_back(block("at" + std::to_string(i), p.n[0]));
  }
  for (std::size_t k = 2; k <= p.r; ++k) {
    for (std::size_t i = 1; i <= p.c[k - 1]; ++i) {
      gamma[k].push_back(block("g" + std::to_string(k) + "." + std::to_string(i), p.n[k - 1]));
    }
  }
  words.insert(words.end(), alpha.begin(), alpha.end());
  words.insert(words.end(), alpha_t.begin(), alpha_t.end());
  for (std::size_t k = 2; k <= p.r; ++k) words.insert(words.end(), gamma[k].begin(), gamma[k].end());

  // All choices gamma_{2,i_2} ... gamma_{r,i_r}.
  std::vector<Word> tails{{}};
  for (std::size_t k = 2; k <= p.r; ++k) {
    std::vector<Word> next;
    for (const auto& t : tails) {
      for (const auto& g : gamma[k]) {
        Word w = t;
        w.insert(w.end(), g.begin(), g.end());
        next.push_back(w);
      }
    }
    tails = std::move(next);
  }
  for (std::size_t l = 1; l <= p.d; ++l) {
    Word beta(p.N, Symbol("be" + std::to_string(l)));
    for (std::size_t i = 0; i < p.c[0]; ++i) {
      for (const auto& t : tails) {
        Word w1 = alpha[i];
        w1.insert(w1.end(), t.begin(), t.end());
        w1.insert(w1.end(), beta.begin(), beta.end());
        words.push_back(w1);
        Word w2 = beta;
        w2.insert(w2.end(), alpha_t[i].begin(), alpha_t[i].end());
        w2.insert(w2.end(), t.begin(), t.end());
        words.push_back(w2);
      }
    }
  }
  return GeneratingList(std::move(words));
}

}  // namespace

GeneratingList build_family(const FamilyParams& params) {
  validate(params);
  return std::visit(
      Overload{
          [](const RParams& p) { return build_r(p, ""); },
          [](const BParams& p) { return build_b(p); },
          [](const HSumParams& p) {
            std::vector<Word> words;
            for (std::size_t j = 0; j < p.blocks.size(); ++j) {
              auto block = build_r(p.blocks[j], "." + std::to_string(j + 1));
              words.insert(words.end(), block.words().begin(), block.words().end());
            }
            words.push_back(letters({"a"}));
            return fragment_all(GeneratingList(std::move(words)), {{"a", p.f}});
          },
          [](const DiagParams& p) { return build_diag(p.n); },
          [](const PosDetParams& p) { return build_posdet(p); },
          [](const DPlusMParams& p) {
            auto ld = build_diag(p.diag.n);
            auto lm = build_posdet(p.modular);
            std::vector<Word> words = ld.words();
            words.insert(words.end(), lm.words().begin(), lm.words().end());
            for (const auto& ai : diag_letters(p.diag.n.size())) {
              for (const auto& w : lm.words()) {
                Word x{ai};
                x.insert(x.end(), w.begin(), w.end());
                words.push_back(std::move(x));
              }
            }
            return GeneratingList(std::move(words));
          },
      },
      params);
}

RParams matched_r(const BParams& p) {
  RParams r;
  r.r = p.r;
  r.al = p.c[0];
  r.at = p.c[0];
  r.be = p.d;
  for (std::size_t k = 2; k <= p.r; ++k) r.g.push_back(p.c[k - 1]);
  return r;
}

ClosedForm closed_form_invariant(const FamilyParams& params) {
  validate(params);
  return std::visit(
      Overload{
          [](const RParams& p) { return cyclic_form(r_det(p)); },
          [](const BParams&) -> ClosedForm {
            throw Error(ErrorCode::NoClosedForm, "B lists are compared through the matched R list");
          },
          [](const HSumParams& p) { return cyclic_form(hsum_det(p)); },
          [](const DiagParams& p) {
            ClosedForm f;
            f.det = diag_det(p);
            f.sign = sgn(f.det);
            if (has_chain(p)) {
              std::vector<mpz_class> d{diag_m(p)};
              for (std::size_t i = 2; i < p.n.size(); ++i) d.emplace_back(static_cast<unsigned long>(p.n[i]));
              f.torsion = invariant_factors(d);
              f.cyclic = f.torsion->size() <= 1;
            }
            return f;
          },
          [](const PosDetParams& p) { return cyclic_form(posdet_det(p)); },
          [](const DPlusMParams& p) -> ClosedForm {
            if (p.modular.al != 1 || p.modular.at != 1 || p.modular.be != 1 || !has_chain(p.diag)) {
              throw Error(ErrorCode::NoClosedForm, "needs al=at=be=1 and a divisibility chain");
            }
            ClosedForm f;
            f.det = dplusm_det(p.diag, dplusm_conjectured_x(p.modular));
            f.sign = sgn(f.det);
            return f;
          },
      },
      params);
}

mpz_class diag_m(const DiagParams& p) {
  // m = n1 n2 (k - 1 - Σ 1/n_i)
  mpq_class s = static_cast<unsigned long>(p.n.size() - 1);
  for (auto n : p.n) s -= mpq_class(1, static_cast<unsigned long>(n));
  s *= static_cast<unsigned long>(p.n[0] * p.n[1]);
  s.canonicalize();
  if (s.get_den() != 1) throw Error(ErrorCode::NoClosedForm, "m is not an integer");
  return s.get_num();
}

mpz_class dplusm_det(const DiagParams& d, const mpz_class& x) {
  const auto& n = d.n;
  mpq_class sum = 0;
  for (auto ni : n) sum += mpq_class(static_cast<unsigned long>(n[0]), static_cast<unsigned long>(ni));
  mpq_class inner = (2 * x - 1) * sum - x * static_cast<unsigned long>(n.size() - 1) * static_cast<unsigned long>(n[0]);
  mpq_class tail = 1;
  for (std::size_t i = 1; i < n.size(); ++i) tail *= static_cast<unsigned long>(n[i]);
  mpq_class v = tail * inner;
  v.canonicalize();
  if (v.get_den() != 1) throw Error(ErrorCode::NoClosedForm, "determinant is not an integer");
  return v.get_num();
}

std::optional<mpz_class> dplusm_witness_x(const DiagParams& d, const mpz_class& det) {
  // det = P (x (2S - (k-1) n1) - S) with P = n2...nk and S = Σ n1/ni.
  const auto& n = d.n;
  mpq_class s = 0;
  for (auto ni : n) s += mpq_class(static_cast<unsigned long>(n[0]), static_cast<unsigned long>(ni));
  mpq_class p = 1;
  for (std::size_t i = 1; i < n.size(); ++i) p *= static_cast<unsigned long>(n[i]);
  mpq_class slope = 2 * s - static_cast<unsigned long>(n.size() - 1) * static_cast<unsigned long>(n[0]);
  if (slope == 0) return std::nullopt;
  mpq_class x = (mpq_class(det) / p + s) / slope;
  x.canonicalize();
  if (x.get_den() != 1) return std::nullopt;
  return x.get_num();
}

mpz_class dplusm_conjectured_x(const PosDetParams& p) {
  mpz_class g = p.ga;
  return g * g - 3 * g - static_cast<unsigned long>(p.a) - 1;
}

PosDetParams search_det(long k) {
  for (long g = 4;; ++g) {
    long a = g * g - 3 * g - 1 - k;
    if (a >= 1) return {static_cast<std::size_t>(a), 1, 1, 1, static_cast<std::size_t>(g)};
  }
}

FamilyParams parse_family_params(const std::string& variant, const std::string& text) {
  std::string v;
  for (char c : variant) v += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  FamilyParams out;
  if (v == "r") {
    out = parse_r(text);
  } else if (v == "b") {
    auto kv = parse_pairs(text);
    reject_unknown(kv, {"r", "n", "c", "d", "N"});
    BParams p;
    p.n = kv.count("n") ? parse_counts(kv["n"]) : std::vector<std::size_t>{1, 1};
    p.r = get(kv, "r", p.n.size());
    p.c = kv.count("c") ? parse_counts(kv["c"]) : std::vector<std::size_t>(p.r, 1);
    p.d = get(kv, "d", 1);
    p.N = get(kv, "N", 1);
    out = p;
  } else if (v == "hsum") {
    auto parts = split(text, '/');
    HSumParams p;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i == 0 && parts[0].rfind("f=", 0) == 0 && parts[0].find(',') == std::string::npos) {
        p.f = parse_count(parts[0].substr(2));
        continue;
      }
      p.blocks.push_back(parse_r(parts[i]));
    }
    out = p;
  } else if (v == "diag") {
    out = parse_diag(text);
  } else if (v == "posdet") {
    out = parse_posdet(text);
  } else if (v == "dplusm") {
    auto parts = split(text, '/');
    if (parts.size() != 2) throw Error(ErrorCode::InvalidParams, "DPlusM needs n=.../posdet params");
    out = DPlusMParams{parse_diag(parts[0]), parse_posdet(parts[1])};
  } else {
    throw Error(ErrorCode::InvalidParams, "unknown family " + variant);
  }
  validate(out);
  return out;
}

std::string format_family_params(const FamilyParams& params) {
  return std::visit(
      Overload{
          [](const RParams& p) { return format_r(p); },
          [](const BParams& p) {
            return "r=" + std::to_string(p.r) + ",n=" + join(p.n) + ",c=" + join(p.c) +
                   ",d=" + std::to_string(p.d) + ",N=" + std::to_string(p.N);
          },
          [](const HSumParams& p) {
            std::string out = "f=" + std::to_string(p.f);
            for (const auto& b : p.blocks) out += "/" + format_r(b);
            return out;
          },
          [](const DiagParams& p) { return "n=" + join(p.n); },
          [](const PosDetParams& p) { return format_posdet(p); },
          [](const DPlusMParams& p) { return "n=" + join(p.diag.n) + "/" + format_posdet(p.modular); },
      },
      params);
}

}  // namespace sofic
