#include "sofic/lang.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "sofic/error.hpp"

namespace sofic {

namespace {

// Length of the UTF-8 sequence starting with byte c, or 0 if c cannot start one.
std::size_t utf8_length(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) return 2;
  if ((c & 0xF0) == 0xE0) return 3;
  if ((c & 0xF8) == 0xF0) return 4;
  return 0;
}

// Splits into code points; returns false on invalid UTF-8.
bool split_code_points(std::string_view text, std::vector<std::string>& out) {
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = utf8_length(static_cast<unsigned char>(text[i]));
    if (len == 0 || i + len > text.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return false;
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return true;
}

bool is_single_code_point(const std::string& s) {
  return !s.empty() && utf8_length(static_cast<unsigned char>(s[0])) == s.size();
}

std::vector<std::string> split_spaces(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

void check_fresh(const GeneratingList& list, const std::vector<Symbol>& fresh) {
  std::set<Symbol> seen;
  for (const auto& f : fresh) {
    if (f.token.empty() || list.contains_symbol(f) || !seen.insert(f).second) {
      throw Error(ErrorCode::FreshSymbolCollision, f.token);
    }
  }
}

}  // namespace

Word word_from_chars(std::string_view text) {
  std::vector<std::string> parts;
  if (!split_code_points(text, parts)) throw Error(ErrorCode::MalformedLine, "invalid UTF-8");
  Word w;
  for (auto& p : parts) w.emplace_back(std::move(p));
  return w;
}

Word word_from_tokens(std::string_view text) {
  Word w;
  for (auto& t : split_spaces(text)) w.emplace_back(std::move(t));
  return w;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "ε";
  bool compact = std::all_of(w.begin(), w.end(),
                             [](const Symbol& s) { return is_single_code_point(s.token); });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += w[i].token;
  }
  return out;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

std::size_t count_symbol(const Word& w, const Symbol& s) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), s));
}

GeneratingList::GeneratingList(std::vector<Word> words) : words_(std::move(words)) {
  if (words_.empty()) throw Error(ErrorCode::EmptyList, "");
  for (const auto& w : words_) {
    if (w.empty()) throw Error(ErrorCode::EmptyWord, "");
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  std::set<Symbol> letters;
  for (const auto& w : words_) letters.insert(w.begin(), w.end());
  alphabet_.assign(letters.begin(), letters.end());
}

bool GeneratingList::contains_symbol(const Symbol& s) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), s);
}

std::size_t GeneratingList::total_length() const {
  std::size_t n = 0;
  for (const auto& w : words_) n += w.size();
  return n;
}

std::size_t GeneratingList::max_word_length() const {
  std::size_t n = 0;
  for (const auto& w : words_) n = std::max(n, w.size());
  return n;
}

std::size_t GeneratingList::min_word_length() const {
  std::size_t n = words_.front().size();
  for (const auto& w : words_) n = std::min(n, w.size());
  return n;
}

GeneratingList parse_list(std::string_view text, const ParseOptions& options) {
  std::vector<Word> words;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const std::string where = "line " + std::to_string(line_no);
    for (char c : line) {
      auto u = static_cast<unsigned char>(c);
      if ((u < 0x20 && c != '\t') || u == 0x7F) throw Error(ErrorCode::MalformedLine, where);
    }
    auto tokens = split_spaces(line);
    if (tokens.empty()) continue;
    if (tokens.front().front() == '#') continue;

    for (const auto& t : tokens) {
      std::vector<std::string> check;
      if (!split_code_points(t, check)) throw Error(ErrorCode::MalformedLine, where);
    }
    if (tokens.size() == 1 && (tokens[0] == "ε" || tokens[0] == "\"\"")) {
      throw Error(ErrorCode::EmptyWord, where);
    }
    Word w;
    if (tokens.size() == 1 && !options.multichar) {
      w = word_from_chars(tokens[0]);
    } else {
      for (auto& t : tokens) w.emplace_back(std::move(t));
    }
    words.push_back(std::move(w));
    if (nl == text.size()) break;
  }
  if (words.empty()) throw Error(ErrorCode::EmptyList, "no words");
  return GeneratingList(std::move(words));
}

GeneratingList read_list_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_list(buf.str(), options);
}

std::string format_list(const GeneratingList& list) {
  // Compact lines only when every symbol is a single code point; otherwise the
  // output round-trips through parse_list with multichar set.
  bool compact = std::all_of(list.alphabet().begin(), list.alphabet().end(),
                             [](const Symbol& s) { return is_single_code_point(s.token); });
  std::string out;
  for (const auto& w : list.words()) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!compact && i > 0) out += ' ';
      out += w[i].token;
    }
    out += '\n';
  }
  return out;
}

GeneratingList reversed(const GeneratingList& list) {
  std::vector<Word> words;
  for (const auto& w : list.words()) words.push_back(reversed(w));
  return GeneratingList(std::move(words));
}

std::vector<Symbol> fresh_symbols(const Symbol& s, std::size_t k) {
  std::vector<Symbol> out;
  for (std::size_t i = 1; i <= k; ++i) out.emplace_back(s.token + "#" + std::to_string(i));
  return out;
}

GeneratingList fragment(const GeneratingList& list, const Symbol& s, std::size_t k,
                        std::optional<std::vector<Symbol>> fresh) {
  if (!list.contains_symbol(s)) throw Error(ErrorCode::SymbolNotInAlphabet, s.token);
  if (k == 0) throw Error(ErrorCode::InvalidParams, "fragment count must be positive");
  std::vector<Symbol> names = fresh ? *fresh : fresh_symbols(s, k);
  if (names.size() != k) throw Error(ErrorCode::InvalidParams, "fresh symbol count");
  check_fresh(list, names);

  std::vector<Word> out;
  for (const auto& w : list.words()) {
    Word cur = w;
    std::function<void(std::size_t)> expand = [&](std::size_t i) {
      if (i == w.size()) {
        out.push_back(cur);
        return;
      }
      if (w[i] != s) {
        expand(i + 1);
        return;
      }
      for (const auto& f : names) {
        cur[i] = f;
        expand(i + 1);
      }
    };
    expand(0);
  }
  return GeneratingList(std::move(out));
}

GeneratingList defragment(const GeneratingList& list, const std::vector<Symbol>& fresh,
                          const Symbol& target) {
  std::set<Symbol> from(fresh.begin(), fresh.end());
  std::vector<Word> out;
  for (auto w : list.words()) {
    for (auto& c : w) {
      if (from.count(c)) c = target;
    }
    out.push_back(std::move(w));
  }
  return GeneratingList(std::move(out));
}

ListSum sum_lists(const GeneratingList& l1, const GeneratingList& l2) {
  std::vector<Word> words = l1.words();
  words.insert(words.end(), l2.words().begin(), l2.words().end());
  bool disjoint = std::none_of(l2.alphabet().begin(), l2.alphabet().end(),
                               [&](const Symbol& s) { return l1.contains_symbol(s); });
  return {GeneratingList(std::move(words)), disjoint};
}

GeneratingList symbol_expand(const GeneratingList& list, const Symbol& s, std::size_t p,
                             std::optional<std::vector<Symbol>> fresh) {
  if (!list.contains_symbol(s)) throw Error(ErrorCode::SymbolNotInAlphabet, s.token);
  if (p < 2) throw Error(ErrorCode::InvalidParams, "expansion length must be at least 2");
  std::vector<Symbol> names = fresh ? *fresh : fresh_symbols(s, p);
  if (names.size() != p) throw Error(ErrorCode::InvalidParams, "fresh symbol count");
  check_fresh(list, names);

  std::vector<Word> out;
  for (const auto& w : list.words()) {
    Word x;
    for (const auto& c : w) {
      if (c == s) {
        x.insert(x.end(), names.begin(), names.end());
      } else {
        x.push_back(c);
      }
    }
    out.push_back(std::move(x));
  }
  return GeneratingList(std::move(out));
}

Word partitioned_word(const GeneratingList& list, const Partitioning& p) {
  Word all;
  for (auto g : p.generators) {
    const auto& w = list.words().at(g);
    all.insert(all.end(), w.begin(), w.end());
  }
  if (p.beginning.size() + p.end.size() > all.size()) return {};
  return Word(all.begin() + static_cast<std::ptrdiff_t>(p.beginning.size()),
              all.end() - static_cast<std::ptrdiff_t>(p.end.size()));
}

PartitioningSet enumerate_partitionings(const GeneratingList& list, const Word& w,
                                        std::size_t max_generators) {
  PartitioningSet result;
  if (w.empty() || max_generators == 0) {
    result.complete = w.empty();
    return result;
  }
  const auto& gens = list.words();
  // Every generator of a normalized partitioning covers at least one letter of w.
  result.complete = max_generators >= w.size();

  std::vector<std::size_t> used;
  Word beginning;
  // Matches generators from position pos of w onwards.
  std::function<void(std::size_t)> extend = [&](std::size_t pos) {
    if (used.size() == max_generators) return;
    std::size_t rest = w.size() - pos;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto& g = gens[j];
      std::size_t n = std::min(rest, g.size());
      if (!std::equal(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(n),
                      w.begin() + static_cast<std::ptrdiff_t>(pos))) {
        continue;
      }
      used.push_back(j);
      if (rest <= g.size()) {
        result.partitionings.insert(
            {beginning, used, Word(g.begin() + static_cast<std::ptrdiff_t>(rest), g.end())});
      } else {
        extend(pos + g.size());
      }
      used.pop_back();
    }
  };

  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    for (std::size_t b = 0; b < g.size(); ++b) {
      std::size_t avail = g.size() - b;
      std::size_t n = std::min(avail, w.size());
      if (!std::equal(g.begin() + static_cast<std::ptrdiff_t>(b),
                      g.begin() + static_cast<std::ptrdiff_t>(b + n), w.begin())) {
        continue;
      }
      beginning.assign(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(b));
      used.assign(1, i);
      if (w.size() <= avail) {
        result.partitionings.insert(
            {beginning, used, Word(g.begin() + static_cast<std::ptrdiff_t>(b + w.size()), g.end())});
      } else {
        extend(avail);
      }
    }
  }
  return result;
}

std::string_view to_string(BorderingStatus status) {
  switch (status) {
    case BorderingStatus::StronglyBordering: return "strongly_bordering";
    case BorderingStatus::Bordering: return "bordering";
    case BorderingStatus::NotBordering: return "not_bordering";
  }
  return "unknown";
}

BorderingStatus bordering_status(const GeneratingList& list, const Word& w, Side side,
                                 std::size_t max_generators) {
  auto parts = enumerate_partitionings(list, w, max_generators);
  if (parts.partitionings.empty()) throw Error(ErrorCode::NotInLanguage, to_string(w));
  std::size_t clean = 0;
  for (const auto& p : parts.partitionings) {
    const Word& cut = side == Side::Left ? p.beginning : p.end;
    if (cut.empty()) ++clean;
  }
  if (clean == parts.partitionings.size()) return BorderingStatus::StronglyBordering;
  if (clean > 0) return BorderingStatus::Bordering;
  return BorderingStatus::NotBordering;
}

}  // namespace sofic
