#pragma once

// Alphabets, words and generating lists of renewal systems, together with the
// list-level transformations (fragmentation, sums, symbol expansion) and the
// partitioning machinery used to classify bordering words.

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sofic {

/// A letter of a finite alphabet, identified by its token text.
struct Symbol {
  std::string token;

  Symbol() = default;
  explicit Symbol(std::string t) : token(std::move(t)) {}

  auto operator<=>(const Symbol&) const = default;
  bool operator==(const Symbol&) const = default;
};

using Word = std::vector<Symbol>;

/// Builds a word from single-character tokens ("aab" -> a,a,b). Splits by UTF-8 code point.
Word word_from_chars(std::string_view text);
/// Builds a word from whitespace separated tokens ("a1 a2" -> a1,a2).
Word word_from_tokens(std::string_view text);

/// Concatenated when every token is one code point, space separated otherwise; "ε" for the empty word.
std::string to_string(const Word& w);
Word reversed(const Word& w);
std::size_t count_symbol(const Word& w, const Symbol& s);

/// A finite, duplicate-free, non-empty list of non-empty words.
/// Words are kept in lexicographic order so that equal lists compare equal.
class GeneratingList {
 public:
  explicit GeneratingList(std::vector<Word> words);

  const std::vector<Word>& words() const noexcept { return words_; }
  /// Sorted symbols occurring in some word.
  const std::vector<Symbol>& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool contains_symbol(const Symbol& s) const;
  std::size_t total_length() const;
  std::size_t max_word_length() const;
  std::size_t min_word_length() const;

  bool operator==(const GeneratingList& other) const { return words_ == other.words_; }

 private:
  std::vector<Word> words_;
  std::vector<Symbol> alphabet_;
};

struct ParseOptions {
  /// Treat a line without spaces as a single multi-character token.
  bool multichar = false;
};

/// Parses the list file format: `#` comment lines, blank lines skipped, one word per line,
/// space separated tokens (or single characters when a line has no spaces).
GeneratingList parse_list(std::string_view text, const ParseOptions& options = {});
GeneratingList read_list_file(const std::string& path, const ParseOptions& options = {});
std::string format_list(const GeneratingList& list);

GeneratingList reversed(const GeneratingList& list);

/// Default fresh names `s#1, ..., s#k`.
std::vector<Symbol> fresh_symbols(const Symbol& s, std::size_t k);

/// Preimage of the list under the map collapsing `fresh` onto `s`. A word with l
/// occurrences of `s` contributes k^l words.
GeneratingList fragment(const GeneratingList& list, const Symbol& s, std::size_t k,
                        std::optional<std::vector<Symbol>> fresh = std::nullopt);

/// Image under the map sending every symbol of `fresh` to `target` (undoes `fragment`).
GeneratingList defragment(const GeneratingList& list, const std::vector<Symbol>& fresh,
                          const Symbol& target);

struct ListSum {
  GeneratingList list;
  bool alphabet_disjoint;
};

ListSum sum_lists(const GeneratingList& l1, const GeneratingList& l2);

/// Replaces every occurrence of `s` by the word fresh_1 ... fresh_p.
GeneratingList symbol_expand(const GeneratingList& list, const Symbol& s, std::size_t p,
                             std::optional<std::vector<Symbol>> fresh = std::nullopt);

/// A window of a concatenation g_1 ... g_k of generators. The beginning is a proper
/// prefix of g_1 and the end a proper suffix of g_k.
struct Partitioning {
  Word beginning;
  std::vector<std::size_t> generators;  // indices into GeneratingList::words()
  Word end;

  auto operator<=>(const Partitioning&) const = default;
};

/// Reassembles the partitioned word, i.e. strips beginning and end off g_1 ... g_k.
Word partitioned_word(const GeneratingList& list, const Partitioning& p);

struct PartitioningSet {
  std::set<Partitioning> partitionings;
  /// True when the generator bound cannot have cut off any partitioning.
  bool complete = true;
};

PartitioningSet enumerate_partitionings(const GeneratingList& list, const Word& w,
                                        std::size_t max_generators);

enum class Side { Left, Right };
enum class BorderingStatus { StronglyBordering, Bordering, NotBordering };

std::string_view to_string(BorderingStatus status);

/// Left: classification by empty beginnings. Right: by empty ends.
BorderingStatus bordering_status(const GeneratingList& list, const Word& w, Side side,
                                 std::size_t max_generators);

}  // namespace sofic
