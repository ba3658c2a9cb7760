#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sofic/graph.hpp"
#include "sofic/lang.hpp"

namespace sofic {

/// Two distinct cycles of the right Fischer cover carrying the same label.
struct SoficWitness {
  Word label;
  std::vector<std::size_t> cycle1;  // vertices of the first cycle, closing back to cycle1[0]
  std::vector<std::size_t> cycle2;
};

struct SftCertificate {
  bool is_sft = false;
  std::size_t memory = 0;               // valid when is_sft
  std::optional<SoficWitness> witness;  // present when !is_sft
  LabelledGraph presentation;            // right Fischer cover the verdict was read off

  std::string describe() const;
};

SftCertificate sft_certificate(const GeneratingList& list);
SftCertificate sft_certificate(const LabelledGraph& presentation_of_shift);

/// True when the witness is two distinct closed walks with the given label.
bool replays(const SoficWitness& w, const LabelledGraph& presentation);

enum class CoverKind { Fischer, Krieger };

/// Left Fischer (or Krieger) cover of an irreducible SFT. Vertex i is the class of the
/// m-blocks u whose set of possible start states in the right Fischer cover is
/// fingerprints[i]; representatives[i] is the least such block.
struct Cover {
  LabelledGraph graph;
  CoverKind kind = CoverKind::Fischer;
  std::size_t memory = 0;
  std::vector<std::vector<std::size_t>> fingerprints;
  std::vector<Word> representatives;
  LabelledGraph presentation;
  std::size_t components = 1;

  /// States of `presentation` from which w can be read.
  std::vector<std::size_t> start_set(const Word& w) const;
  /// States of `presentation` reachable by reading w from any state.
  std::vector<std::size_t> end_set(const Word& w) const;
  /// Vertex of the class of the first `memory` symbols of w (requires |w| >= memory).
  std::optional<std::size_t> vertex_of(const Word& w) const;
  std::optional<std::size_t> vertex_by_descriptor(const std::string& d) const;
  /// Vertex whose fingerprint is the given start set.
  std::optional<std::size_t> vertex_of_start_set(const std::vector<std::size_t>& s) const;

  /// The m-block fingerprint of a vertex: all v in B_m with v·u allowed.
  std::set<Word> fingerprint_words(std::size_t vertex) const;

 private:
  friend Cover left_fischer_cover(const GeneratingList&, CoverKind);
  std::map<std::vector<std::size_t>, std::size_t> by_fingerprint_;
};

Cover left_fischer_cover(const GeneratingList& list, CoverKind kind = CoverKind::Fischer);

/// Minimal forbidden words (length at most m+1).
std::set<Word> infer_forbidden_words(const GeneratingList& list);

/// B_n(X(L)).
std::set<Word> block_language(const GeneratingList& list, std::size_t n);

}  // namespace sofic
