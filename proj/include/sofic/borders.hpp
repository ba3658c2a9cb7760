#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sofic/cover.hpp"
#include "sofic/graph.hpp"
#include "sofic/lang.hpp"

namespace sofic {

struct GeneratorWord {
  Word word;
  bool minimal = false;
};

/// Ray w·v^∞ given by a finite prefix and a repeated cycle.
struct Lasso {
  Word prefix;
  Word cycle;
};

struct BorderReport {
  std::set<std::size_t> border_vertices;
  std::optional<std::size_t> universal_vertex;
  std::optional<Lasso> universal_ray;  // a strongly left-bordering ray of the universal vertex
  bool universal_from_fast_path = false;
  /// Length-m suffixes of concatenations of generators.
  std::set<Word> p0_fingerprint;
  std::map<std::size_t, std::vector<GeneratorWord>> generators;
  std::size_t search_bound = 0;
  /// True when the concatenation enumeration stopped early at the size cap.
  bool generators_truncated = false;
  std::optional<bool> left_modular;
};

std::size_t default_generator_bound(const GeneratingList& list, const Cover& cover);

BorderReport border_report(const GeneratingList& list, const Cover& cover,
                           std::optional<std::size_t> generator_bound = std::nullopt);

/// Exact search for a strongly left-bordering ray over reading configurations of the loop graph.
std::optional<Lasso> strongly_left_bordering_ray(const GeneratingList& list);

/// True when w is intrinsically synchronizing in X(L).
bool is_intrinsically_synchronizing(const Cover& cover, const Word& w);

struct ModularityResult {
  bool modular = false;
  /// Label of a cover path into the universal vertex violating the definition.
  std::optional<Word> counterexample;
  std::optional<std::size_t> start_vertex;
  bool start_is_border = false;
};

/// Left side decides on the cover of L, right side on the cover of the reversed list.
ModularityResult is_modular(const GeneratingList& list, Side side);
ModularityResult is_modular(const GeneratingList& list, const Cover& cover, const BorderReport& report);

struct SurgeryCover {
  LabelledGraph graph;
  std::optional<std::size_t> universal_vertex;
};

/// Left Fischer cover of X(L1 ∪ L2) assembled from the two covers of left-modular lists.
SurgeryCover sum_surgery_fischer(const Cover& cover1, const BorderReport& report1,
                                 const Cover& cover2, const BorderReport& report2);

/// Runs the cover, border and modularity pipeline on both lists, then the sum surgery.
SurgeryCover sum_surgery(const GeneratingList& l1, const GeneratingList& l2);

/// Cover of L_d ∪ L_m ∪ {a_i w : w ∈ L_m} for the diagonal list with parameters ns.
SurgeryCover diag_sum_cover(const std::vector<std::size_t>& ns, const GeneratingList& modular_list);

}  // namespace sofic
