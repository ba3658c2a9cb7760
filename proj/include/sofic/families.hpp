#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sofic/lang.hpp"

namespace sofic {

/// {al, at, g2..gr, al g2..gr be, be at g2..gr}, each letter fragmented into the given count.
struct RParams {
  std::size_t r = 2;
  std::size_t al = 1, at = 1, be = 1;
  std::vector<std::size_t> g;  // counts for g2..gr (size r-1)
};

struct BParams {
  std::size_t r = 2;
  std::vector<std::size_t> n;  // word lengths n1..nr
  std::vector<std::size_t> c;  // multiplicities c1..cr
  std::size_t d = 1;
  std::size_t N = 1;
};

/// Union of R blocks over disjoint alphabets plus a free letter fragmented into f copies.
struct HSumParams {
  std::vector<RParams> blocks;
  std::size_t f = 1;
};

struct DiagParams {
  std::vector<std::size_t> n;  // n1..nk
};

/// {a, al, at, ga, al ga be, be at ga} with fragmentation counts.
struct PosDetParams {
  std::size_t a = 1, al = 1, at = 1, be = 1, ga = 1;
};

/// L_d ∪ L ∪ {a_i w : w ∈ L} with L a fragmented PosDet list.
struct DPlusMParams {
  DiagParams diag;
  PosDetParams modular;
};

using FamilyParams =
    std::variant<RParams, BParams, HSumParams, DiagParams, PosDetParams, DPlusMParams>;

std::string family_name(const FamilyParams& p);
void validate(const FamilyParams& p);

GeneratingList build_family(const FamilyParams& p);

/// Unfragmented diagonal list L_d over the letters a1..ak.
GeneratingList build_diag(const std::vector<std::size_t>& ns);
std::vector<Symbol> diag_letters(std::size_t k);

struct ClosedForm {
  mpz_class det;
  int sign = 0;
  /// Predicted invariant factors (> 1) when the closed form determines them.
  std::optional<std::vector<mpz_class>> torsion;
  /// True when the group is predicted to be cyclic.
  bool cyclic = false;
};

ClosedForm closed_form_invariant(const FamilyParams& p);

/// R parameters whose fragmented list is flow equivalent to the B list.
RParams matched_r(const BParams& p);
/// m = n1 n2 (k - 1 - Σ 1/n_i) for a diagonal divisibility chain.
mpz_class diag_m(const DiagParams& p);

/// Determinant n2..nk((2x-1) Σ n1/ni - x(k-1) n1) of the diagonal-plus-modular family.
mpz_class dplusm_det(const DiagParams& d, const mpz_class& x);
/// The integer x with dplusm_det(d, x) = det, when one exists.
std::optional<mpz_class> dplusm_witness_x(const DiagParams& d, const mpz_class& det);
/// The conjectured x for a PosDet block with al = at = be = 1.
mpz_class dplusm_conjectured_x(const PosDetParams& p);

/// PosDet parameters with al = at = be = 1 whose closed-form determinant is k.
PosDetParams search_det(long k);

/// Parses the params syntax used by the command line, e.g. "r=2,al=1,g=2" or "n=4:2".
FamilyParams parse_family_params(const std::string& variant, const std::string& text);
std::string format_family_params(const FamilyParams& p);

}  // namespace sofic
