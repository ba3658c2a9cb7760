#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sofic/graph.hpp"
#include "sofic/lang.hpp"

namespace sofic {

/// Dense matrix of arbitrary precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const;

  IntMatrix transpose() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> data_;
};

/// D = U * M * V with U, V unimodular and D diagonal with d_1 | d_2 | ... , all d_i >= 0.
struct SmithDecomposition {
  IntMatrix D, U, V;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant.
mpz_class determinant(const IntMatrix& m);

/// Entry (i,j) is the sum of the weights of the labels of edges i -> j. Without a weight
/// map every label counts 1; a given map must cover the whole alphabet.
IntMatrix adjacency_matrix(const LabelledGraph& g,
                           const std::optional<std::map<Symbol, mpz_class>>& weights = std::nullopt);

struct BowenFranksClass {
  int sign = 0;                    // sign of det(Id - A)
  std::vector<mpz_class> torsion;  // invariant factors > 1, by divisibility
  std::size_t free_rank = 0;
  mpz_class det;                   // det(Id - A)

  bool operator==(const BowenFranksClass& o) const;
  /// Number of cyclic summands of the group.
  std::size_t generators() const { return torsion.size() + free_rank; }
  bool cyclic() const { return generators() <= 1; }
  std::string to_string() const;
};

BowenFranksClass signed_bowen_franks(const IntMatrix& a);

enum class FlowVerdict { Yes, No, TrivialGuard };
std::string to_string(FlowVerdict v);

bool is_irreducible_matrix(const IntMatrix& a);
/// Permutation matrices present disjoint unions of cycles.
bool is_permutation_matrix(const IntMatrix& a);

FlowVerdict flow_equivalent(const IntMatrix& a, const IntMatrix& b);

struct EntropyResult {
  double value = 0;  // log of the spectral radius
  double lower = 0;  // certified bracket for the log
  double upper = 0;
};

EntropyResult entropy(const IntMatrix& a, double tol = 1e-9);

}  // namespace sofic
