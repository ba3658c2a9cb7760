#include "sofic/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sofic/error.hpp"

namespace sofic {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::InvalidParams, "ragged matrix");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::InvalidParams, "dimension mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  }
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::InvalidParams, "dimension mismatch");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
  return out;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ",";
      out += (*this)(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += q * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithDecomposition s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = s.D;
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Least absolute value in the remaining block, first in row-major order.
      std::size_t pi = m.rows(), pj = 0;
      for (std::size_t i = t; i < m.rows(); ++i) {
        for (std::size_t j = t; j < m.cols(); ++j) {
          if (d(i, j) == 0) continue;
          if (pi == m.rows() || abs(d(i, j)) < abs(d(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == m.rows()) break;
      swap_rows(d, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(d, t, pj);
      swap_cols(s.V, t, pj);

      const mpz_class p = d(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i) {
        if (d(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), p.get_mpz_t());
        add_row(d, i, t, -q);
        add_row(s.U, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m.cols(); ++j) {
        if (d(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), p.get_mpz_t());
        add_col(d, j, t, -q);
        add_col(s.V, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: pull a non-multiple into row t and reduce again.
      bool divides = true;
      for (std::size_t i = t + 1; i < m.rows() && divides; ++i) {
        for (std::size_t j = t + 1; j < m.cols(); ++j) {
          if (d(i, j) % p != 0) {
            add_row(d, t, i, 1);
            add_row(s.U, t, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < m.cols(); ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m.rows(); ++j) s.U(t, j) = -s.U(t, j);
    }
  }
  return s;
}

mpz_class determinant(const IntMatrix& input) {
  if (!input.square()) throw Error(ErrorCode::InvalidParams, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      swap_rows(a, k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix adjacency_matrix(const LabelledGraph& g,
                           const std::optional<std::map<Symbol, mpz_class>>& weights) {
  std::vector<mpz_class> w(g.alphabet.size(), 1);
  if (weights) {
    for (std::size_t a = 0; a < g.alphabet.size(); ++a) {
      auto it = weights->find(g.alphabet[a]);
      if (it == weights->end()) throw Error(ErrorCode::MissingWeight, g.alphabet[a].token);
      w[a] = it->second;
    }
  }
  IntMatrix m(g.size(), g.size());
  for (const auto& e : g.edges) m(e.src, e.dst) += w[e.label];
  return m;
}

bool BowenFranksClass::operator==(const BowenFranksClass& o) const {
  return sign == o.sign && torsion == o.torsion && free_rank == o.free_rank;
}

std::string BowenFranksClass::to_string() const {
  std::string out = "sign=" + std::to_string(sign) + " torsion=[";
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (i) out += ",";
    out += torsion[i].get_str();
  }
  return out + "] free_rank=" + std::to_string(free_rank) + " det=" + det.get_str();
}

BowenFranksClass signed_bowen_franks(const IntMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidParams, "adjacency matrix must be square");
  IntMatrix m = IntMatrix::identity(a.rows()) - a;
  BowenFranksClass bf;
  bf.det = determinant(m);
  bf.sign = sgn(bf.det);
  auto snf = smith_normal_form(m);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const mpz_class& d = snf.D(i, i);
    if (d == 0) {
      ++bf.free_rank;
    } else if (d > 1) {
      bf.torsion.push_back(d);
    }
  }
  return bf;
}

std::string to_string(FlowVerdict v) {
  switch (v) {
    case FlowVerdict::Yes: return "yes";
    case FlowVerdict::No: return "no";
    case FlowVerdict::TrivialGuard: return "trivial_guard";
  }
  return "unknown";
}

bool is_irreducible_matrix(const IntMatrix& a) {
  if (!a.square() || a.rows() == 0) return false;
  LabelledGraph g(std::vector<Symbol>{Symbol("x")});
  for (std::size_t i = 0; i < a.rows(); ++i) g.add_vertex(std::to_string(i));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0) g.add_edge(i, j, std::size_t{0});
    }
  }
  return is_irreducible(g);
}

bool is_permutation_matrix(const IntMatrix& a) {
  if (!a.square()) return false;
  std::vector<int> col_count(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    int row_count = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      if (a(i, j) != 1) return false;
      ++row_count;
      ++col_count[j];
    }
    if (row_count != 1) return false;
  }
  return std::all_of(col_count.begin(), col_count.end(), [](int c) { return c == 1; });
}

FlowVerdict flow_equivalent(const IntMatrix& a, const IntMatrix& b) {
  if (!is_irreducible_matrix(a)) throw Error(ErrorCode::NotIrreducible, "first matrix");
  if (!is_irreducible_matrix(b)) throw Error(ErrorCode::NotIrreducible, "second matrix");
  if (is_permutation_matrix(a) || is_permutation_matrix(b)) return FlowVerdict::TrivialGuard;
  return signed_bowen_franks(a) == signed_bowen_franks(b) ? FlowVerdict::Yes : FlowVerdict::No;
}

EntropyResult entropy(const IntMatrix& a, double tol) {
  if (!a.square() || a.rows() == 0) throw Error(ErrorCode::InvalidParams, "square matrix required");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) < 0) throw Error(ErrorCode::NotNonnegative, "");
    }
  }
  if (!is_irreducible_matrix(a)) throw Error(ErrorCode::NotIrreducible, "");

  // B = A + I is primitive with spectral radius lambda + 1.
  using Real = long double;
  std::vector<Real> b(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = a(i, j).get_d() + (i == j ? 1 : 0);
  }
  auto normalize = [](std::vector<Real>& v) {
    Real mx = *std::max_element(v.begin(), v.end());
    for (auto& x : v) x /= mx;
  };
  auto bracket = [&](const std::vector<Real>& x, Real& lo, Real& hi) {
    lo = std::numeric_limits<Real>::infinity();
    hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Real s = 0;
      for (std::size_t j = 0; j < n; ++j) s += b[i * n + j] * x[j];
      lo = std::min(lo, s / x[i]);
      hi = std::max(hi, s / x[i]);
    }
  };

  EntropyResult best{0, -std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
  auto consider = [&](const std::vector<Real>& x) {
    for (auto v : x) {
      if (!(v > 0)) return false;
    }
    Real lo, hi;
    bracket(x, lo, hi);
    if (lo <= 1) return false;
    double l = static_cast<double>(std::log(lo - 1));
    double u = static_cast<double>(std::log(hi - 1));
    if (u - l < best.upper - best.lower) {
      best.lower = l;
      best.upper = u;
      best.value = static_cast<double>(std::log((lo + hi) / 2 - 1));
    }
    return best.upper - best.lower <= tol;
  };

  // Repeated squaring of B: the columns of B^(2^k) line up with the Perron vector.
  std::vector<Real> c = b;
  normalize(c);
  for (int round = 0; round < 64; ++round) {
    std::vector<Real> x(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x[i] += c[i * n + j];
    }
    normalize(x);
    if (consider(x)) return best;
    std::vector<Real> sq(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        Real v = c[i * n + k];
        if (v == 0) continue;
        for (std::size_t j = 0; j < n; ++j) sq[i * n + j] += v * c[k * n + j];
      }
    }
    normalize(sq);
    c = std::move(sq);
  }
  // Plain power iteration as a fallback for slowly separating spectra.
  std::vector<Real> x(n, 1);
  for (int it = 0; it < 100000; ++it) {
    std::vector<Real> y(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) y[i] += b[i * n + j] * x[j];
    }
    normalize(y);
    x = std::move(y);
    if (consider(x)) break;
  }
  return best;
}

}  // namespace sofic
