#include "exseq/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

#include "exseq/error.hpp"

namespace exseq {

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows, size_t cols_if_empty) {
  size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  Matrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
  Matrix out(rows_, rhs.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (size_t j = 0; j < rhs.cols_; ++j) {
        const mpz_class& b = rhs(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& x) { return sgn(x) == 0; });
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::column(size_t c) const { return select_columns({c}); }

Matrix Matrix::select_columns(const std::vector<size_t>& cols) const {
  Matrix out(rows_, cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, cols[j]);
  return out;
}

void Matrix::append_columns(const Matrix& other) { *this = hstack(*this, other); }

std::vector<std::vector<std::string>> Matrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).get_str();
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0 && a.rows() == 0) return b;
  if (b.cols() == 0 && b.rows() == 0) return a;
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "hstack row count");
  Matrix out(a.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

Matrix reduce(const Matrix& a, const CoefficientRing& ring) {
  if (!ring.modular()) return a;
  Matrix out = a;
  const unsigned long p = static_cast<unsigned long>(ring.characteristic());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) {
      mpz_class& x = out(i, j);
      if (sgn(x) < 0 || mpz_cmp_ui(x.get_mpz_t(), p) >= 0) mpz_fdiv_r_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    }
  }
  return out;
}

namespace {

int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }


class SmithReducer {
 public:
  SmithReducer(const Matrix& a, const CoefficientRing& ring, SnfOptions options)
      : m_(a.rows()), n_(a.cols()), mod_(ring.modular()), chain_(!ring.is_field()),
        p_(static_cast<unsigned long>(ring.characteristic())), options_(options), d_(reduce(a, ring)) {
    if (options_.left) {
      u_ = Matrix::identity(m_);
      u_inv_ = Matrix::identity(m_);
    }
    if (options_.right) v_ = Matrix::identity(n_);
  }

  SnfResult run() {
    size_t t = 0;
    const size_t limit = std::min(m_, n_);
    while (t < limit) {
      auto pivot = smallest_entry(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      reduce_pivot(t);
      if (mod_) {
        mpz_class value = d_(t, t);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), value.get_mpz_t(), mpz_class(p_).get_mpz_t());
        scale_row(t, inv, value);
      } else if (sgn(d_(t, t)) < 0) {
        scale_row(t, -1, -1);
      }
      ++t;
    }
    SnfResult res;
    res.rank = t;
    for (size_t i = 0; i < t; ++i) res.invariant_factors.push_back(d_(i, i));
    res.D = std::move(d_);
    res.U = std::move(u_);
    res.U_inv = std::move(u_inv_);
    res.V = std::move(v_);
    return res;
  }

 private:
  void norm(mpz_class& x) const {
    if (mod_) mpz_fdiv_r_ui(x.get_mpz_t(), x.get_mpz_t(), p_);
  }

  std::optional<std::pair<size_t, size_t>> smallest_entry(size_t t) const {
    std::optional<std::pair<size_t, size_t>> best;
    for (size_t i = t; i < m_; ++i) {
      for (size_t j = t; j < n_; ++j) {
        if (sgn(d_(i, j)) == 0) continue;
        if (mod_) return std::pair{i, j};
        if (!best || cmpabs(d_(i, j), d_(best->first, best->second)) < 0) best = std::pair{i, j};
        if (mpz_cmpabs_ui(d_(i, j).get_mpz_t(), 1) == 0) return best;
      }
    }
    return best;
  }

  mpz_class quotient(const mpz_class& x, const mpz_class& pivot) const {
    mpz_class q;
    if (mod_) {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), pivot.get_mpz_t(), mpz_class(p_).get_mpz_t());
      q = x * inv;
      norm(q);
    } else {
      mpz_tdiv_q(q.get_mpz_t(), x.get_mpz_t(), pivot.get_mpz_t());
    }
    return q;
  }

  // Clears row and column t around the pivot (t, t), restoring divisibility over Z.
  void reduce_pivot(size_t t) {
    for (;;) {
      bool clean = true;
      for (size_t i = t + 1; i < m_; ++i) {
        if (sgn(d_(i, t)) == 0) continue;
        mpz_class q = quotient(d_(i, t), d_(t, t));
        if (sgn(q) != 0) row_submul(i, t, q, t);
        if (sgn(d_(i, t)) != 0) clean = false;
      }
      if (!clean) {
        swap_rows(t, argmin_in_column(t));
        continue;
      }
      for (size_t j = t + 1; j < n_; ++j) {
        if (sgn(d_(t, j)) == 0) continue;
        mpz_class q = quotient(d_(t, j), d_(t, t));
        if (sgn(q) != 0) col_submul(j, t, q, t);
        if (sgn(d_(t, j)) != 0) clean = false;
      }
      if (!clean) {
        swap_cols(t, argmin_in_row(t));
        continue;
      }
      if (!mod_ && chain_) {
        bool fixed = false;
        for (size_t i = t + 1; i < m_ && !fixed; ++i) {
          for (size_t j = t + 1; j < n_; ++j) {
            if (sgn(d_(i, j)) != 0 && !mpz_divisible_p(d_(i, j).get_mpz_t(), d_(t, t).get_mpz_t())) {
              row_submul(t, i, -1, t);
              fixed = true;
              break;
            }
          }
        }
        if (fixed) continue;
      }
      return;
    }
  }

  size_t argmin_in_column(size_t t) const {
    size_t best = t;
    for (size_t i = t + 1; i < m_; ++i) {
      if (sgn(d_(i, t)) == 0) continue;
      if (best == t || cmpabs(d_(i, t), d_(best, t)) < 0) best = i;
    }
    return best;
  }

  size_t argmin_in_row(size_t t) const {
    size_t best = t;
    for (size_t j = t + 1; j < n_; ++j) {
      if (sgn(d_(t, j)) == 0) continue;
      if (best == t || cmpabs(d_(t, j), d_(t, best)) < 0) best = j;
    }
    return best;
  }

  // row_dst -= q * row_src
  void row_submul(size_t dst, size_t src, const mpz_class& q, size_t from_col) {
    for (size_t j = from_col; j < n_; ++j) {
      if (sgn(d_(src, j)) == 0) continue;
      d_(dst, j) -= q * d_(src, j);
      norm(d_(dst, j));
    }
    if (options_.left) {
      for (size_t j = 0; j < m_; ++j) {
        if (sgn(u_(src, j)) != 0) {
          u_(dst, j) -= q * u_(src, j);
          norm(u_(dst, j));
        }
        if (sgn(u_inv_(j, dst)) != 0) {
          u_inv_(j, src) += q * u_inv_(j, dst);
          norm(u_inv_(j, src));
        }
      }
    }
  }

  // col_dst -= q * col_src
  void col_submul(size_t dst, size_t src, const mpz_class& q, size_t from_row) {
    for (size_t i = from_row; i < m_; ++i) {
      if (sgn(d_(i, src)) == 0) continue;
      d_(i, dst) -= q * d_(i, src);
      norm(d_(i, dst));
    }
    if (options_.right) {
      for (size_t i = 0; i < n_; ++i) {
        if (sgn(v_(i, src)) == 0) continue;
        v_(i, dst) -= q * v_(i, src);
        norm(v_(i, dst));
      }
    }
  }

  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < n_; ++j) std::swap(d_(a, j), d_(b, j));
    if (options_.left) {
      for (size_t j = 0; j < m_; ++j) {
        std::swap(u_(a, j), u_(b, j));
        std::swap(u_inv_(j, a), u_inv_(j, b));
      }
    }
  }

  void swap_cols(size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < m_; ++i) std::swap(d_(i, a), d_(i, b));
    if (options_.right) {
      for (size_t i = 0; i < n_; ++i) std::swap(v_(i, a), v_(i, b));
    }
  }

  // Multiplies row t by the unit c; c_inv is its inverse.
  void scale_row(size_t t, const mpz_class& c, const mpz_class& c_inv) {
    for (size_t j = 0; j < n_; ++j) {
      d_(t, j) *= c;
      norm(d_(t, j));
    }
    if (options_.left) {
      for (size_t j = 0; j < m_; ++j) {
        u_(t, j) *= c;
        norm(u_(t, j));
        u_inv_(j, t) *= c_inv;
        norm(u_inv_(j, t));
      }
    }
  }

  size_t m_, n_;
  bool mod_;
  bool chain_;  // over Q every nonzero diagonal entry is a unit, so no divisor chain is needed
  unsigned long p_;
  SnfOptions options_;
  Matrix d_, u_, u_inv_, v_;
};

// Word-size elimination for prime fields; same conventions as SmithReducer.
class ModularReducer {
 public:
  ModularReducer(const Matrix& a, std::uint64_t p, SnfOptions options)
      : m_(a.rows()), n_(a.cols()), p_(p), options_(options), d_(m_ * n_) {
    for (size_t i = 0; i < m_; ++i)
      for (size_t j = 0; j < n_; ++j) d_[i * n_ + j] = mpz_fdiv_ui(a(i, j).get_mpz_t(), p_);
    if (options_.left) {
      u_.assign(m_ * m_, 0);
      u_inv_.assign(m_ * m_, 0);
      for (size_t i = 0; i < m_; ++i) u_[i * m_ + i] = u_inv_[i * m_ + i] = 1;
    }
    if (options_.right) {
      v_.assign(n_ * n_, 0);
      for (size_t i = 0; i < n_; ++i) v_[i * n_ + i] = 1;
    }
  }

  SnfResult run() {
    size_t t = 0;
    const size_t limit = std::min(m_, n_);
    while (t < limit) {
      auto pivot = find_pivot(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      const std::uint64_t value = d_[t * n_ + t];
      const std::uint64_t inv = inverse(value);
      for (size_t j = t; j < n_; ++j) d_[t * n_ + j] = d_[t * n_ + j] * inv % p_;
      if (options_.left) {
        for (size_t j = 0; j < m_; ++j) {
          u_[t * m_ + j] = u_[t * m_ + j] * inv % p_;
          u_inv_[j * m_ + t] = u_inv_[j * m_ + t] * value % p_;
        }
      }
      for (size_t i = t + 1; i < m_; ++i) {
        const std::uint64_t c = d_[i * n_ + t];
        if (c == 0) continue;
        const std::uint64_t neg = p_ - c;
        for (size_t j = t; j < n_; ++j) {
          const std::uint64_t x = d_[t * n_ + j];
          if (x) d_[i * n_ + j] = (d_[i * n_ + j] + neg * x) % p_;
        }
        if (options_.left) {
          for (size_t j = 0; j < m_; ++j) {
            const std::uint64_t x = u_[t * m_ + j];
            if (x) u_[i * m_ + j] = (u_[i * m_ + j] + neg * x) % p_;
            const std::uint64_t y = u_inv_[j * m_ + i];
            if (y) u_inv_[j * m_ + t] = (u_inv_[j * m_ + t] + c * y) % p_;
          }
        }
      }
      for (size_t j = t + 1; j < n_; ++j) {
        const std::uint64_t c = d_[t * n_ + j];
        if (c == 0) continue;
        d_[t * n_ + j] = 0;
        if (options_.right) {
          const std::uint64_t neg = p_ - c;
          for (size_t i = 0; i < n_; ++i) {
            const std::uint64_t x = v_[i * n_ + t];
            if (x) v_[i * n_ + j] = (v_[i * n_ + j] + neg * x) % p_;
          }
        }
      }
      ++t;
    }
    SnfResult res;
    res.rank = t;
    res.invariant_factors.assign(t, mpz_class(1));
    res.D = Matrix(m_, n_);
    for (size_t i = 0; i < t; ++i) res.D(i, i) = 1;
    if (options_.left) {
      res.U = to_matrix(u_, m_, m_);
      res.U_inv = to_matrix(u_inv_, m_, m_);
    }
    if (options_.right) res.V = to_matrix(v_, n_, n_);
    return res;
  }

 private:
  std::optional<std::pair<size_t, size_t>> find_pivot(size_t t) const {
    for (size_t i = t; i < m_; ++i)
      for (size_t j = t; j < n_; ++j)
        if (d_[i * n_ + j]) return std::pair{i, j};
    return std::nullopt;
  }

  std::uint64_t inverse(std::uint64_t x) const {
    std::uint64_t result = 1, base = x, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return result;
  }

  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < n_; ++j) std::swap(d_[a * n_ + j], d_[b * n_ + j]);
    if (options_.left) {
      for (size_t j = 0; j < m_; ++j) {
        std::swap(u_[a * m_ + j], u_[b * m_ + j]);
        std::swap(u_inv_[j * m_ + a], u_inv_[j * m_ + b]);
      }
    }
  }

  void swap_cols(size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < m_; ++i) std::swap(d_[i * n_ + a], d_[i * n_ + b]);
    if (options_.right)
      for (size_t i = 0; i < n_; ++i) std::swap(v_[i * n_ + a], v_[i * n_ + b]);
  }

  static Matrix to_matrix(const std::vector<std::uint64_t>& x, size_t rows, size_t cols) {
    Matrix out(rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        if (x[i * cols + j]) out(i, j) = static_cast<unsigned long>(x[i * cols + j]);
    return out;
  }

  size_t m_, n_;
  std::uint64_t p_;
  SnfOptions options_;
  std::vector<std::uint64_t> d_, u_, u_inv_, v_;
};

// Coordinates X with B X = L where B = U_inv * diag(d) is the basis of span(K)
// read off from K's SNF. Columns of L may be rescaled by units of the ring.
Matrix coordinates_in_span(const SnfResult& k_snf, const Matrix& l_gens, const CoefficientRing& ring) {
  const size_t k = k_snf.rank;
  Matrix y = reduce(k_snf.U * l_gens, ring);
  for (size_t i = k; i < y.rows(); ++i) {
    for (size_t c = 0; c < y.cols(); ++c) {
      if (!ring.is_zero(y(i, c))) throw Error(ErrorKind::NotContained, "vector outside the span");
    }
  }
  Matrix x(k, y.cols());
  for (size_t c = 0; c < y.cols(); ++c) {
    mpz_class scale = 1;
    if (!ring.modular()) {
      for (size_t i = 0; i < k; ++i) {
        mpz_class g = gcd(k_snf.invariant_factors[i], y(i, c));
        mpz_class need = k_snf.invariant_factors[i] / g;
        scale = lcm(scale, need);
      }
      if (!ring.is_unit(scale)) throw Error(ErrorKind::NotContained, "vector outside the lattice");
    }
    for (size_t i = 0; i < k; ++i) {
      if (ring.modular()) {
        x(i, c) = y(i, c);
      } else {
        x(i, c) = y(i, c) * scale / k_snf.invariant_factors[i];
      }
    }
  }
  return x;
}


bool rational(const CoefficientRing& ring) { return ring.is_field() && !ring.modular(); }

// Row echelon form over Q kept in integer rows. Each row operation is
// fraction-free and rows are divided by their content, which keeps entries
// small; pivot columns are the lexicographically first independent columns.
using DenseRow = std::vector<mpz_class>;

struct Echelon {
  std::vector<DenseRow> rows;
  std::vector<size_t> pivots;
};

void make_primitive(DenseRow& row) {
  mpz_class g = 0;
  for (const auto& x : row) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : row)
      if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::vector<size_t> support(const DenseRow& row) {
  std::vector<size_t> out;
  for (size_t j = 0; j < row.size(); ++j)
    if (sgn(row[j]) != 0) out.push_back(j);
  return out;
}

// row -= (row[c] / pivot_row[c]) * pivot_row, cleared of denominators;
// `nonzero` lists the support of pivot_row.
void eliminate(DenseRow& row, const DenseRow& pivot_row, const std::vector<size_t>& nonzero, size_t c) {
  mpz_class g = gcd(row[c], pivot_row[c]);
  mpz_class a = pivot_row[c] / g;
  mpz_class b = row[c] / g;
  if (a != 1)
    for (auto& x : row)
      if (sgn(x) != 0) x *= a;
  for (size_t j : nonzero) row[j] -= b * pivot_row[j];
  make_primitive(row);
}

Echelon rational_echelon(const Matrix& a, bool reduced) {
  Echelon e;
  std::vector<DenseRow> rows;
  for (size_t i = 0; i < a.rows(); ++i) {
    DenseRow row(a.cols());
    bool nonzero = false;
    for (size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      row[j] = a(i, j);
      nonzero = true;
    }
    if (nonzero) {
      make_primitive(row);
      rows.push_back(std::move(row));
    }
  }
  size_t t = 0;
  for (size_t c = 0; c < a.cols() && t < rows.size(); ++c) {
    size_t best = rows.size();
    for (size_t i = t; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      if (best == rows.size() || cmpabs(rows[i][c], rows[best][c]) < 0) best = i;
    }
    if (best == rows.size()) continue;
    std::swap(rows[t], rows[best]);
    const auto nonzero = support(rows[t]);
    for (size_t i = t + 1; i < rows.size(); ++i)
      if (sgn(rows[i][c]) != 0) eliminate(rows[i], rows[t], nonzero, c);
    e.pivots.push_back(c);
    ++t;
  }
  rows.resize(t);
  if (reduced) {
    for (size_t k = t; k-- > 0;) {
      const auto nonzero = support(rows[k]);
      for (size_t i = 0; i < k; ++i)
        if (sgn(rows[i][e.pivots[k]]) != 0) eliminate(rows[i], rows[k], nonzero, e.pivots[k]);
    }
  }
  e.rows = std::move(rows);
  return e;
}

// Solves the reduced echelon system for the columns `targets`: for each
// target column f, the vector v with v[f] = s and v[pivot_t] = -s*row_t[f]/row_t[pivot_t]
// (s the smallest positive scale making it integral), returned as a map
// from pivot index to value plus the scale.
struct Solved {
  mpz_class scale = 1;
  std::vector<std::pair<size_t, mpz_class>> at_pivot;  // (t, value)
};

std::vector<Solved> solve_columns(const Echelon& e, const std::vector<size_t>& targets) {
  std::vector<Solved> out(targets.size());
  for (size_t i = 0; i < targets.size(); ++i) {
    Solved& s = out[i];
    for (size_t t = 0; t < e.rows.size(); ++t)
      if (sgn(e.rows[t][targets[i]]) != 0) s.scale = lcm(s.scale, e.rows[t][e.pivots[t]]);
    for (size_t t = 0; t < e.rows.size(); ++t) {
      const mpz_class& x = e.rows[t][targets[i]];
      if (sgn(x) != 0) s.at_pivot.emplace_back(t, x * (s.scale / e.rows[t][e.pivots[t]]));
    }
  }
  return out;
}

// Kernel of A over Q, one primitive integer vector per non-pivot column.
Matrix rational_kernel(const Matrix& a) {
  Echelon e = rational_echelon(a, true);
  const size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (size_t c : e.pivots) is_pivot[c] = true;
  std::vector<size_t> free_cols;
  for (size_t f = 0; f < n; ++f)
    if (!is_pivot[f]) free_cols.push_back(f);
  auto solved = solve_columns(e, free_cols);
  Matrix out(n, free_cols.size());
  for (size_t col = 0; col < free_cols.size(); ++col) {
    DenseRow v(n);
    v[free_cols[col]] = solved[col].scale;
    for (const auto& [t, x] : solved[col].at_pivot) v[e.pivots[t]] = -x;
    make_primitive(v);
    for (size_t i = 0; i < n; ++i)
      if (sgn(v[i]) != 0) out(i, col) = v[i];
  }
  return out;
}

Subquotient rational_subquotient(const Matrix& k_gens, const Matrix& l_gens, bool want_generators) {
  Subquotient out;
  const size_t ambient = k_gens.rows();
  Matrix l = l_gens.cols() == 0 ? Matrix(ambient, 0) : l_gens;
  Echelon ek = rational_echelon(k_gens, false);
  const size_t k = ek.pivots.size();
  // Pivots of [L | K] falling in the K block extend a basis of span L.
  Echelon joint = rational_echelon(hstack(l, k_gens), false);
  std::vector<size_t> chosen;
  size_t l_rank = 0;
  for (size_t c : joint.pivots) {
    if (c < l.cols()) ++l_rank;
    else chosen.push_back(c - l.cols());
  }
  if (l_rank + chosen.size() != k) throw Error(ErrorKind::NotContained, "vector outside the span");

  if (!want_generators) {
    // Coordinates of L in the basis of K formed by its pivot columns;
    // columns are scaled by units to stay integral.
    Matrix x(k, l.cols());
    if (l.cols() > 0 && k > 0) {
      Echelon e = rational_echelon(hstack(k_gens.select_columns(ek.pivots), l), true);
      std::vector<size_t> targets;
      for (size_t c = 0; c < l.cols(); ++c) targets.push_back(k + c);
      auto solved = solve_columns(e, targets);
      for (size_t c = 0; c < l.cols(); ++c) {
        DenseRow v(k);
        for (const auto& [t, val] : solved[c].at_pivot) v[t] = val;
        make_primitive(v);
        for (size_t t = 0; t < k; ++t) x(t, c) = v[t];
      }
    }
    out.presentation = x;
    out.diagonal.assign(l_rank, mpz_class(1));
  }
  out.module.free_rank = static_cast<int>(chosen.size());
  out.orders.assign(chosen.size(), mpz_class(0));
  if (want_generators) out.generators = k_gens.select_columns(chosen);
  return out;
}

bool word_field(const CoefficientRing& ring) { return ring.modular() && ring.characteristic() < (1L << 31); }

// Reduced row echelon form over F_p with pivots scaled to 1.
struct ModEchelon {
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<size_t> pivots;
};

std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t p) {
  std::uint64_t result = 1, e = p - 2;
  while (e) {
    if (e & 1) result = result * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return result;
}

ModEchelon mod_echelon(const Matrix& a, std::uint64_t p, bool reduced) {
  ModEchelon e;
  std::vector<std::vector<std::uint64_t>> rows;
  for (size_t i = 0; i < a.rows(); ++i) {
    std::vector<std::uint64_t> row(a.cols());
    bool nonzero = false;
    for (size_t j = 0; j < a.cols(); ++j) {
      row[j] = mpz_fdiv_ui(a(i, j).get_mpz_t(), p);
      nonzero = nonzero || row[j] != 0;
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  std::vector<size_t> nonzero;
  auto clear = [&](std::vector<std::uint64_t>& row, const std::vector<std::uint64_t>& pivot_row, size_t c) {
    const std::uint64_t neg = p - row[c];
    for (size_t j : nonzero) row[j] = (row[j] + neg * pivot_row[j]) % p;
  };
  size_t t = 0;
  for (size_t c = 0; c < a.cols() && t < rows.size(); ++c) {
    size_t i = t;
    while (i < rows.size() && rows[i][c] == 0) ++i;
    if (i == rows.size()) continue;
    std::swap(rows[t], rows[i]);
    const std::uint64_t inv = mod_inverse(rows[t][c], p);
    nonzero.clear();
    for (size_t j = c; j < a.cols(); ++j) {
      rows[t][j] = rows[t][j] * inv % p;
      if (rows[t][j]) nonzero.push_back(j);
    }
    for (size_t r = t + 1; r < rows.size(); ++r)
      if (rows[r][c]) clear(rows[r], rows[t], c);
    if (reduced)
      for (size_t r = 0; r < t; ++r)
        if (rows[r][c]) clear(rows[r], rows[t], c);
    e.pivots.push_back(c);
    ++t;
  }
  rows.resize(t);
  e.rows = std::move(rows);
  return e;
}

Matrix mod_kernel(const Matrix& a, std::uint64_t p) {
  ModEchelon e = mod_echelon(a, p, true);
  const size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (size_t c : e.pivots) is_pivot[c] = true;
  Matrix out(n, n - e.pivots.size());
  size_t col = 0;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    out(f, col) = 1;
    for (size_t t = 0; t < e.pivots.size(); ++t)
      if (e.rows[t][f]) out(e.pivots[t], col) = static_cast<unsigned long>(p - e.rows[t][f]);
    ++col;
  }
  return out;
}

Subquotient mod_subquotient(const Matrix& k_gens, const Matrix& l_gens, std::uint64_t p, bool want_generators) {
  Subquotient out;
  const size_t ambient = k_gens.rows();
  Matrix l = l_gens.cols() == 0 ? Matrix(ambient, 0) : l_gens;
  ModEchelon ek = mod_echelon(k_gens, p, false);
  const size_t k = ek.pivots.size();
  ModEchelon joint = mod_echelon(hstack(l, k_gens), p, false);
  std::vector<size_t> chosen;
  size_t l_rank = 0;
  for (size_t c : joint.pivots) {
    if (c < l.cols()) ++l_rank;
    else chosen.push_back(c - l.cols());
  }
  if (l_rank + chosen.size() != k) throw Error(ErrorKind::NotContained, "vector outside the span");
  if (!want_generators) {
    Matrix x(k, l.cols());
    if (l.cols() > 0 && k > 0) {
      ModEchelon e = mod_echelon(hstack(k_gens.select_columns(ek.pivots), l), p, true);
      for (size_t c = 0; c < l.cols(); ++c)
        for (size_t t = 0; t < k; ++t) x(t, c) = static_cast<unsigned long>(e.rows[t][k + c]);
    }
    out.presentation = x;
    out.diagonal.assign(l_rank, mpz_class(1));
  }
  out.module.free_rank = static_cast<int>(chosen.size());
  out.orders.assign(chosen.size(), mpz_class(0));
  if (want_generators) out.generators = reduce(k_gens.select_columns(chosen), CoefficientRing::prime_field(static_cast<long>(p)));
  return out;
}

}  // namespace

SnfResult smith_normal_form(const Matrix& a, const CoefficientRing& ring, SnfOptions options) {
  if (ring.modular() && ring.characteristic() < (1L << 31)) {
    return ModularReducer(a, static_cast<std::uint64_t>(ring.characteristic()), options).run();
  }
  return SmithReducer(a, ring, options).run();
}

SnfResult smith_normal_form(const Matrix& a) { return smith_normal_form(a, CoefficientRing::integers()); }

size_t rank(const Matrix& a, const CoefficientRing& ring) {
  if (rational(ring)) return rational_echelon(a, false).pivots.size();
  if (word_field(ring)) return mod_echelon(a, static_cast<std::uint64_t>(ring.characteristic()), false).pivots.size();
  return smith_normal_form(a, ring, {.left = false, .right = false}).rank;
}

Matrix kernel_basis(const Matrix& a, const CoefficientRing& ring) {
  if (rational(ring)) return rational_kernel(a);
  if (word_field(ring)) return mod_kernel(a, static_cast<std::uint64_t>(ring.characteristic()));
  SnfResult s = smith_normal_form(a, ring, {.left = false, .right = true});
  std::vector<size_t> cols;
  for (size_t j = s.rank; j < a.cols(); ++j) cols.push_back(j);
  return s.V.select_columns(cols);
}

Matrix image_basis(const Matrix& a, const CoefficientRing& ring) {
  if (rational(ring)) return a.select_columns(rational_echelon(a, false).pivots);
  if (word_field(ring)) return reduce(a.select_columns(mod_echelon(a, static_cast<std::uint64_t>(ring.characteristic()), false).pivots), ring);
  SnfResult s = smith_normal_form(a, ring, {.left = true, .right = false});
  Matrix out(a.rows(), s.rank);
  for (size_t j = 0; j < s.rank; ++j)
    for (size_t i = 0; i < a.rows(); ++i) out(i, j) = s.U_inv(i, j) * s.invariant_factors[j];
  return reduce(out, ring);
}

Subquotient subquotient(const Matrix& k_gens, const Matrix& l_gens, const CoefficientRing& ring,
                        bool want_generators) {
  if (rational(ring)) return rational_subquotient(k_gens, l_gens, want_generators);
  if (word_field(ring)) return mod_subquotient(k_gens, l_gens, static_cast<std::uint64_t>(ring.characteristic()), want_generators);
  Subquotient out;
  const size_t ambient = k_gens.rows();
  SnfResult ks = smith_normal_form(k_gens, ring, {.left = true, .right = false});
  const size_t k = ks.rank;
  Matrix l = l_gens.cols() == 0 ? Matrix(ambient, 0) : l_gens;
  Matrix x = coordinates_in_span(ks, l, ring);
  SnfResult xs = smith_normal_form(x, ring, {.left = want_generators, .right = false});

  out.presentation = x;
  out.diagonal = xs.invariant_factors;
  out.module.free_rank = static_cast<int>(k - xs.rank);
  std::vector<size_t> keep;
  for (size_t i = 0; i < xs.rank; ++i) {
    mpz_class part = ring.non_unit_part(xs.invariant_factors[i]);
    if (part != 1) {
      out.module.torsion.push_back(part);
      keep.push_back(i);
      out.orders.push_back(part);
    }
  }
  for (size_t i = xs.rank; i < k; ++i) {
    keep.push_back(i);
    out.orders.push_back(0);
  }
  if (want_generators) {
    Matrix basis(ambient, k);
    for (size_t j = 0; j < k; ++j)
      for (size_t i = 0; i < ambient; ++i) basis(i, j) = ks.U_inv(i, j) * ks.invariant_factors[j];
    out.generators = k == 0 ? Matrix(ambient, 0) : reduce((basis * xs.U_inv).select_columns(keep), ring);
  }
  return out;
}

bool spans_contain(const Matrix& k_gens, const Matrix& l_gens, const CoefficientRing& ring) {
  if (ring.is_field()) return l_gens.cols() == 0 || rank(k_gens, ring) == rank(hstack(k_gens, l_gens), ring);
  SnfResult ks = smith_normal_form(k_gens, ring, {.left = true, .right = false});
  try {
    coordinates_in_span(ks, l_gens, ring);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotContained) return false;
    throw;
  }
  return true;
}

}  // namespace exseq
