#include "ebloch/integer_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace ebloch {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw IntegerSystemError("integer overflow in add");
  return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw IntegerSystemError("integer overflow in sub");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegerSystemError("integer overflow in mul");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  if (b == 0) throw IntegerSystemError("division by zero");
  if (b == -1) return sub(0, a);
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace checked

namespace {

// col_dst -= k * col_src, on both matrices.
void column_axpy(IntMatrix& m, Eigen::Index dst, Eigen::Index src, std::int64_t k) {
  if (k == 0) return;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m(i, dst) = checked::sub(m(i, dst), checked::mul(k, m(i, src)));
  }
}

void row_axpy(IntMatrix& m, Eigen::Index dst, Eigen::Index src, std::int64_t k) {
  if (k == 0) return;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    m(dst, j) = checked::sub(m(dst, j), checked::mul(k, m(src, j)));
  }
}

void negate_column(IntMatrix& m, Eigen::Index c) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, c) = checked::sub(0, m(i, c));
}

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw ContractViolation("multiply: shape mismatch");
  IntMatrix out = IntMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        out(i, j) = checked::add(out(i, j), checked::mul(a(i, k), b(k, j)));
      }
    }
  }
  return out;
}

IntVector multiply(const IntMatrix& a, const IntVector& x) {
  IntMatrix r = multiply(a, IntMatrix(x));
  return r.col(0);
}

HermiteForm column_hermite(const IntMatrix& a) {
  HermiteForm out;
  out.h = a;
  out.u = IntMatrix::Identity(a.cols(), a.cols());
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < h.rows() && r < h.cols(); ++i) {
    // Euclid across columns r.. on row i.
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index j = r; j < h.cols(); ++j) {
        if (h(i, j) != 0 && (best < 0 || std::llabs(h(i, j)) < std::llabs(h(i, best)))) best = j;
      }
      if (best < 0) break;
      if (best != r) {
        h.col(best).swap(h.col(r));
        u.col(best).swap(u.col(r));
      }
      bool done = true;
      for (Eigen::Index j = r + 1; j < h.cols(); ++j) {
        if (h(i, j) == 0) continue;
        const std::int64_t k = checked::floor_div(h(i, j), h(i, r));
        column_axpy(h, j, r, k);
        column_axpy(u, j, r, k);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(i, r) == 0) continue;
    if (h(i, r) < 0) {
      negate_column(h, r);
      negate_column(u, r);
    }
    for (Eigen::Index j = 0; j < r; ++j) {
      const std::int64_t k = checked::floor_div(h(i, j), h(i, r));
      column_axpy(h, j, r, k);
      column_axpy(u, j, r, k);
    }
    out.pivot_rows.push_back(i);
    ++r;
  }
  return out;
}

std::vector<std::int64_t> smith_invariants(const IntMatrix& a) {
  IntMatrix m = a;
  std::vector<std::int64_t> diag;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  for (Eigen::Index t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry in the trailing block becomes the pivot.
    Eigen::Index pi = -1, pj = -1;
    for (Eigen::Index i = t; i < rows; ++i) {
      for (Eigen::Index j = t; j < cols; ++j) {
        if (m(i, j) != 0 && (pi < 0 || std::llabs(m(i, j)) < std::llabs(m(pi, pj)))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    m.row(pi).swap(m.row(t));
    m.col(pj).swap(m.col(t));
    while (true) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        row_axpy(m, i, t, checked::floor_div(m(i, t), m(t, t)));
        if (m(i, t) != 0) {
          clean = false;
          m.row(i).swap(m.row(t));
        }
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        column_axpy(m, j, t, checked::floor_div(m(t, j), m(t, t)));
        if (m(t, j) != 0) {
          clean = false;
          m.col(j).swap(m.col(t));
        }
      }
      if (!clean) continue;
      // Divisibility: pivot must divide the whole trailing block.
      bool divides = true;
      for (Eigen::Index i = t + 1; i < rows && divides; ++i) {
        for (Eigen::Index j = t + 1; j < cols; ++j) {
          if (m(i, j) % m(t, t) != 0) {
            for (Eigen::Index c = 0; c < cols; ++c) m(t, c) = checked::add(m(t, c), m(i, c));
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    diag.push_back(std::llabs(m(t, t)));
  }
  return diag;
}

Eigen::Index integer_rank(const IntMatrix& a) { return column_hermite(a).rank(); }

Eigen::Index rank_mod2(const IntMatrix& a) {
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> m(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m(i, j) = static_cast<std::uint8_t>(a(i, j) & 1);
  Eigen::Index rank = 0;
  for (Eigen::Index j = 0; j < m.cols() && rank < m.rows(); ++j) {
    Eigen::Index p = rank;
    while (p < m.rows() && m(p, j) == 0) ++p;
    if (p == m.rows()) continue;
    m.row(p).swap(m.row(rank));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != rank && m(i, j)) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) ^= m(rank, c);
      }
    }
    ++rank;
  }
  return rank;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const HermiteForm hf = column_hermite(a);
  const Eigen::Index k = a.cols() - hf.rank();
  if (k == 0) return IntMatrix::Zero(a.cols(), 0);
  IntMatrix basis = hf.u.rightCols(k);
  return column_hermite(basis).h.leftCols(k);
}

IntVector reduce_modulo_lattice(IntVector x, const IntMatrix& hermite_basis) {
  const HermiteForm hf = column_hermite(hermite_basis);
  for (Eigen::Index k = 0; k < hf.rank(); ++k) {
    const Eigen::Index row = hf.pivot_rows[static_cast<std::size_t>(k)];
    const std::int64_t q = checked::floor_div(x(row), hf.h(row, k));
    if (q == 0) continue;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      x(i) = checked::sub(x(i), checked::mul(q, hf.h(i, k)));
    }
  }
  return x;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) throw ContractViolation("solve_integer: shape mismatch");
  const HermiteForm hf = column_hermite(a);
  IntVector y = IntVector::Zero(a.cols());
  for (Eigen::Index k = 0; k < hf.rank(); ++k) {
    const Eigen::Index row = hf.pivot_rows[static_cast<std::size_t>(k)];
    std::int64_t rhs = b(row);
    for (Eigen::Index j = 0; j < k; ++j) rhs = checked::sub(rhs, checked::mul(hf.h(row, j), y(j)));
    if (rhs % hf.h(row, k) != 0) return std::nullopt;
    y(k) = rhs / hf.h(row, k);
  }
  if (multiply(hf.h, y) != b) return std::nullopt;
  IntVector x = multiply(hf.u, y);
  const Eigen::Index nk = a.cols() - hf.rank();
  if (nk > 0) x = reduce_modulo_lattice(x, hf.u.rightCols(nk));
  return x;
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << "Z";
    if (free_rank > 1) out << "^" << free_rank;
    first = false;
  }
  for (std::int64_t d : torsion) {
    if (!first) out << " + ";
    out << "Z/" << d;
    first = false;
  }
  return out.str();
}

AbelianGroup homology_at(const IntMatrix& a, const IntMatrix& b, Eigen::Index dim_y) {
  if (a.rows() != dim_y || b.cols() != dim_y) {
    throw ContractViolation("homology_at: shape mismatch");
  }
  if (a.cols() > 0 && b.rows() > 0 && !multiply(b, a).isZero()) {
    throw ContractViolation("homology_at: composite is not zero");
  }
  const auto inv = smith_invariants(a);
  AbelianGroup g;
  g.free_rank = dim_y - integer_rank(b) - static_cast<Eigen::Index>(inv.size());
  for (std::int64_t d : inv) {
    if (d > 1) g.torsion.push_back(d);
  }
  return g;
}

}  // namespace ebloch
