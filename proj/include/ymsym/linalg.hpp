#pragma once

#include <map>
#include <vector>

#include "ymsym/scalar.hpp"

namespace ymsym {

/// Dense exact rational matrix (row-major).
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : m_rows(rows), m_cols(cols), m_data(std::size_t(rows) * cols) {}

  static RationalMatrix identity(int n);

  int rows() const { return m_rows; }
  int cols() const { return m_cols; }
  Scalar& at(int i, int j) { return m_data[std::size_t(i) * m_cols + j]; }
  const Scalar& at(int i, int j) const { return m_data[std::size_t(i) * m_cols + j]; }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.m_rows == b.m_rows && a.m_cols == b.m_cols && a.m_data == b.m_data;
  }

private:
  int m_rows = 0;
  int m_cols = 0;
  std::vector<Scalar> m_data;
};

struct RrefResult {
  RationalMatrix matrix;
  int rank = 0;
  std::vector<int> pivot_cols;
};

/// Reduced row echelon form by exact Gauss-Jordan elimination; pivot choice is
/// the first row with a nonzero entry in column order, so the result is
/// deterministic. rref is idempotent.
RrefResult rref(const RationalMatrix& m);

/// Exact basis of {v : m v = 0}. One vector per free column, in increasing
/// free-column order, with a 1 in the free position. rank + nullity = cols.
std::vector<std::vector<Scalar>> nullspace(const RationalMatrix& m);

/// Incremental exact eliminator for large sparse homogeneous systems: rows are
/// reduced against the pivots accumulated so far and either vanish or become
/// new pivots. Columns are plain integers supplied by the caller.
class SparseEliminator {
public:
  /// A sparse row: (column, coefficient) sorted by column, no zeros.
  using Row = std::vector<std::pair<int, Scalar>>;

  /// Feed one row; returns true if it was independent (rank grew).
  bool add_row(Row r);

  /// Reduce a row against the current pivots without inserting it.
  /// The result is empty iff the row lies in the accumulated row space.
  Row reduce(Row r) const;

  int rank() const { return static_cast<int>(m_pivots.size()); }

  /// Pivot column -> fully normalized row (leading coefficient 1).
  const std::map<int, Row>& pivot_rows() const { return m_pivots; }

  /// Back-substitute so every pivot row is clean above and below (full RREF).
  void finalize();

  /// Nullspace basis over the given full column list (must contain every
  /// column that ever appeared). Calls finalize() internally.
  std::vector<std::vector<Scalar>> nullspace(const std::vector<int>& columns);

private:
  static Row axpy(const Row& r, const Scalar& factor, const Row& pivot);
  std::map<int, Row> m_pivots;
};

} // namespace ymsym
