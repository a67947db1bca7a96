#include "ymsym/linalg.hpp"

#include <algorithm>

namespace ymsym {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

RrefResult rref(const RationalMatrix& input) {
  RrefResult res;
  res.matrix = input;
  RationalMatrix& m = res.matrix;
  int pivot_row = 0;
  for (int col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    int sel = -1;
    for (int r = pivot_row; r < m.rows(); ++r) {
      if (!m.at(r, col).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != pivot_row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(pivot_row, c));
    const Scalar inv = m.at(pivot_row, col).inverse();
    for (int c = col; c < m.cols(); ++c) m.at(pivot_row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || m.at(r, col).is_zero()) continue;
      const Scalar f = m.at(r, col);
      for (int c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(pivot_row, c);
    }
    res.pivot_cols.push_back(col);
    ++pivot_row;
  }
  res.rank = pivot_row;
  return res;
}

std::vector<std::vector<Scalar>> nullspace(const RationalMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols());
    v[free] = Scalar(1);
    for (int i = 0; i < r.rank; ++i) v[r.pivot_cols[i]] = -r.matrix.at(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

SparseEliminator::Row SparseEliminator::axpy(const Row& r, const Scalar& factor,
                                             const Row& pivot) {
  // r - factor * pivot, merged by column.
  Row out;
  out.reserve(r.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() && j < pivot.size()) {
    if (r[i].first < pivot[j].first) {
      out.push_back(r[i++]);
    } else if (pivot[j].first < r[i].first) {
      out.emplace_back(pivot[j].first, -(factor * pivot[j].second));
      ++j;
    } else {
      Scalar c = r[i].second - factor * pivot[j].second;
      if (!c.is_zero()) out.emplace_back(r[i].first, std::move(c));
      ++i, ++j;
    }
  }
  for (; i < r.size(); ++i) out.push_back(r[i]);
  for (; j < pivot.size(); ++j) out.emplace_back(pivot[j].first, -(factor * pivot[j].second));
  return out;
}

bool SparseEliminator::add_row(Row r) {
  for (;;) {
    if (r.empty()) return false;
    auto it = m_pivots.find(r.front().first);
    if (it == m_pivots.end()) break;
    r = axpy(r, r.front().second, it->second);
  }
  const Scalar inv = r.front().second.inverse();
  for (auto& [col, c] : r) c *= inv;
  const int lead = r.front().first;
  m_pivots.emplace(lead, std::move(r));
  return true;
}

SparseEliminator::Row SparseEliminator::reduce(Row r) const {
  // Walk the row left to right; each column either has a pivot (eliminate it)
  // or survives into the reduced remainder.
  Row done;
  while (!r.empty()) {
    auto it = m_pivots.find(r.front().first);
    if (it == m_pivots.end()) {
      done.push_back(r.front());
      r.erase(r.begin());
      continue;
    }
    // Temporarily splice the already-kept prefix out; it has no pivot columns.
    Row rest = axpy(r, r.front().second, it->second);
    r = std::move(rest);
  }
  return done;
}

void SparseEliminator::finalize() {
  // Clear every pivot column from all other pivot rows (work upward).
  for (auto it = m_pivots.rbegin(); it != m_pivots.rend(); ++it) {
    const int pcol = it->first;
    for (auto& [col, row] : m_pivots) {
      if (col == pcol) continue;
      auto hit = std::lower_bound(row.begin(), row.end(), pcol,
                                  [](const std::pair<int, Scalar>& e, int c) {
                                    return e.first < c;
                                  });
      if (hit != row.end() && hit->first == pcol)
        row = axpy(row, hit->second, it->second);
    }
  }
}

std::vector<std::vector<Scalar>> SparseEliminator::nullspace(const std::vector<int>& columns) {
  finalize();
  std::vector<std::vector<Scalar>> basis;
  for (int free : columns) {
    if (m_pivots.count(free)) continue;
    std::vector<Scalar> v(columns.size());
    // Dense vector indexed by position in `columns`.
    std::map<int, int> pos;
    for (std::size_t i = 0; i < columns.size(); ++i) pos[columns[i]] = static_cast<int>(i);
    v[pos[free]] = Scalar(1);
    for (const auto& [pcol, row] : m_pivots) {
      for (const auto& [col, c] : row) {
        if (col == free) {
          v[pos[pcol]] = -c;
          break;
        }
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace ymsym
