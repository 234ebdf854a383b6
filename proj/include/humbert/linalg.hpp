#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "humbert/cohomology.hpp"
#include "humbert/errors.hpp"
#include "humbert/rational.hpp"

namespace humbert {

namespace detail {

// Sparse integer row: (column, coefficient) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

inline void make_primitive(SparseRow& row) {
  if (row.empty()) return;
  Integer content = 0;
  for (const auto& [col, coeff] : row) content = gcd(content, coeff);
  if (content < 0) content = -content;
  if (row.front().second < 0) content = -content;
  if (content != 1) {
    for (auto& [col, coeff] : row) coeff /= content;
  }
}

// Fraction-free step: pivot.lead * row - row.lead * pivot, re-primitivized.
inline SparseRow cross_eliminate(const SparseRow& pivot, const SparseRow& row) {
  const Integer a = pivot.front().second;
  const Integer b = row.front().second;
  SparseRow out;
  out.reserve(pivot.size() + row.size());
  std::size_t i = 0, j = 0;
  while (i < pivot.size() || j < row.size()) {
    if (j == row.size() ||
        (i < pivot.size() && pivot[i].first < row[j].first)) {
      out.emplace_back(pivot[i].first, -b * pivot[i].second);
      ++i;
    } else if (i == pivot.size() || row[j].first < pivot[i].first) {
      out.emplace_back(row[j].first, a * row[j].second);
      ++j;
    } else {
      Integer v = a * row[j].second - b * pivot[i].second;
      if (v != 0) out.emplace_back(row[j].first, std::move(v));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

// Incremental fraction-free row reduction; tracks the rank of everything fed
// to it. Rows are compared exactly, so the result is deterministic for any
// fixed insertion order.
class RowReducer {
public:
  bool insert(SparseRow row) {
    make_primitive(row);
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) {
        pivots_.emplace(row.front().first, std::move(row));
        return true;
      }
      row = cross_eliminate(it->second, row);
    }
    return false;
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

private:
  std::map<std::size_t, SparseRow> pivots_;
};

}  // namespace detail

// Exact rank of the span of the given classes, all homogeneous of the given
// degree on a common ambient power. Fraction-free elimination over the
// integers after clearing denominators; rows are sorted canonically before
// pivoting so the computation is reproducible.
inline int rank_of_span(std::span<const CohClass> classes, int degree) {
  if (classes.empty()) return 0;
  const int ambient = classes.front().ambient_power();
  std::set<Monomial> columns;
  for (const auto& c : classes) {
    if (c.ambient_power() != ambient)
      throw DimensionError("rank_of_span: ambient power mismatch");
    if (c.is_zero()) continue;
    auto d = c.homogeneous_degree();
    if (!d || *d != degree)
      throw DegreeError("rank_of_span: class not homogeneous of given degree");
    for (const auto& [mono, coeff] : c.terms()) columns.insert(mono);
  }
  std::map<Monomial, std::size_t> column_index;
  std::size_t next = 0;
  for (const auto& mono : columns) column_index.emplace(mono, next++);

  std::vector<detail::SparseRow> rows;
  rows.reserve(classes.size());
  for (const auto& c : classes) {
    if (c.is_zero()) continue;
    Integer scale = 1;
    for (const auto& [mono, coeff] : c.terms())
      scale = lcm(scale, denominator(coeff));
    detail::SparseRow row;
    row.reserve(c.term_count());
    for (const auto& [mono, coeff] : c.terms())
      row.emplace_back(column_index.at(mono),
                       numerator(coeff) * (scale / denominator(coeff)));
    detail::make_primitive(row);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());

  detail::RowReducer reducer;
  for (auto& row : rows) reducer.insert(std::move(row));
  return reducer.rank();
}

inline int rank_of_span(std::initializer_list<CohClass> classes, int degree) {
  return rank_of_span(std::span<const CohClass>(classes.begin(), classes.size()),
                      degree);
}

// Exact rank of a dense rational matrix (test oracle and pairing checks).
inline int rank_of_matrix(const std::vector<std::vector<Rational>>& rows) {
  detail::RowReducer reducer;
  std::vector<detail::SparseRow> sparse;
  sparse.reserve(rows.size());
  for (const auto& r : rows) {
    Integer scale = 1;
    for (const auto& v : r) scale = lcm(scale, denominator(v));
    detail::SparseRow row;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] == 0) continue;
      row.emplace_back(j, numerator(r[j]) * (scale / denominator(r[j])));
    }
    detail::make_primitive(row);
    sparse.push_back(std::move(row));
  }
  std::sort(sparse.begin(), sparse.end());
  for (auto& row : sparse) reducer.insert(std::move(row));
  return reducer.rank();
}

// ===========================================================================
// Duality solve: the unique class X of the given degree on C^m with
//   ∫ X · t = rhs(t)   for every basis tensor t of complementary degree.
// The constraint tensors are themselves monomials, so the system is square;
// it is solved by exact sparse Gauss–Jordan elimination. All distinguished
// classes (diagonals, graphs) are produced this way rather than from
// hand-written sign formulas, so every Koszul sign is machine-derived.
// ===========================================================================

inline CohClass duality_solve(
    int m, int degree, int pairs,
    const std::function<Rational(const Monomial&)>& rhs) {
  const std::vector<Monomial> unknowns = monomial_basis(m, degree, pairs);
  const std::vector<Monomial> tuples = monomial_basis(m, 2 * m - degree, pairs);
  if (unknowns.size() != tuples.size())
    throw InternalError("duality_solve: pairing is not square");

  struct SolveRow {
    std::vector<std::pair<std::size_t, Rational>> lhs;  // sorted by column
    Rational rhs;
  };

  // `factor` is taken by value: callers pass references into row.lhs, which
  // is reassigned below.
  auto subtract_scaled = [](SolveRow& row, const Rational factor,
                            const SolveRow& pivot) {
    std::vector<std::pair<std::size_t, Rational>> out;
    out.reserve(row.lhs.size() + pivot.lhs.size());
    std::size_t i = 0, j = 0;
    while (i < row.lhs.size() || j < pivot.lhs.size()) {
      if (j == pivot.lhs.size() ||
          (i < row.lhs.size() && row.lhs[i].first < pivot.lhs[j].first)) {
        out.push_back(row.lhs[i]);
        ++i;
      } else if (i == row.lhs.size() ||
                 pivot.lhs[j].first < row.lhs[i].first) {
        out.emplace_back(pivot.lhs[j].first, -factor * pivot.lhs[j].second);
        ++j;
      } else {
        Rational v = row.lhs[i].second - factor * pivot.lhs[j].second;
        if (v != 0) out.emplace_back(row.lhs[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    row.lhs = std::move(out);
    row.rhs -= factor * pivot.rhs;
  };

  std::map<std::size_t, SolveRow> pivots;  // keyed by pivot column
  for (const auto& t : tuples) {
    SolveRow row;
    for (std::size_t col = 0; col < unknowns.size(); ++col) {
      auto prod = monomial_product(unknowns[col], t);
      if (prod && prod->monomial.is_top())
        row.lhs.emplace_back(col, Rational(prod->sign));
    }
    row.rhs = rhs(t);

    // Reduce against existing pivots.
    for (;;) {
      auto hit = row.lhs.end();
      std::map<std::size_t, SolveRow>::iterator pivot_it;
      for (auto it = row.lhs.begin(); it != row.lhs.end(); ++it) {
        auto p = pivots.find(it->first);
        if (p != pivots.end()) {
          hit = it;
          pivot_it = p;
          break;
        }
      }
      if (hit == row.lhs.end()) break;
      subtract_scaled(row, hit->second, pivot_it->second);
    }
    if (row.lhs.empty()) {
      if (row.rhs != 0)
        throw InternalError("duality_solve: inconsistent system");
      continue;
    }
    // Normalize the new pivot and eliminate its column from stored rows.
    const std::size_t col = row.lhs.front().first;
    const Rational lead = row.lhs.front().second;
    for (auto& [c, v] : row.lhs) v /= lead;
    row.rhs /= lead;
    for (auto& [pcol, prow] : pivots) {
      auto it = std::find_if(prow.lhs.begin(), prow.lhs.end(),
                             [col](const auto& e) { return e.first == col; });
      if (it != prow.lhs.end()) subtract_scaled(prow, it->second, row);
    }
    pivots.emplace(col, std::move(row));
  }

  if (pivots.size() != unknowns.size())
    throw InternalError("duality_solve: singular pairing");

  CohClass out(m);
  for (const auto& [col, row] : pivots) {
    if (row.lhs.size() != 1)
      throw InternalError("duality_solve: elimination did not diagonalize");
    out.add_term(unknowns[col], row.rhs);
  }
  return out;
}

}  // namespace humbert
