#pragma once

#include <map>
#include <string>
#include <vector>

#include "hamtrio/error.hpp"
#include "hamtrio/symcore/matrix.hpp"
#include "hamtrio/symcore/rational_function.hpp"

namespace hamtrio::symcore {

// A system of equations linear in a set of unknown parameters, with
// coefficients in the rational-function field over the other variables.
// Every unknown must be a parameter of the table; rows contain no field
// variables (conditions get split by field monomials first).
struct LinearSystem {
  VarTablePtr table;
  std::vector<std::string> unknowns;

  struct Row {
    std::vector<RationalFunction> coeffs;  // one per unknown
    RationalFunction constant;             // sum coeffs.x + constant = 0
  };
  std::vector<Row> rows;

  void add_row(std::vector<RationalFunction> coeffs, RationalFunction constant) {
    if (static_cast<int>(coeffs.size()) != static_cast<int>(unknowns.size()))
      throw InternalError("row width mismatch");
    rows.push_back({std::move(coeffs), std::move(constant)});
  }

  // Build a row from a polynomial that is affine in the unknowns.
  void add_equation(const Polynomial& eq) {
    std::vector<int> ids;
    ids.reserve(unknowns.size());
    for (auto& u : unknowns) ids.push_back(table->id_of(u));
    std::vector<RationalFunction> coeffs(unknowns.size(), RationalFunction::zero(table));
    Polynomial constant = Polynomial::zero(table);
    for (auto& t : eq.terms()) {
      int hit = -1;
      for (std::size_t k = 0; k < ids.size(); ++k) {
        std::uint32_t e = t.m.exp(ids[k]);
        if (e == 0) continue;
        if (e > 1 || hit >= 0)
          throw InputError("equation is not linear in the unknowns: " + eq.str());
        hit = static_cast<int>(k);
      }
      if (hit < 0) {
        constant += Polynomial::term(table, t.m, t.c);
      } else {
        Monomial m = t.m;
        m.set_exp(ids[static_cast<std::size_t>(hit)], 0);
        coeffs[static_cast<std::size_t>(hit)] +=
            RationalFunction(Polynomial::term(table, m, t.c));
      }
    }
    add_row(std::move(coeffs), RationalFunction(constant));
  }
};

struct LinearSolution {
  bool consistent = true;
  int rank = 0;
  // pivot unknown -> expression in free unknowns (and other parameters)
  std::map<std::string, RationalFunction> substitution;
  std::vector<std::string> free_unknowns;
};

// Reduced row echelon solution over the exact coefficient field.
// Inconsistent systems come back with consistent = false, never silently.
inline LinearSolution solve_linear(const LinearSystem& sys) {
  const int m = static_cast<int>(sys.rows.size());
  const int n = static_cast<int>(sys.unknowns.size());
  auto t = sys.table;
  auto zero = RationalFunction::zero(t);

  // Augmented matrix [coeffs | constant].
  Mat<RationalFunction> a(m, n + 1, zero);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = sys.rows[static_cast<std::size_t>(i)].coeffs[static_cast<std::size_t>(j)];
    a(i, n) = sys.rows[static_cast<std::size_t>(i)].constant;
  }

  LinearSolution out;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (!a(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = c; j <= n; ++j) std::swap(a(p, j), a(r, j));
    RationalFunction inv = RationalFunction::one(t) / a(r, c);
    for (int j = c; j <= n; ++j) a(r, j) *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      RationalFunction f = a(i, c);
      for (int j = c; j <= n; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  out.rank = r;

  for (int i = r; i < m; ++i) {
    if (!a(i, n).is_zero()) {
      out.consistent = false;
      return out;
    }
  }

  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)])
      out.free_unknowns.push_back(sys.unknowns[static_cast<std::size_t>(c)]);

  for (int i = 0; i < r; ++i) {
    int c = pivot_col[static_cast<std::size_t>(i)];
    // x_c = -constant - sum_{free j} a(i, j) x_j
    RationalFunction value = -a(i, n);
    for (int j = c + 1; j < n; ++j) {
      if (is_pivot[static_cast<std::size_t>(j)] || a(i, j).is_zero()) continue;
      value -= a(i, j) * RationalFunction::var(t, sys.unknowns[static_cast<std::size_t>(j)]);
    }
    out.substitution.emplace(sys.unknowns[static_cast<std::size_t>(c)], std::move(value));
  }
  return out;
}

}  // namespace hamtrio::symcore
