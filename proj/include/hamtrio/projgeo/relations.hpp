#pragma once

#include <string>
#include <vector>

#include "hamtrio/projgeo/plucker.hpp"

namespace hamtrio::projgeo {

// Variable table whose parameters are the Pluecker coordinates p^{ij},
// 1 <= i < j <= n+1 (no field variables).
inline VarTablePtr plucker_coordinate_table(int n) {
  if (n < 2) throw InputError("Pluecker coordinates need n >= 2");
  if (n + 1 > 9) throw InputError("coordinate labels support n <= 8");
  std::vector<std::string> names;
  for (int i = 1; i <= n + 1; ++i)
    for (int j = i + 1; j <= n + 1; ++j)
      names.push_back("p" + std::to_string(i) + std::to_string(j));
  return symcore::VarTable::make({}, std::move(names));
}

// The quadratic relations cutting out the Pluecker variety:
//   p^{ij} p^{kh} - p^{ik} p^{jh} + p^{ih} p^{jk} = 0,  i < j < k < h.
// Empty for n = 2, one quadric for n = 3, five for n = 4.
inline std::vector<Polynomial> plucker_relations(int n) {
  auto t = plucker_coordinate_table(n);
  auto p = [&](int i, int j) { return Polynomial::var(t, "p" + std::to_string(i) + std::to_string(j)); };
  std::vector<Polynomial> out;
  for (int i = 1; i <= n + 1; ++i)
    for (int j = i + 1; j <= n + 1; ++j)
      for (int k = j + 1; k <= n + 1; ++k)
        for (int h = k + 1; h <= n + 1; ++h)
          out.push_back(p(i, j) * p(k, h) - p(i, k) * p(j, h) + p(i, h) * p(j, k));
  return out;
}

// Homogeneous linear equations in the Pluecker coordinates.
struct CongruenceSystem {
  int n = 0;
  VarTablePtr table;
  std::vector<Polynomial> equations;

  // True when the equations force every coordinate to vanish, i.e. the
  // variety degenerates to the zero locus.
  bool variety_is_trivial() const {
    return static_cast<int>(equations.size()) == table->n_params();
  }
};

// The linear line congruence attached to R_2 = eta d_x^2: the two-form is
// promoted to a three-form with coefficients eta_{ij,n+1} = eta_{ij}, whose
// skew-symmetrization is contracted against the Pluecker coordinates:
// eta_{ijk} p^{jk} = 0. Rows are returned in reduced echelon form with unit
// pivot coefficients.
inline CongruenceSystem linear_congruence(const SkewForm& eta) {
  const int n = eta.n();
  auto t = plucker_coordinate_table(n);
  const int P = t->n_params();
  auto var_index = [&](int i, int j) {
    return t->id_of("p" + std::to_string(i) + std::to_string(j));
  };

  // Raw equations: one per free index of eta_{ijk} p^{jk}.
  std::vector<std::vector<Rational>> rows;
  for (int i = 1; i <= n; ++i) {
    std::vector<Rational> row(static_cast<std::size_t>(P), Rational(0));
    for (int j = 1; j <= n; ++j) {
      Rational c = eta.lower(i - 1, j - 1);
      if (c == 0) continue;
      row[static_cast<std::size_t>(var_index(j, n + 1))] += c;
    }
    rows.push_back(std::move(row));
  }
  {
    std::vector<Rational> row(static_cast<std::size_t>(P), Rational(0));
    for (int j = 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        Rational c = eta.lower(j - 1, k - 1);
        if (c == 0) continue;
        row[static_cast<std::size_t>(var_index(j, k))] += c;
      }
    rows.push_back(std::move(row));
  }

  // Reduced echelon normal form.
  int r = 0;
  const int R = static_cast<int>(rows.size());
  for (int c = 0; c < P && r < R; ++c) {
    int piv = -1;
    for (int i = r; i < R; ++i)
      if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(r)]);
    Rational inv = 1 / rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (int j = 0; j < P; ++j) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *= inv;
    for (int i = 0; i < R; ++i) {
      if (i == r) continue;
      Rational f = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = 0; j < P; ++j)
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    }
    ++r;
  }

  CongruenceSystem sys;
  sys.n = n;
  sys.table = t;
  for (int i = 0; i < r; ++i) {
    Polynomial eq = Polynomial::zero(t);
    for (int j = 0; j < P; ++j)
      if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0)
        eq += Polynomial::var(t, t->n_field() + j) *
              rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (!eq.is_zero()) sys.equations.push_back(std::move(eq));
  }
  return sys;
}

}  // namespace hamtrio::projgeo
