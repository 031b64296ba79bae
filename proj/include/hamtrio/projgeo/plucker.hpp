#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamtrio/diffgeo/metric.hpp"

namespace hamtrio::projgeo {

using diffgeo::Metric;
using diffgeo::SkewForm;
using diffgeo::Variance;
using symcore::Mat;
using symcore::Monomial;
using symcore::Polynomial;
using symcore::Rational;
using symcore::RationalFunction;
using symcore::VarTablePtr;

inline int plucker_dim(int n) { return n * (n + 1) / 2; }

// The one-form basis of the Pluecker embedding in affine coordinates:
//   u^i du^j - u^j du^i  (i < j),  then  du^i.
// For n = 2 this is exactly Lie's ordering of the coordinates.
// Each basis form corresponds to a Pluecker coordinate p^{ij} of the
// projective space with one extra homogeneous coordinate: pairs (i, j) with
// j <= n map to +p^{ij}, the du^i block maps to -p^{i, n+1}.
class PluckerBasis {
 public:
  PluckerBasis(int n, VarTablePtr table) : n_(n), table_(std::move(table)) {
    if (table_->n_field() != n) throw InputError("table dimension mismatch");
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) add_pair(i, j);
    for (int i = 1; i <= n; ++i) add_single(i);
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(forms_.size()); }
  const VarTablePtr& table() const { return table_; }

  // Coefficient of du^a (0-based a) of basis form A.
  const Polynomial& coeff(int A, int a) const {
    return forms_[static_cast<std::size_t>(A)][static_cast<std::size_t>(a)];
  }

  // Pluecker pair (i, j), 1-based, j may equal n+1; with sign so that
  // X_A = sign * p^{ij}.
  std::pair<int, int> pair(int A) const { return pairs_[static_cast<std::size_t>(A)]; }
  int sign(int A) const { return signs_[static_cast<std::size_t>(A)]; }

  int index_of_pair(int i, int j) const {
    for (int A = 0; A < size(); ++A)
      if (pairs_[static_cast<std::size_t>(A)] == std::pair<int, int>{i, j}) return A;
    throw InternalError("no such Pluecker pair");
  }

  std::string label(int A) const {
    auto [i, j] = pair(A);
    if (j <= n_)
      return "u" + std::to_string(i) + "*du" + std::to_string(j) + " - u" +
             std::to_string(j) + "*du" + std::to_string(i);
    return "du" + std::to_string(i);
  }

 private:
  void add_pair(int i, int j) {
    std::vector<Polynomial> f(static_cast<std::size_t>(n_), Polynomial::zero(table_));
    f[static_cast<std::size_t>(j - 1)] = Polynomial::var(table_, i - 1);
    f[static_cast<std::size_t>(i - 1)] = -Polynomial::var(table_, j - 1);
    forms_.push_back(std::move(f));
    pairs_.emplace_back(i, j);
    signs_.push_back(1);
  }
  void add_single(int i) {
    std::vector<Polynomial> f(static_cast<std::size_t>(n_), Polynomial::zero(table_));
    f[static_cast<std::size_t>(i - 1)] = Polynomial::one(table_);
    forms_.push_back(std::move(f));
    pairs_.emplace_back(i, n_ + 1);
    signs_.push_back(-1);
  }

  int n_;
  VarTablePtr table_;
  std::vector<std::vector<Polynomial>> forms_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> signs_;
};

// Symmetric constant matrix of a quadratic line complex over the basis of
// PluckerBasis. Entries are constant in the field variables but may carry
// symbolic parameters.
struct QuadricMatrix {
  int n = 0;
  Mat<RationalFunction> q;

  int N() const { return plucker_dim(n); }

  void validate() const {
    if (q.rows() != N() || q.cols() != N())
      throw InputError("quadric matrix has wrong dimension");
    for (int a = 0; a < q.rows(); ++a)
      for (int b = 0; b < q.cols(); ++b) {
        if (q(a, b) != q(b, a)) throw InputError("quadric matrix must be symmetric");
        if (q(a, b).num().has_field_vars() || q(a, b).den().has_field_vars())
          throw InputError("quadric matrix entries must be constant");
      }
  }

  bool operator==(const QuadricMatrix& o) const { return n == o.n && q == o.q; }
};

inline QuadricMatrix zero_quadric(int n, const VarTablePtr& t) {
  return {n, Mat<RationalFunction>(plucker_dim(n), plucker_dim(n),
                                   RationalFunction::zero(t))};
}

// Expands X^T Q X over the basis one-forms into a covariant metric:
// gbar_{ab} = sum Q_{AB} M_A^a M_B^b.
inline Metric monge_from_Q(const QuadricMatrix& Q, const VarTablePtr& table) {
  Q.validate();
  PluckerBasis basis(Q.n, table);
  const int n = Q.n;
  const int N = basis.size();
  Mat<RationalFunction> g(n, n, RationalFunction::zero(table));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      RationalFunction acc = RationalFunction::zero(table);
      for (int A = 0; A < N; ++A)
        for (int B = 0; B < N; ++B) {
          if (Q.q(A, B).is_zero()) continue;
          Polynomial prod = basis.coeff(A, a) * basis.coeff(B, b);
          if (prod.is_zero()) continue;
          acc += Q.q(A, B).remap(table) * RationalFunction(prod);
        }
      g(a, b) = acc;
      g(b, a) = std::move(acc);
    }
  return Metric(Variance::Covariant, std::move(g));
}

// Symmetric matrices of the quadratic Pluecker relations, written over the
// basis coordinates X_A. For distinct four-index sets the supports are
// disjoint, so these are mutually orthogonal in the entrywise inner product.
inline std::vector<Mat<Rational>> relation_matrices(int n) {
  const int N = plucker_dim(n);
  PluckerBasis basis(n, symcore::VarTable::make_n(n));
  std::vector<Mat<Rational>> out;
  std::vector<int> idx(static_cast<std::size_t>(n + 2), 0);
  // all 4-subsets i<j<k<h of {1..n+1}
  for (int i = 1; i <= n + 1; ++i)
    for (int j = i + 1; j <= n + 1; ++j)
      for (int k = j + 1; k <= n + 1; ++k)
        for (int h = k + 1; h <= n + 1; ++h) {
          Mat<Rational> s(N, N, Rational(0));
          auto add = [&](int a1, int a2, int b1, int b2, int sgn) {
            int A = basis.index_of_pair(a1, a2);
            int B = basis.index_of_pair(b1, b2);
            Rational c = Rational(sgn) * basis.sign(A) * basis.sign(B);
            s(A, B) += c / 2;
            s(B, A) += c / 2;
          };
          add(i, j, k, h, 1);
          add(i, k, j, h, -1);
          add(i, h, j, k, 1);
          out.push_back(std::move(s));
        }
  (void)idx;
  return out;
}

struct QFromMongeResult {
  QuadricMatrix Q;
  int gauge_dim = 0;  // dimension of the Pluecker-relation span (n >= 3)
};

// Inverse of monge_from_Q: exact linear solve for the quadric matrix. For
// n >= 3 the solution is only defined modulo the span of the Pluecker
// relations; the canonical representative is the one orthogonal to that
// span in the entrywise inner product.
inline QFromMongeResult Q_from_monge(const Metric& gbar) {
  if (gbar.variance() != Variance::Covariant)
    throw InputError("Q_from_monge expects a covariant metric");
  auto mc = diffgeo::monge_check(gbar);
  if (!mc.is_monge)
    throw InputError("metric is not a Monge metric; cyclic residual " +
                     mc.residual.str() + " at (" + std::to_string(mc.i) + "," +
                     std::to_string(mc.j) + "," + std::to_string(mc.k) + ")");
  const int n = gbar.n();
  auto table = gbar.table();
  PluckerBasis basis(n, table);
  const int N = basis.size();

  // Unknowns x_{AB}, A <= B. Row space: (entry (a<=b), u-monomial).
  std::vector<std::pair<int, int>> unknowns;
  for (int A = 0; A < N; ++A)
    for (int B = A; B < N; ++B) unknowns.emplace_back(A, B);
  const int M = static_cast<int>(unknowns.size());

  std::map<std::pair<std::pair<int, int>, Monomial>, int> row_of;
  std::vector<std::vector<Rational>> rows;       // coefficient rows
  std::vector<Polynomial> rhs;                   // parameter polynomials
  auto row_for = [&](int a, int b, const Monomial& m) {
    auto key = std::make_pair(std::make_pair(a, b), m);
    auto it = row_of.find(key);
    if (it != row_of.end()) return it->second;
    int r = static_cast<int>(rows.size());
    row_of.emplace(key, r);
    rows.emplace_back(static_cast<std::size_t>(M), Rational(0));
    rhs.push_back(Polynomial::zero(table));
    return r;
  };

  for (int col = 0; col < M; ++col) {
    auto [A, B] = unknowns[static_cast<std::size_t>(col)];
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        Polynomial s = basis.coeff(A, a) * basis.coeff(B, b);
        if (A != B) s += basis.coeff(B, a) * basis.coeff(A, b);
        for (auto& term : s.terms())
          rows[static_cast<std::size_t>(row_for(a, b, term.m))][static_cast<std::size_t>(col)] += term.c;
      }
  }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Polynomial e = gbar(a, b).as_polynomial();
      for (auto& [m, coeff] : symcore::split_by_field_vars_keyed(e)) {
        // m is the field monomial; coeff the parameter part.
        Monomial um = m;
        int r = row_for(a, b, um);
        rhs[static_cast<std::size_t>(r)] += coeff;
      }
    }

  // RREF over the rationals with polynomial right-hand sides.
  const int R = static_cast<int>(rows.size());
  std::vector<int> pivot_col;
  int rr = 0;
  for (int c = 0; c < M && rr < R; ++c) {
    int p = -1;
    for (int i = rr; i < R; ++i)
      if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[static_cast<std::size_t>(p)], rows[static_cast<std::size_t>(rr)]);
    std::swap(rhs[static_cast<std::size_t>(p)], rhs[static_cast<std::size_t>(rr)]);
    Rational inv = 1 / rows[static_cast<std::size_t>(rr)][static_cast<std::size_t>(c)];
    for (int j = c; j < M; ++j) rows[static_cast<std::size_t>(rr)][static_cast<std::size_t>(j)] *= inv;
    rhs[static_cast<std::size_t>(rr)] = rhs[static_cast<std::size_t>(rr)] * inv;
    for (int i = 0; i < R; ++i) {
      if (i == rr) continue;
      Rational f = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = c; j < M; ++j)
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * rows[static_cast<std::size_t>(rr)][static_cast<std::size_t>(j)];
      rhs[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(rr)] * f;
    }
    pivot_col.push_back(c);
    ++rr;
  }
  for (int i = rr; i < R; ++i)
    if (!rhs[static_cast<std::size_t>(i)].is_zero())
      throw InputError("metric is not representable over the Pluecker basis");

  // Particular solution with free unknowns set to zero.
  std::vector<Polynomial> x(static_cast<std::size_t>(M), Polynomial::zero(table));
  for (int i = 0; i < rr; ++i)
    x[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = rhs[static_cast<std::size_t>(i)];

  QuadricMatrix Q = zero_quadric(n, table);
  for (int col = 0; col < M; ++col) {
    auto [A, B] = unknowns[static_cast<std::size_t>(col)];
    Q.q(A, B) = RationalFunction(x[static_cast<std::size_t>(col)]);
    Q.q(B, A) = Q.q(A, B);
  }

  // Canonical gauge for n >= 3: subtract the projection onto the span of
  // the Pluecker relation matrices (mutually orthogonal, disjoint support).
  auto rels = relation_matrices(n);
  for (auto& S : rels) {
    RationalFunction dot = RationalFunction::zero(table);
    Rational norm(0);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        if (S(a, b) == 0) continue;
        dot += Q.q(a, b) * S(a, b);
        norm += S(a, b) * S(a, b);
      }
    if (norm == 0) continue;
    RationalFunction f = dot * Rational(1 / norm);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        if (S(a, b) != 0) Q.q(a, b) -= f * S(a, b);
  }

  return {std::move(Q), static_cast<int>(rels.size())};
}

// Rank classification of a two-component quadric (a conic).
inline int conic_rank(const QuadricMatrix& Q) {
  if (Q.n != 2) throw InputError("conic extraction is n=2 only");
  Q.validate();
  Mat<Rational> m(Q.N(), Q.N(), Rational(0));
  for (int a = 0; a < Q.N(); ++a)
    for (int b = 0; b < Q.N(); ++b) {
      if (!Q.q(a, b).is_constant())
        throw InputError("conic_rank requires numeric entries; found symbolic parameters");
      m(a, b) = Q.q(a, b).constant_value();
    }
  return symcore::rank(m);
}

// Congruence action Q -> A^T Q A.
inline QuadricMatrix congruence_transform(const QuadricMatrix& Q, const Mat<Rational>& A) {
  Q.validate();
  const int N = Q.N();
  if (A.rows() != N || A.cols() != N) throw InputError("transform dimension mismatch");
  Mat<Rational> a = A;
  if (symcore::det(a) == 0) throw InputError("congruence transform must be invertible");
  auto table = Q.q(0, 0).table();
  Mat<RationalFunction> r(N, N, RationalFunction::zero(table));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      RationalFunction acc = RationalFunction::zero(table);
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          Rational c = A(k, i) * A(l, j);
          if (c == 0) continue;
          acc += Q.q(k, l) * c;
        }
      r(i, j) = std::move(acc);
    }
  return {Q.n, std::move(r)};
}

}  // namespace hamtrio::projgeo
