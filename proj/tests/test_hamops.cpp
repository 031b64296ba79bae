#include <catch2/catch_amalgamated.hpp>

#include "hamtrio/hamops/checks.hpp"
#include "hamtrio/hamops/pencil.hpp"
#include "hamtrio/symcore/linear_system.hpp"
#include "support/numeric_conditions.hpp"
#include "support/test_support.hpp"
#include "support/trio_fixtures.hpp"

using namespace hamtrio;
using namespace hamtrio::hamops;
using namespace testsupport;
using symcore::LinearSystem;
using symcore::Polynomial;
using symcore::RationalSampler;
using symcore::solve_linear;
using symcore::VarTable;

namespace {

FirstOrderOperator family_instance(const symcore::VarTablePtr& t,
                                   std::map<std::string, symcore::Rational> c) {
  std::map<int, Polynomial> subs;
  for (auto& [k, v] : c) subs[t->id_of(k)] = Polynomial::constant(t, v);
  auto fam = family_operator(t);
  Mat<RationalFunction> g(2, 2, RationalFunction::zero(t));
  Mat<RationalFunction> w(2, 2, RationalFunction::zero(t));
  Christoffel gamma(2, t);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      g(i, j) = fam.g()(i, j).subst(subs);
      w(i, j) = fam.tail()(i, j).subst(subs);
      for (int k = 0; k < 2; ++k) gamma.at(i, j, k) = fam.gamma().at(i, j, k).subst(subs);
    }
  return FirstOrderOperator(Metric(Variance::Contravariant, g), gamma, w);
}

// Frozen Hamiltonian-but-incompatible pair: the identity metric against the
// push-forward of the identity along (u1, u2 + u1^2).
FirstOrderOperator incompat_a(const symcore::VarTablePtr& t) {
  return FirstOrderOperator::local(metric_from(t, {{"1", "0"}, {"0", "1"}}));
}
FirstOrderOperator incompat_b(const symcore::VarTablePtr& t) {
  return FirstOrderOperator::local(
      metric_from(t, {{"1", "2*u1"}, {"2*u1", "4*u1^2 + 1"}}));
}

}  // namespace

TEST_CASE("hamiltonian_check: Kaup-Broer second operator passes") {
  auto t = kb_table();
  auto rep = hamiltonian_check(kb_q1(t));
  CHECK(rep.overall());
  REQUIRE(rep.conditions.size() == 5);
  for (auto& c : rep.conditions) CHECK(c.passed);
}

TEST_CASE("hamiltonian_check: constant operator passes trivially") {
  auto t = VarTable::make_n(2);
  auto op = FirstOrderOperator::local(metric_from(t, {{"2", "0"}, {"0", "-1"}}));
  CHECK(hamiltonian_check(op).overall());
}

TEST_CASE("hamiltonian_check: curved metric with zero tail fails the curvature balance") {
  auto t = VarTable::make_n(2);
  auto op = FirstOrderOperator::local(metric_from(t, {{"1", "0"}, {"0", "u1"}}));
  auto rep = hamiltonian_check(op);
  CHECK_FALSE(rep.overall());
  auto* c = rep.find("curvature_tail_balance");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  // The other four conditions hold for a Levi-Civita connection with w = 0.
  CHECK(rep.find("connection_symmetry")->passed);
  CHECK(rep.find("metric_compatibility")->passed);
  CHECK(rep.find("tail_metric_symmetry")->passed);
  CHECK(rep.find("tail_covariant_symmetry")->passed);
}

TEST_CASE("compat_with_R2: symbolic family with the matched tail passes") {
  auto t = family_table();
  auto rep = compat_with_R2(family_operator(t), {diffgeo::SkewForm::standard(2)});
  CHECK(rep.overall());
  CHECK_FALSE(rep.not_hamiltonian);
  REQUIRE(rep.conditions.size() == 6);
}

TEST_CASE("compat_with_R2: dropping the tail forces the leading coefficient to vanish") {
  auto t = family_table();
  auto fam = family_operator(t);
  // Same metric and symbols, zero tail, c0 still symbolic.
  auto op = FirstOrderOperator::local(fam.g(), fam.gamma());
  auto rep = compat_with_R2(op, {diffgeo::SkewForm::standard(2)});
  CHECK_FALSE(rep.overall());
  CHECK(rep.not_hamiltonian);  // curvature no longer balanced by the tail
  auto* c4 = rep.find("gamma_gradient_tail");
  REQUIRE(c4 != nullptr);
  CHECK_FALSE(c4->passed);
  CHECK(c4->indices == std::vector<int>{1, 1, 1, 1});
  CHECK(c4->residual == "c0");
  // tail conditions hold trivially; the affine structure fails consistently
  // with the gradient condition (b = Gamma is not constant without a tail).
  CHECK(rep.find("tail_eta_symmetry")->passed);
  CHECK_FALSE(rep.find("gamma_affine_structure")->passed);
}

TEST_CASE("compat_with_R2: printed local four-component solution passes") {
  auto t = n4_local_table();
  auto rep = compat_with_R2(n4_local(t), {n4_eta()});
  CHECK(rep.overall());
  CHECK_FALSE(rep.not_hamiltonian);
}

TEST_CASE("compat_with_R2: enforce mode throws on non-Hamiltonian input") {
  auto t = VarTable::make_n(2);
  auto op = FirstOrderOperator::local(metric_from(t, {{"1", "0"}, {"0", "u1"}}));
  CHECK_THROWS_AS(compat_with_R2(op, {diffgeo::SkewForm::standard(2)},
                                 Precondition::Enforce),
                  InputError);
}

TEST_CASE("cf_algebra_check: zero product passes") {
  auto t = VarTable::make_n(2);
  Christoffel zero(2, t);
  CHECK(cf_algebra_check(zero, diffgeo::SkewForm::standard(2)).overall());
}

TEST_CASE("cf_algebra_check: local four-component structure constants pass") {
  auto t = n4_local_table();
  CHECK(cf_algebra_check(n4_local(t).gamma(), n4_eta()).overall());
}

TEST_CASE("cf_algebra_check: single structure constant fails the cocycle axiom") {
  auto t = VarTable::make_n(2);
  Christoffel gamma = christoffel_from(t, 2, {{1, 2, 1, "1"}});
  auto rep = cf_algebra_check(gamma, diffgeo::SkewForm::standard(2));
  CHECK_FALSE(rep.overall());
  // First failing axiom in report order is the cocycle condition.
  const ConditionResult* first_fail = nullptr;
  for (auto& c : rep.conditions)
    if (!c.passed) {
      first_fail = &c;
      break;
    }
  REQUIRE(first_fail != nullptr);
  CHECK(first_fail->name == "gamma_eta_cocycle");
  CHECK(first_fail->indices == std::vector<int>{1, 2, 2});
  CHECK(first_fail->residual == "1");
}

TEST_CASE("gamma_from_bw: zero tail returns the constants themselves") {
  auto t = VarTable::make_n(2, {"b1", "b2"});
  Christoffel b = christoffel_from(t, 2, {{1, 1, 1, "b1"}, {2, 1, 2, "b2"}});
  Mat<RationalFunction> w(2, 2, RationalFunction::zero(t));
  CHECK(gamma_from_bw(b, w) == b);
}

TEST_CASE("gamma_from_bw: reproduces the non-local four-component symbol list") {
  auto t = n4_nonlocal_table();
  Christoffel b = christoffel_from(t, 4, {{2, 2, 1, "b22_1"}, {4, 2, 3, "b22_1"}});
  auto w = tail_from(t, 4, {{2, 1, "w2_1"}, {4, 3, "w2_1"}});
  Christoffel derived = gamma_from_bw(b, w);
  CHECK(derived == n4_nonlocal(t).gamma());
}

TEST_CASE("gamma_from_bw rejects field variables in the constants") {
  auto t = VarTable::make_n(2);
  Christoffel b = christoffel_from(t, 2, {{1, 1, 1, "u1"}});
  Mat<RationalFunction> w(2, 2, RationalFunction::zero(t));
  CHECK_THROWS_AS(gamma_from_bw(b, w), InputError);
}

TEST_CASE("family Levi-Civita symbols match the affine shape with a unique b") {
  // Solve levi_civita(g_family) == gamma_from_bw(b, -(c0/2) Id) for the
  // 8 unknown constants b^{ij}_k via the linear solver.
  std::vector<std::string> bnames;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        bnames.push_back("b" + std::to_string(i) + std::to_string(j) + "_" +
                         std::to_string(k));
  std::vector<std::string> params = {"c0", "c1", "c2", "c3", "c4", "c5"};
  params.insert(params.end(), bnames.begin(), bnames.end());
  auto t = VarTable::make_n(2, params);

  Metric g = family_metric(t);
  Christoffel lc = diffgeo::levi_civita(g);
  Christoffel b(2, t);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        b.at(i, j, k) = RationalFunction::var(
            t, "b" + std::to_string(i + 1) + std::to_string(j + 1) + "_" +
                   std::to_string(k + 1));
  auto w = tail_from(t, 2, {{1, 1, "-1/2*c0"}, {2, 2, "-1/2*c0"}});
  Christoffel shaped = gamma_from_bw(b, w);

  LinearSystem sys{t, bnames, {}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        RationalFunction diff = lc.at(i, j, k) - shaped.at(i, j, k);
        REQUIRE(diff.is_polynomial());
        for (auto& part : symcore::split_by_field_vars(diff.as_polynomial()))
          sys.add_equation(part);
      }
  auto sol = solve_linear(sys);
  REQUIRE(sol.consistent);
  CHECK(sol.free_unknowns.empty());  // unique constant b
  CHECK(sol.substitution.at("b11_1") == R(t, "1/2*c1"));
  CHECK(sol.substitution.at("b21_2") == R(t, "1/2*c1"));
  CHECK(sol.substitution.at("b12_1") == R(t, "1/2*c3"));
  CHECK(sol.substitution.at("b22_2") == R(t, "1/2*c3"));
  for (auto& name : {"b11_2", "b12_2", "b21_1", "b22_1"})
    CHECK(sol.substitution.at(name).is_zero());
}

TEST_CASE("pencil_compat: Kaup-Broer pair is compatible") {
  auto t = kb_table();
  CHECK(pencil_compat(kb_p1(t), kb_q1(t)).overall());
}

TEST_CASE("pencil_compat: any two family members are compatible") {
  auto t = family_table();
  RationalSampler gen(160914);
  int done = 0;
  while (done < 4) {
    std::map<std::string, symcore::Rational> ca, cb;
    for (auto& name : {"c0", "c1", "c2", "c3", "c4", "c5"}) {
      ca[name] = gen.next();
      cb[name] = gen.next();
    }
    try {
      auto pa = family_instance(t, ca);
      auto pb = family_instance(t, cb);
      auto rep = pencil_compat(pa, pb);
      CHECK(rep.overall());
      ++done;
    } catch (const DegeneracyError&) {
      // degenerate sample; draw again
    }
  }
}

TEST_CASE("pencil_compat: frozen incompatible pair, with numeric lambda screening") {
  auto t = VarTable::make_n(2);
  auto a = incompat_a(t);
  auto b = incompat_b(t);
  CHECK(hamiltonian_check(a).overall());
  CHECK(hamiltonian_check(b).overall());

  auto rep = pencil_compat(a, b);
  CHECK_FALSE(rep.overall());
  auto* cs = rep.find("connection_symmetry");
  REQUIRE(cs != nullptr);
  CHECK_FALSE(cs->passed);
  CHECK(cs->residual == "4*u1*lambda");

  // Screening oracle: the same check at five distinct numeric values of the
  // pencil parameter, cross-validated against the symbolic verdict.
  for (int lam : {1, 2, 3, 5, 7}) {
    Mat<RationalFunction> ge(2, 2, RationalFunction::zero(t));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        ge(i, j) = a.g()(i, j) + RationalFunction::constant(t, lam) * b.g()(i, j);
    Christoffel gam(2, t);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          gam.at(i, j, k) = a.gamma().at(i, j, k) +
                            RationalFunction::constant(t, lam) * b.gamma().at(i, j, k);
    auto numeric = hamiltonian_check(
        FirstOrderOperator::local(Metric(Variance::Contravariant, ge), gam));
    // Symbolic residual 4 u1 lambda is nonzero at every sampled lambda, so
    // each numeric run must fail the same condition.
    CHECK_FALSE(numeric.overall());
    CHECK_FALSE(numeric.find("connection_symmetry")->passed);
  }
}

TEST_CASE("trio_verify: Kaup-Broer and AKNS trios pass") {
  auto t = kb_table();
  auto kb = trio_verify(kb_p1(t), kb_q1(t), kb_r2());
  CHECK(kb.overall());
  auto akns = trio_verify(kb_p1(t), akns_q1(t), kb_r2());
  CHECK(akns.overall());
}

TEST_CASE("trio_verify: incompatible replacement fails at the pencil stage") {
  auto t = VarTable::make_n(2);
  auto rep = trio_verify(incompat_a(t), incompat_b(t), kb_r2());
  CHECK_FALSE(rep.overall());
  bool pencil_failed = false;
  for (auto& c : rep.conditions)
    if (c.name.rfind("P_Q_pencil.", 0) == 0 && !c.passed) pencil_failed = true;
  CHECK(pencil_failed);
}

TEST_CASE("invariant: compat passers have Monge lowered metrics") {
  {
    auto t = family_table();
    auto low = diffgeo::lower_with_eta(family_operator(t).g(), diffgeo::SkewForm::standard(2));
    CHECK(diffgeo::monge_check(low).is_monge);
  }
  {
    auto t = n4_local_table();
    CHECK(diffgeo::monge_check(diffgeo::lower_with_eta(n4_local(t).g(), n4_eta())).is_monge);
  }
  {
    auto t = n4_nonlocal_table();
    CHECK(diffgeo::monge_check(diffgeo::lower_with_eta(n4_nonlocal(t).g(), n4_eta())).is_monge);
  }
}

TEST_CASE("invariant: affine structure restated and b recovered at the origin") {
  auto check_op = [](const FirstOrderOperator& op) {
    Christoffel b_extracted(op.n(), op.table());
    auto res = check_gamma_affine_structure(op, &b_extracted);
    CHECK(res.passed);
    // b at u = 0 equals the extracted constants; rebuilding Gamma from them
    // gives back the operator's symbols.
    std::map<int, Polynomial> origin;
    for (int id = 0; id < op.n(); ++id)
      origin[id] = Polynomial::zero(op.table());
    Christoffel b0(op.n(), op.table());
    for (int i = 0; i < op.n(); ++i)
      for (int j = 0; j < op.n(); ++j)
        for (int k = 0; k < op.n(); ++k)
          b0.at(i, j, k) = op.gamma().at(i, j, k).subst(origin);
    for (int i = 0; i < op.n(); ++i)
      for (int j = 0; j < op.n(); ++j)
        for (int k = 0; k < op.n(); ++k)
          CHECK(b_extracted.at(i, j, k) == b0.at(i, j, k));
    CHECK(gamma_from_bw(b_extracted, op.tail()) == op.gamma());
  };
  auto tf = family_table();
  check_op(family_operator(tf));
  auto tn = n4_nonlocal_table();
  check_op(n4_nonlocal(tn));
}

TEST_CASE("invariant: pencil of an operator with itself passes") {
  auto t = kb_table();
  CHECK(pencil_compat(kb_q1(t), kb_q1(t)).overall());
  auto tf = family_table();
  auto inst = family_instance(tf, {{"c0", symcore::Rational(1)},
                                   {"c1", symcore::Rational(0)},
                                   {"c2", symcore::Rational(1)},
                                   {"c3", symcore::Rational(0)},
                                   {"c4", symcore::Rational(1)},
                                   {"c5", symcore::Rational(0)}});
  CHECK(pencil_compat(inst, inst).overall());
}

TEST_CASE("invariant: pencil verdict is symmetric") {
  auto t = kb_table();
  CHECK(pencil_compat(kb_p1(t), kb_q1(t)).overall() ==
        pencil_compat(kb_q1(t), kb_p1(t)).overall());
  auto t2 = VarTable::make_n(2);
  CHECK(pencil_compat(incompat_a(t2), incompat_b(t2)).overall() ==
        pencil_compat(incompat_b(t2), incompat_a(t2)).overall());
}

TEST_CASE("invariant: compat verdicts unchanged under scaling of eta") {
  auto scale_skew = [](const diffgeo::SkewForm& s, symcore::Rational c) {
    Mat<symcore::Rational> e = s.eta();
    for (int i = 0; i < e.rows(); ++i)
      for (int j = 0; j < e.cols(); ++j) e(i, j) *= c;
    return diffgeo::SkewForm(e);
  };
  auto tf = family_table();
  auto fam = family_operator(tf);
  for (symcore::Rational c : {symcore::Rational(3), symcore::Rational(-2, 5)}) {
    auto r1 = compat_with_R2(fam, {diffgeo::SkewForm::standard(2)});
    auto r2 = compat_with_R2(fam, {scale_skew(diffgeo::SkewForm::standard(2), c)});
    REQUIRE(r1.conditions.size() == r2.conditions.size());
    for (std::size_t i = 0; i < r1.conditions.size(); ++i)
      CHECK(r1.conditions[i].passed == r2.conditions[i].passed);
  }
  auto tl = n4_local_table();
  auto rl1 = compat_with_R2(n4_local(tl), {n4_eta()});
  auto rl2 = compat_with_R2(n4_local(tl), {scale_skew(n4_eta(), symcore::Rational(7))});
  CHECK(rl1.overall() == rl2.overall());
}

TEST_CASE("numeric oracle: identically-zero residuals vanish at random points") {
  RationalSampler gen(55190);
  {
    auto t = kb_table();
    auto op = kb_q1(t);
    auto s = diffgeo::detail::scale_metric(op.g());
    auto eta = kb_r2().eta;
    auto ok = [&](const std::vector<double>& pt) {
      return std::abs(s.det.eval_double(pt)) > 1.0 && well_conditioned(op, pt);
    };
    for (int i = 0; i < 20; ++i) {
      auto pt = random_small_point(t, gen, ok);
      check_operator_numerically(op, &eta, pt, [&](bool good) { CHECK(good); });
    }
  }
  {
    auto t = n4_nonlocal_table();
    auto op = n4_nonlocal(t);
    auto s = diffgeo::detail::scale_metric(op.g());
    auto eta = n4_eta();
    auto ok = [&](const std::vector<double>& pt) {
      return std::abs(s.det.eval_double(pt)) > 10.0 && well_conditioned(op, pt);
    };
    for (int i = 0; i < 20; ++i) {
      auto pt = random_small_point(t, gen, ok);
      check_operator_numerically(op, &eta, pt, [&](bool good) { CHECK(good); });
    }
  }
}

TEST_CASE("pencil of mismatched dimensions or reserved names is rejected") {
  auto t2 = VarTable::make_n(2);
  auto t4 = n4_local_table();
  CHECK_THROWS_AS(pencil_compat(kb_p1(t2), n4_local(t4)), InputError);
  auto tl = VarTable::make_n(2, {"lambda"});
  auto op = FirstOrderOperator::local(metric_from(tl, {{"1", "0"}, {"0", "1"}}));
  CHECK_THROWS_AS(pencil_compat(op, op), InputError);
}

TEST_CASE("degenerate pencil is an explicit error, not a verdict") {
  auto t = VarTable::make_n(2);
  auto a = FirstOrderOperator::local(metric_from(t, {{"1", "0"}, {"0", "0"}}));
  // a alone is degenerate; hamiltonian_check refuses it outright.
  CHECK_THROWS_AS(hamiltonian_check(a), DegeneracyError);
  // A pencil degenerate for every lambda: two metrics singular in the same
  // direction.
  auto b1 = FirstOrderOperator::local(metric_from(t, {{"1", "0"}, {"0", "0"}}));
  auto b2 = FirstOrderOperator::local(metric_from(t, {{"2", "0"}, {"0", "0"}}));
  CHECK_THROWS_AS(pencil_compat(b1, b2), DegeneracyError);
}
