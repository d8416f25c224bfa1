#include <doctest.h>

#include <cmath>

#include "qherm/errors.hpp"
#include "qherm/factorization.hpp"
#include "qherm/operators.hpp"
#include "qherm/spectral.hpp"
#include "test_util.hpp"

using namespace qherm;
using namespace qherm::testing;

namespace {

Operator standard_theta() {
  Operator m(2, 2);
  m << 1.25, Complex(0, -0.75), Complex(0, 0.75), 1.25;
  return m;
}

Operator standard_c() {
  Operator c(2, 2);
  c << Complex(0, 0.75), 1.25, 1.25, Complex(0, -0.75);
  return c;
}

Operator p_plus() {
  Operator p = Operator::Zero(2, 2);
  p.diagonal() << 2.0, 1.0;
  return p;
}

Operator c_plus() {
  Operator c(2, 2);
  c << 0.5, Complex(0, -0.3), Complex(0, 0.6), 1.0;
  return c;
}

struct PseudoHermitian {
  Operator h;
  Operator p;
};

// H = V D V^{-1} is P-pseudo-Hermitian for P = V^{-dag} S V^{-1}, S = signs.
PseudoHermitian random_pseudo_hermitian(Rng& rng, int n) {
  const QuasiHermitian q = random_quasi_hermitian(rng, n);
  Eigen::VectorXd signs(n);
  for (int i = 0; i < n; ++i) signs(i) = i % 2 == 0 ? 1.0 : -1.0;
  const Operator vinv = q.v.inverse();
  const Operator p = vinv.adjoint() * signs.cast<Complex>().asDiagonal() * vinv;
  return {q.h, (p + p.adjoint()) / 2.0};
}

}  // namespace

TEST_CASE("signature examples") {
  CHECK(signature(Operator::Identity(4, 4)) == Signature{4, 0});
  CHECK(signature(swap2()) == Signature{1, 1});
  CHECK(signature(parity_matrix(5)) == Signature{3, 2});
  Operator singular = Operator::Zero(2, 2);
  singular(0, 0) = 1.0;
  try {
    signature(singular);
    FAIL("expected SingularPseudoMetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularPseudoMetric);
  }
}

TEST_CASE("pt_symmetry_residual examples") {
  const PseudoMetric p(swap2());
  for (double a : {0.0, 0.3, 0.6, 1.2, 5.0}) {
    // both sides equal [[1, -ia], [ia, 1]]
    CHECK(pt_symmetry_residual(two_level(a), p).abs <= 1e-15);
  }
  Operator d = Operator::Zero(2, 2);
  d.diagonal() << 1.0, 2.0;
  CHECK(pt_symmetry_residual(d, p).abs ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  Rng rng(3);
  const PseudoMetric random_p(rng.positive(4));
  CHECK(pt_symmetry_residual(Operator::Identity(4, 4), random_p).abs <= 1e-14);
}

TEST_CASE("charge_from_metric examples") {
  const PseudoMetric swap(swap2());
  CHECK((charge_from_metric(swap2(), swap) - Operator::Identity(2, 2)).norm() <=
        1e-15);
  CHECK((charge_from_metric(standard_theta(), swap) - standard_c()).norm() <=
        1e-15);
  const PseudoMetric id(Operator::Identity(2, 2));
  CHECK((charge_from_metric(standard_theta(), id) - standard_theta()).norm() <=
        1e-15);
}

TEST_CASE("standard charge of the two-level model") {
  const Operator h = two_level(0.6);
  const StandardCharge sc = standard_charge(h, PseudoMetric(swap2()));
  CHECK((sc.charge - standard_c()).norm() <= 1e-12);
  CHECK((sc.charge - h / 0.8).norm() <= 1e-12);
  CHECK((sc.charge * sc.charge - Operator::Identity(2, 2)).norm() <= 1e-12);
  CHECK((sc.theta.theta - standard_theta()).norm() <= 1e-12);
  CHECK(sc.theta.min_eig == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sc.theta.max_eig == doctest::Approx(2.0).epsilon(1e-12));
  // 0.75^2 - (0.75i)^2-type entry check: (C^2)_{00} = (0.75i)^2 + 1.25^2 = 1
  CHECK(std::abs(Complex(0, 0.75) * Complex(0, 0.75) + 1.25 * 1.25 - 1.0) <=
        1e-15);
}

TEST_CASE("standard charge when H equals the pseudometric") {
  const StandardCharge sc = standard_charge(swap2(), PseudoMetric(swap2()));
  CHECK((sc.charge - swap2()).norm() <= 1e-12);
  CHECK((sc.theta.theta - Operator::Identity(2, 2)).norm() <= 1e-12);
  CHECK(std::abs(std::abs(sc.norms[0]) - 1.0) <= 1e-12);
}

TEST_CASE("standard charge errors") {
  try {
    standard_charge(two_level(1.2), PseudoMetric(swap2()));
    FAIL("expected BrokenPhase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BrokenPhase);
    CHECK(e.detail().value() == doctest::Approx(0.663325).epsilon(1e-6));
  }
  Operator d = Operator::Zero(2, 2);
  d.diagonal() << 1.0, 2.0;
  try {
    standard_charge(d, PseudoMetric(swap2()));
    FAIL("expected NotPTSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPTSymmetric);
  }
}

TEST_CASE("standard charge on random pseudo-Hermitian models") {
  Rng rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = rng.integer(2, 10);
    const PseudoHermitian m = random_pseudo_hermitian(rng, n);
    const PseudoMetric p(m.p);
    CHECK_FALSE(p.definite());
    const StandardCharge sc = standard_charge(m.h, p);
    CHECK((sc.charge * sc.charge - Operator::Identity(n, n)).norm() <=
          1e-10 * n);
    // Krein P, yet Theta = P C is positive definite.
    CHECK(sc.theta.positive);
    CHECK((sc.charge * m.h - m.h * sc.charge).norm() <=
          1e-10 * m.h.norm() * sc.charge.norm());

    const SpaceTriple t(p, sc.charge);
    const TableReport table = verify_table(t, m.h);
    for (const auto& row : table.rows) {
      INFO(row.relation);
      CHECK(row.rel <= 1e-10);
    }
    CHECK(table.reading() == "krein");
  }
}

TEST_CASE("CPT symmetry of the two-level model") {
  // H (CPT) = (CPT) H with T = complex conjugation reads H C P = C P conj(H).
  const Operator h = two_level(0.6);
  const StandardCharge sc = standard_charge(h, PseudoMetric(swap2()));
  const Operator cp = sc.charge * swap2();
  CHECK((h * swap2() - swap2() * h.conjugate()).norm() <= 1e-15);
  CHECK((h * cp - cp * h.conjugate()).norm() <= 1e-12);
}

TEST_CASE("triple inner products") {
  const SpaceTriple t(PseudoMetric(swap2()), standard_c());
  const StateVector e0 = StateVector::Unit(2, 0);
  CHECK(triple_inner(t, Space::F, e0, e0) == Complex(1.0));
  CHECK(triple_inner(t, Space::R, e0, e0) == Complex(0.0));
  CHECK(std::abs(triple_inner(t, Space::H, e0, e0) - 1.25) <= 1e-15);

  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector v1 = rng.vector(2), v2 = rng.vector(2);
    const Complex via_r = triple_inner(t, Space::R, v1, t.charge() * v2);
    CHECK(std::abs(triple_inner(t, Space::H, v1, v2) - via_r) <= 1e-12);
  }
  CHECK_THROWS_AS(
      triple_inner(t, Space::H, StateVector::Unit(3, 0), e0), Error);
}

TEST_CASE("conjugation in the three spaces") {
  const Operator h = two_level(0.6);
  const SpaceTriple hilbert(PseudoMetric(p_plus()), c_plus());
  CHECK(conjugation_in(hilbert, Space::F, h) == adjoint(h));

  Operator expected(2, 2);
  expected << Complex(0, -0.6), 0.5, 2.0, Complex(0, 0.6);
  const Operator h_ddag = conjugation_in(hilbert, Space::R, h);
  CHECK((h_ddag - expected).norm() <= 1e-15);
  CHECK((h_ddag - h).norm() > 0.5);

  const SpaceTriple krein(PseudoMetric(swap2()), standard_c());
  CHECK((conjugation_in(krein, Space::H, h) - h).norm() <= 1e-14);
  CHECK((conjugation_in(hilbert, Space::H, h) - h).norm() <= 1e-14);

  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator a = rng.matrix(2);
    for (Space s : {Space::F, Space::R, Space::H}) {
      for (const SpaceTriple* t : {&hilbert, &krein}) {
        const Operator twice = conjugation_in(*t, s, conjugation_in(*t, s, a));
        CHECK((twice - a).norm() <= 1e-11 * a.norm());
      }
    }
  }
}

TEST_CASE("verify_table examples") {
  const Operator h = two_level(0.6);
  {
    const SpaceTriple t(PseudoMetric(p_plus()), c_plus());
    Operator theta(2, 2);
    theta << 1.0, Complex(0, -0.6), Complex(0, 0.6), 1.0;
    CHECK((t.theta() - theta).norm() <= 1e-15);
    const TableReport r = verify_table(t, h, 1e-12);
    REQUIRE(r.rows.size() == 6);
    for (const auto& row : r.rows) {
      INFO(row.relation);
      CHECK(row.rel <= 1e-12);
      CHECK(row.pass);
    }
    CHECK(r.signature == Signature{2, 0});
    CHECK(r.reading() == "hilbert");
    CHECK(r.h_vs_r_adjoint > 0.1);  // H != H^ddag for a genuinely positive P
  }
  {
    const StandardCharge sc = standard_charge(h, PseudoMetric(swap2()));
    const SpaceTriple t(PseudoMetric(swap2()), sc.charge);
    const TableReport r = verify_table(t, h, 1e-12);
    CHECK(r.all_pass());
    CHECK(r.signature == Signature{1, 1});
    CHECK(r.reading() == "krein");
    CHECK(r.h_vs_r_adjoint <= 1e-15);  // parity: H^ddag = H identically
  }
  {
    Rng rng(2);
    const Operator a = rng.matrix(3);
    const Operator herm = a + a.adjoint();
    const SpaceTriple t(PseudoMetric(Operator::Identity(3, 3)),
                        Operator::Identity(3, 3));
    CHECK(verify_table(t, herm).all_pass());
  }
  {
    // Theta = P C = I is no metric for the non-Hermitian H.
    const SpaceTriple t(PseudoMetric(swap2()), swap2());
    const TableReport r = verify_table(t, h);
    CHECK_FALSE(r.all_pass());
    CHECK_FALSE(r.rows[0].pass);
    CHECK(r.rows[2].pass);
  }
  // row order
  const SpaceTriple t(PseudoMetric(p_plus()), c_plus());
  const TableReport r = verify_table(t, h);
  CHECK(r.rows[0].relation == "H = H# (in H)");
  CHECK(r.rows[1].relation == "H^ddag C = C H (in R)");
  CHECK(r.rows[2].relation == "C = C^ddag (in R)");
  CHECK(r.rows[3].relation == "C^dag P = P C (in F)");
  CHECK(r.rows[4].relation == "P = P^dag (in F)");
  CHECK(r.rows[5].relation == "H^dag Theta = Theta H (in F)");
}

TEST_CASE("factorization freedom for positive P") {
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(2, 8);
    const QuasiHermitian q = random_quasi_hermitian(rng, n);
    const Operator theta = spectral_metric(eigendecompose(q.h)).theta;
    const PseudoMetric p(rng.positive(n));
    const Operator c = charge_from_metric(theta, p);
    const Operator lhs = c.adjoint() * p.matrix();
    const Operator rhs = p.matrix() * c;
    CHECK((lhs - rhs).norm() <= 1e-12 * theta.norm());
    CHECK((p.matrix() * c - theta).norm() <= 1e-12 * theta.norm());
  }
}

TEST_CASE("space triple rejects a non-Hermitian product") {
  Operator c(2, 2);
  c << 1.0, 2.0, 3.0, 4.0;
  try {
    SpaceTriple t(PseudoMetric(Operator::Identity(2, 2)), c);
    FAIL("expected NonHermitianMetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitianMetric);
  }
}
