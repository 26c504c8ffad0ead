#include <doctest.h>

#include <cmath>

#include "cqc/channels.hpp"
#include "cqc/errors.hpp"
#include "support.hpp"

using namespace cqc;
using namespace cqc::test;

TEST_CASE("kraus_pair") {
  const auto [e0, e1] = kraus_pair(3.0, 0.0);
  CHECK(max_abs_diff(e0, Mat2::identity()) == 0.0);
  CHECK(max_abs_diff(e1, Mat2::zero()) == 0.0);

  const double gamma = 2.0, tau = std::log(2.0) / gamma;
  CHECK(AdChannel::make(gamma, tau).p == doctest::Approx(0.5).epsilon(1e-15));
  const auto [f0, f1] = kraus_pair(gamma, tau);
  CHECK(max_abs_diff(f0, Mat2{1.0, 0.0, 0.0, 1.0 / std::sqrt(2.0)}) <= 1e-15);
  CHECK(max_abs_diff(f1, Mat2{0.0, 1.0 / std::sqrt(2.0), 0.0, 0.0}) <= 1e-15);

  CHECK_THROWS_AS(kraus_pair(-1.0, 0.1), ParameterError);
  CHECK_THROWS_AS(kraus_pair(1.0, -0.1), ParameterError);
  CHECK_THROWS_AS(ad_apply(Herm2::ground(), std::nan(""), 0.1), ParameterError);
}

TEST_CASE("jump probability is accurate for tiny gamma tau") {
  const AdChannel ch = AdChannel::make(1e-3, 1e-12);
  CHECK(ch.p == doctest::Approx(1e-15).epsilon(1e-12));
  CHECK(AdChannel::make(5.0, 0.0).p == 0.0);
}

TEST_CASE("ad_apply examples") {
  const double gamma = 1.5, tau = std::log(2.0) / gamma;
  CHECK(max_abs_diff(ad_apply(Herm2::ground(), gamma, 0.7), Herm2::ground()) == 0.0);
  CHECK(max_abs_diff(ad_apply(Herm2::excited(), gamma, tau), Herm2{0.5, 0.5, 0.0}) <= 1e-15);
  const double p = 0.5;
  CHECK(max_abs_diff(ad_apply(0.5 * Herm2::identity(), gamma, tau), Herm2{(1 + p) / 2, (1 - p) / 2, 0.0}) <= 1e-15);
}

TEST_CASE("ad_apply and its dual against brute-force Kraus conjugation") {
  for (int i = 0; i < 2000; ++i) {
    const double gamma = uniform(0, 20), tau = uniform(0, 1);
    const Herm2 x = random_herm();
    const Mat2 expect = oracle::ad(x.full(), gamma, tau);
    CHECK(max_abs_diff(ad_apply(x, gamma, tau).full(), expect) <= 1e-14 * (1 + frobenius(x)));
    const Mat2 expect_dual = oracle::ad_dual(x.full(), gamma, tau);
    CHECK(max_abs_diff(ad_dual_apply(x, gamma, tau).full(), expect_dual) <= 1e-14 * (1 + frobenius(x)));
  }
}

TEST_CASE("ad_dual_apply on sigma_z at p = 1/2") {
  const double gamma = 1.0, tau = std::log(2.0);
  const Herm2 out = ad_dual_apply(Herm2::pauli_z(), gamma, tau);
  // E0^dag sz E0 + E1^dag sz E1 = diag(1, -(1-p)) + diag(0, p) = diag(1, 0)
  CHECK(max_abs_diff(out, Herm2{1.0, 0.0, 0.0}) <= 1e-15);
  CHECK(max_abs_diff(out.full(), oracle::ad_dual(oracle::sz(), gamma, tau)) <= 1e-15);
}

TEST_CASE("channel properties on random inputs") {
  for (int i = 0; i < 5000; ++i) {
    const double gamma = uniform(0, 20), t1 = uniform(0, 1), t2 = uniform(0, 1);
    const Herm2 rho = random_state();
    const Herm2 out = ad_apply(rho, gamma, t1);
    CHECK(std::abs(out.trace() - rho.trace()) <= 1e-15);
    CHECK(eig_min(out) >= -1e-14);
    CHECK(max_abs_diff(ad_apply(out, gamma, t2), ad_apply(rho, gamma, t1 + t2)) <= 1e-14);

    const Herm2 x = random_herm();
    CHECK(std::abs(hs_inner(ad_dual_apply(x, gamma, t1), rho) - hs_inner(x, out)) <= 1e-14);
    CHECK(ad_dual_apply(Herm2::identity(), gamma, t1) == Herm2::identity());
  }
}

TEST_CASE("unitary_conjugate") {
  const Herm2 rho = random_state();
  CHECK(max_abs_diff(unitary_conjugate(Mat2::identity(), rho), rho) == 0.0);
  const Mat2 flip{0.0, cplx{0, -1}, cplx{0, -1}, 0.0};
  CHECK(max_abs_diff(unitary_conjugate(flip, Herm2::ground()), Herm2::excited()) <= 1e-16);

  for (int i = 0; i < 1000; ++i) {
    const Herm2 r = random_state();
    const Mat2 u = su2_exp_x(uniform(-10, 10), uniform(0, 1));
    const Herm2 out = unitary_conjugate(u, r);
    CHECK(std::abs(out.trace() - r.trace()) <= 1e-15);
    CHECK(std::abs(eig_min(out) - eig_min(r)) <= 1e-14);
  }

  CHECK_THROWS_AS(unitary_conjugate(Mat2{1.0, 0.0, 0.0, 1.001}, rho), ContractViolation);
}

TEST_CASE("lindblad_rhs") {
  CHECK(max_abs_diff(lindblad_rhs(Herm2::ground(), 0.0, 2.0), Herm2::zero()) == 0.0);
  const double gamma = 1.7;
  CHECK(max_abs_diff(lindblad_rhs(Herm2::excited(), 0.0, gamma), gamma * (Herm2::ground() - Herm2::excited())) == 0.0);

  for (int i = 0; i < 1000; ++i) {
    const Herm2 x = random_herm();
    const double u = uniform(-10, 10), g = uniform(0, 20);
    const Herm2 out = lindblad_rhs(x, u, g);
    CHECK(std::abs(out.trace()) <= 1e-15 * (1 + std::abs(u) + g) * frobenius(x) * 4);
    CHECK(max_abs_diff(out.full(), oracle::lindblad(x.full(), u, g)) <= 1e-13 * (1 + std::abs(u) + g) * frobenius(x));
    const Mat2 m{cplx{normal(), normal()}, cplx{normal(), normal()}, cplx{normal(), normal()},
                 cplx{normal(), normal()}};
    CHECK(max_abs_diff(lindblad_rhs(m, u, g), oracle::lindblad(m, u, g)) <= 1e-12 * (1 + std::abs(u) + g));
  }
}

TEST_CASE("Bloch field") {
  const double gamma = 0.8;
  const BlochField f = BlochField::make(gamma);
  CHECK(f.A[0][0] == -gamma / 2);
  CHECK(f.A[1][1] == -gamma / 2);
  CHECK(f.A[2][2] == -gamma);
  CHECK(f.b[2] == gamma);
  CHECK(f.B[2][1] == 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(f.B[i][j] == -f.B[j][i]);

  const Vec3 up = bloch_rhs({0, 0, 1}, 2.5, gamma);
  CHECK(up[0] == 0.0);
  CHECK(up[1] == -2.5);
  CHECK(up[2] == 0.0);
  const Vec3 still = bloch_rhs({0, 0, 1}, 0.0, gamma);
  CHECK(still == Vec3{0, 0, 0});

  for (int i = 0; i < 1000; ++i) {
    const Herm2 rho = random_state();
    const double u = uniform(-10, 10), g = uniform(0, 20);
    const Vec3 r = rho.bloch();
    const Vec3 expect = oracle::bloch_field(r, u, g);
    const Vec3 direct = bloch_rhs(r, u, g);
    const Vec3 affine = BlochField::make(g)(r, u);
    const PauliVec v = to_pauli(lindblad_rhs(rho, u, g));
    double err = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      err = std::max(err, std::abs(std::sqrt(2.0) * v[j + 1] - direct[j]));
      CHECK(std::abs(direct[j] - expect[j]) <= 1e-13);
      CHECK(std::abs(affine[j] - expect[j]) <= 1e-13);
    }
    CHECK(err <= 1e-13);
  }
}
