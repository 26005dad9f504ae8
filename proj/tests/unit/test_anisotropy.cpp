#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "frontflow/anisotropy.hpp"
#include "support/oracles.hpp"

using namespace frontflow;

namespace {

SymMat random_sym2(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  SymMat m = SymMat::zero(2);
  m.at(0, 0) = g(rng);
  m.at(1, 1) = g(rng);
  m.at(0, 1) = m.at(1, 0) = g(rng);
  return m;
}

}  // namespace

TEST_CASE("c_const closed form, convention and quadrature", "[anisotropy]") {
  CHECK(c_const(2, 1.0) == 1.0);
  CHECK(c_const(3, 1.0) == 1.0);

  for (int n : {2, 3})
    for (double a : {1.25, 1.5, 1.9}) {
      const double closed = c_const(n, a);
      CHECK(closed == Catch::Approx(c_const_quadrature(n, a)).epsilon(1e-10));
      CHECK(closed == Catch::Approx(oracles::radial_power(n, n + a)).epsilon(1e-9));
    }
  CHECK(c_const(2, 1.5) == Catch::Approx(2.0689).epsilon(1e-3));
  CHECK(c_const(3, 1.5) == Catch::Approx(2.0414).epsilon(1e-3));
}

TEST_CASE("lambda_const", "[anisotropy]") {
  const double l21 = lambda_const(2, 1.0);
  CHECK(l21 == Catch::Approx(1.0 / oracles::radial_power(0.0, 3.0)).epsilon(1e-10));
  CHECK(l21 == Catch::Approx(3.0 * std::sqrt(3.0) / (2.0 * kPi)).epsilon(1e-12));
  const double l215 = lambda_const(2, 1.5);
  CHECK(l215 == Catch::Approx(1.0 / oracles::radial_power(0.0, 3.5)).epsilon(1e-10));
  CHECK(l215 == Catch::Approx(std::sin(kPi / 3.5) * 3.5 / kPi).epsilon(1e-12));
}

TEST_CASE("mobility closed values and isotropy", "[anisotropy]") {
  const Norm e2 = Norm::euclidean(2);
  const double p10[2] = {1.0, 0.0};

  // alpha = 1: mu = [2 * int_R dx/(1+|x|^3)]^{-1}, oracle by 1-D quadrature
  const double mu1 = mobility_mu(e2, 1.0, {p10, 2});
  CHECK(mu1 == Catch::Approx(1.0 / (4.0 * oracles::radial_power(0.0, 3.0))).epsilon(1e-10));
  CHECK(mu1 == Catch::Approx(3.0 * std::sqrt(3.0) / (8.0 * kPi)).epsilon(1e-12));

  const double mu15 = mobility_mu(e2, 1.5, {p10, 2});
  CHECK(mu15 == Catch::Approx(1.0 / (4.0 * oracles::radial_power(0.0, 3.5))).epsilon(1e-10));
  CHECK(mu15 == Catch::Approx(0.217754).epsilon(1e-4));

  const double p68[2] = {0.6, 0.8};
  CHECK(mobility_mu(e2, 1.5, {p68, 2}) == Catch::Approx(mu15).epsilon(1e-12));

  CHECK_THROWS_AS(mobility_mu(e2, 1.5, Vec2{0.0, 0.0}), Error);
}

TEST_CASE("anisotropy matrix in 2-D and 3-D", "[anisotropy]") {
  const Norm e2 = Norm::euclidean(2);
  const double p10[2] = {1.0, 0.0};
  const SymMat a = anisotropy_matrix(e2, 1.5, {p10, 2});
  const double c = c_const(2, 1.5);
  CHECK(a.at(0, 0) == Catch::Approx(0.0).margin(1e-14));
  CHECK(a.at(0, 1) == Catch::Approx(0.0).margin(1e-14));
  CHECK(a.at(1, 1) == Catch::Approx(2.0 * c).epsilon(1e-12));

  // A(p) p = 0 for random p, several norms
  auto rng = oracles::rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  const Norm p4 = Norm::pnorm(2, 4.0);
  for (int t = 0; t < 32; ++t) {
    const double p[2] = {g(rng), g(rng)};
    if (p[0] * p[0] + p[1] * p[1] < 1e-4) continue;
    const SymMat m = anisotropy_matrix(p4, 1.25, {p, 2});
    const double r0 = m.at(0, 0) * p[0] + m.at(0, 1) * p[1];
    const double r1 = m.at(1, 0) * p[0] + m.at(1, 1) * p[1];
    const double scale = std::abs(m.at(0, 0)) + std::abs(m.at(1, 1)) + 1e-30;
    REQUIRE(std::abs(r0) + std::abs(r1) <= 1e-12 * scale * norm2(Vec2{p[0], p[1]}));
  }

  // N=3, euclidean, p = e3, alpha = 1: C * pi * diag(1,1,0); brute-force
  // great-circle oracle for the diagonal entry
  const Norm e3 = Norm::euclidean(3);
  const double p3[3] = {0.0, 0.0, 1.0};
  const SymMat a3 = anisotropy_matrix(e3, 1.0, {p3, 3});
  double brute = 0.0;
  const int kSteps = 200000;
  for (int i = 0; i < kSteps; ++i) {
    const double t = 2.0 * kPi * (i + 0.5) / kSteps;
    brute += std::cos(t) * std::cos(t);
  }
  brute *= 2.0 * kPi / kSteps;  // = pi
  CHECK(a3.at(0, 0) == Catch::Approx(brute).epsilon(1e-9));
  CHECK(a3.at(1, 1) == Catch::Approx(brute).epsilon(1e-9));
  CHECK(a3.at(2, 2) == Catch::Approx(0.0).margin(1e-12));
  CHECK(a3.at(0, 1) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("curvature operator", "[anisotropy]") {
  const Norm e2 = Norm::euclidean(2);
  const double p10[2] = {1.0, 0.0};
  CHECK(curvature_operator(e2, 1.5, SymMat::zero(2), {p10, 2}) == 0.0);

  // shrinking circle of radius r: F = 2 C / r (up to sign via M)
  const double r = 0.7;
  const SymMat m = SymMat::diag({0.0, 1.0 / r});
  CHECK(curvature_operator(e2, 1.5, m, {p10, 2}) ==
        Catch::Approx(2.0 * c_const(2, 1.5) / r).epsilon(1e-12));

  auto rng = oracles::rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  const Norm p4 = Norm::pnorm(2, 4.0);
  for (int t = 0; t < 64; ++t) {
    const SymMat mm = random_sym2(rng);
    double p[2] = {g(rng), g(rng)};
    if (p[0] * p[0] + p[1] * p[1] < 1e-4) continue;

    // projection identity F(M,p) = F((Id - phat phat) M, p)
    const double pn = norm2(Vec2{p[0], p[1]});
    const Vec2 ph{p[0] / pn, p[1] / pn};
    SymMat proj = SymMat::zero(2);  // (Id - phat phat^T) M, not symmetric
    proj.at(0, 0) = (1 - ph.x * ph.x) * mm.at(0, 0) - ph.x * ph.y * mm.at(1, 0);
    proj.at(0, 1) = (1 - ph.x * ph.x) * mm.at(0, 1) - ph.x * ph.y * mm.at(1, 1);
    proj.at(1, 0) = -ph.y * ph.x * mm.at(0, 0) + (1 - ph.y * ph.y) * mm.at(1, 0);
    proj.at(1, 1) = -ph.y * ph.x * mm.at(0, 1) + (1 - ph.y * ph.y) * mm.at(1, 1);
    const double f1 = curvature_operator(p4, 1.25, mm, {p, 2});
    const double f2 = curvature_operator(p4, 1.25, proj, {p, 2});
    REQUIRE(f1 == Catch::Approx(f2).epsilon(1e-11).margin(1e-12));

    // degenerate ellipticity: M1 <= M2 => F(M1) <= F(M2)
    SymMat bump = random_sym2(rng, 0.5);
    SymMat psd = SymMat::zero(2);  // bump^T bump is PSD
    psd.at(0, 0) = bump.at(0, 0) * bump.at(0, 0) + bump.at(1, 0) * bump.at(1, 0);
    psd.at(0, 1) = psd.at(1, 0) =
        bump.at(0, 0) * bump.at(0, 1) + bump.at(1, 0) * bump.at(1, 1);
    psd.at(1, 1) = bump.at(0, 1) * bump.at(0, 1) + bump.at(1, 1) * bump.at(1, 1);
    const SymMat m2 = mm + psd;
    REQUIRE(curvature_operator(p4, 1.25, mm, {p, 2}) <=
            curvature_operator(p4, 1.25, m2, {p, 2}) + 1e-12);
  }
}

TEST_CASE("mobility norm is 1-homogeneous, even, convex", "[anisotropy]") {
  auto rng = oracles::rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  const Norm p4 = Norm::pnorm(2, 4.0);

  const double zero[2] = {0.0, 0.0};
  CHECK(mobility_norm_phi(p4, 1.5, {zero, 2}) == 0.0);

  for (int t = 0; t < 200; ++t) {
    const Vec2 p{g(rng), g(rng)};
    if (norm2(p) < 1e-3) continue;
    const double phi = mobility_norm_phi(p4, 1.5, p);
    CHECK(mobility_norm_phi(p4, 1.5, p * 2.0) == Catch::Approx(2.0 * phi).epsilon(1e-12));
    CHECK(mobility_norm_phi(p4, 1.5, -p) == Catch::Approx(phi).epsilon(1e-12));
  }

  // midpoint convexity on 10^4 random pairs
  for (int t = 0; t < 10000; ++t) {
    const Vec2 x{g(rng), g(rng)}, y{g(rng), g(rng)};
    const double lhs = mobility_norm_phi(p4, 1.5, (x + y) * 0.5);
    const double rhs =
        0.5 * (mobility_norm_phi(p4, 1.5, x) + mobility_norm_phi(p4, 1.5, y));
    REQUIRE(lhs <= rhs + 1e-10);
  }

  // isotropic value: Phi = mu * |p|
  const Norm e2 = Norm::euclidean(2);
  const double mu1 = 1.0 / (4.0 * oracles::radial_power(0.0, 3.0));
  CHECK(mobility_norm_phi(e2, 1.0, Vec2{3.0, 4.0}) ==
        Catch::Approx(5.0 * mu1).epsilon(1e-10));
}

TEST_CASE("2-D characterization: ratio to the rotated norm is constant",
          "[anisotropy]") {
  auto rng = oracles::rng(23);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> rad(0.1, 3.0);

  for (double alpha : {1.0, 1.5}) {
    for (const Norm& n :
         {Norm::pnorm(2, 4.0), Norm::ellipse(2, {2.0, 0.3, 0.3, 1.0})}) {
      double sum = 0.0, sum2 = 0.0;
      const int kDirs = 256;
      std::vector<double> ratios;
      for (int k = 0; k < kDirs; ++k) {
        const double a = u(rng), r = rad(rng);
        const Vec2 p{r * std::cos(a), r * std::sin(a)};
        const double ratio = mobility_norm_phi(n, alpha, p) / n(Vec2{-p.y, p.x});
        ratios.push_back(ratio);
        sum += ratio;
        sum2 += ratio * ratio;
      }
      const double mean = sum / kDirs;
      const double var = std::max(0.0, sum2 / kDirs - mean * mean);
      const double cv = std::sqrt(var) / mean;
      INFO("alpha=" << alpha << " kind=" << to_string(n.kind()));
      REQUIRE(cv <= 1e-8);
      // the measured constant is lambda/4, the two-point counting factor
      // separating it from the lambda reported alongside
      REQUIRE(mean == Catch::Approx(lambda_const(2, alpha) / 4.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("(alpha-1) F_alpha approaches F_1", "[anisotropy]") {
  auto rng = oracles::rng(29);
  std::normal_distribution<double> g(0.0, 1.0);
  const Norm n = Norm::ellipse(2, {1.6, 0.2, 0.2, 1.0});
  for (int t = 0; t < 32; ++t) {
    const SymMat m = random_sym2(rng);
    const double p[2] = {g(rng), g(rng)};
    if (p[0] * p[0] + p[1] * p[1] < 1e-4) continue;
    const double f1 = curvature_operator(n, 1.0, m, {p, 2});
    const double fa = 0.01 * curvature_operator(n, 1.01, m, {p, 2});
    if (std::abs(f1) < 1e-12) continue;
    REQUIRE(std::abs(fa - f1) <= 0.02 * std::abs(f1));
  }
}

TEST_CASE("direction table and Wulff geometry", "[anisotropy]") {
  const Norm e2 = Norm::euclidean(2);
  const AnisotropyTable iso = build_direction_table(e2, 1.5, 256);
  const double phi0 = iso.phi[0];
  double lo = 1e300, hi = 0.0;
  for (Vec2 v : iso.wulff_vertices) {
    lo = std::min(lo, norm2(v));
    hi = std::max(hi, norm2(v));
  }
  CHECK((hi - lo) / phi0 < 1e-6);
  CHECK(hi == Catch::Approx(phi0).epsilon(1e-3));
  for (double m : iso.mu) REQUIRE(m > 0.0);

  // scaling of wulff_boundary
  const FrontPolyline w1 = wulff_boundary(1.0, iso);
  const FrontPolyline w2 = wulff_boundary(2.0, iso);
  for (size_t i = 0; i < w1.loops[0].size(); ++i) {
    REQUIRE(w2.loops[0][i].x == Catch::Approx(2.0 * w1.loops[0][i].x).margin(1e-15));
    REQUIRE(w2.loops[0][i].y == Catch::Approx(2.0 * w1.loops[0][i].y).margin(1e-15));
  }
  CHECK_THROWS_AS(wulff_boundary(0.0, iso), Error);

  // self-convergence under direction doubling (anisotropic norm): each coarse
  // vertex moves onto the refined boundary by less than (2 pi / n)^2 relative
  const Norm p4 = Norm::pnorm(2, 4.0);
  const AnisotropyTable t1 = build_direction_table(p4, 1.5, 256);
  const AnisotropyTable t2 = build_direction_table(p4, 1.5, 512);
  const double budget = std::pow(2.0 * kPi / 256.0, 2.0);
  auto seg_dist = [](Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 e = b - a;
    const double t = std::clamp(dot(p - a, e) / dot(e, e), 0.0, 1.0);
    return norm2(p - (a + e * t));
  };
  for (int k = 0; k < t1.n_dirs; ++k) {
    const Vec2 a = t1.wulff_vertices[static_cast<size_t>(k)];
    double d = 1e300;
    for (int j = 2 * k - 3; j <= 2 * k + 3; ++j) {
      const int j0 = ((j % 512) + 512) % 512, j1 = (j0 + 1) % 512;
      d = std::min(d, seg_dist(a, t2.wulff_vertices[static_cast<size_t>(j0)],
                               t2.wulff_vertices[static_cast<size_t>(j1)]));
    }
    REQUIRE(d / norm2(a) < budget);
  }

  // dual norm: sup property, isotropic closed form, Wulff duality
  const AnisotropyTable big = build_direction_table(e2, 1.5, 1024);
  const Vec2 x{0.3, -1.1};
  CHECK(big.phi_dual(x) == Catch::Approx(norm2(x) / big.phi[0]).epsilon(1e-4));
  for (int k = 0; k < big.n_dirs; k += 37) {
    const double a = big.angle(k);
    REQUIRE(big.phi_dual(x) >=
            (x.x * std::cos(a) + x.y * std::sin(a)) / big.phi[static_cast<size_t>(k)] -
                1e-14);
  }
  const AnisotropyTable tp = build_direction_table(p4, 1.5, 1024);
  for (int k = 0; k < tp.n_dirs; k += 101) {
    const double d = tp.phi_dual(tp.wulff_vertices[static_cast<size_t>(k)]);
    REQUIRE(std::abs(d - 1.0) <= 2.0 * (2.0 * kPi / tp.n_dirs));
  }

  // recorded characterization constant
  CHECK(tp.phi_ratio_2d == Catch::Approx(lambda_const(2, 1.5) / 4.0).epsilon(1e-10));

  CHECK_THROWS_AS(build_direction_table(e2, 1.5, 32), Error);
}
