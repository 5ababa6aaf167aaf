#include <cmath>
#include <random>

#include "core/decompose.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace ma2d3;
using namespace ma2d3::testing;

namespace {

SymMatrixField random_sym(const Grid2& g, std::mt19937_64& rng) {
  SymMatrixField d(g);
  d.d11 = random_smooth(g, rng);
  d.d12 = random_smooth(g, rng);
  d.d22 = random_smooth(g, rng);
  return d;
}

}  // namespace

TEST_CASE("identity matrix decomposes to coeff 1, zero potential") {
  Grid2 g = torus(128);
  Decomposition dec = decompose(SymMatrixField(g, 1.0, 0.0, 1.0), unit_cutoff(g));
  CHECK(sup_norm(dec.coeff - ScalarField(g, 1.0)) < 1e-10);
  CHECK(sup_norm(dec.potential.comp[0]) < 1e-10);
  CHECK(sup_norm(dec.potential.comp[1]) < 1e-10);
  CHECK(std::abs(dec.potential.lin.a11) < 1e-12);
  CHECK(dec.residual < 1e-10);
}

TEST_CASE("decomposition is homogeneous and linear") {
  Grid2 g = torus(128);
  std::mt19937_64 rng(41);
  ScalarField chi = unit_cutoff(g);
  SymMatrixField d1 = random_sym(g, rng), d2 = random_sym(g, rng);

  Decomposition full = decompose(d1 * 2.0, chi);
  Decomposition half = decompose(d1, chi);
  CHECK(sup_norm(full.coeff - 2.0 * half.coeff) < 1e-10);
  CHECK(sup_norm(full.potential.comp[0] - 2.0 * half.potential.comp[0]) < 1e-10);

  double a = 1.4, b = -0.6;
  Decomposition combo = decompose(d1 * a + d2 * b, chi);
  Decomposition da = decompose(d1, chi), db = decompose(d2, chi);
  CHECK(sup_norm(combo.coeff - (a * da.coeff + b * db.coeff)) < 1e-9);
  CHECK(sup_norm(combo.potential.comp[1] -
                 (a * da.potential.comp[1] + b * db.potential.comp[1])) < 1e-9);
}

TEST_CASE("known potential plus a conformal part is recovered") {
  // resolved grid: the identity is exact only up to the input's spectral tail
  Grid2 g = torus(256);
  std::mt19937_64 rng(43);
  // D = c Id + sym_grad(Phi) with a compactly supported Phi
  VectorField phi(g, 2);
  ScalarField bump = make_cutoff(g, Region::disk(3.14, 3.14, 0.8), 1.6);
  phi.comp[0] = bump * random_smooth(g, rng);
  phi.comp[1] = bump * random_smooth(g, rng);
  double c = 0.8;
  SymMatrixField d = sym_grad(phi);
  d.d11 += c;
  d.d22 += c;
  Decomposition dec = decompose(d, unit_cutoff(g));
  CHECK(dec.residual < 1e-6 * std::max(1.0, sup_norm(d)));
  // coeff differs from c by a mean-zero correction only
  double mean = 0;
  for (double v : dec.coeff.a) mean += v;
  mean /= dec.coeff.a.size();
  CHECK(std::abs(mean - c) < 1e-8);
}

TEST_CASE("maps commute with differentiation on the torus") {
  Grid2 g = torus(128);
  std::mt19937_64 rng(47);
  SymMatrixField d = random_sym(g, rng);
  ScalarField chi = unit_cutoff(g);
  SymMatrixField dx(g);
  dx.d11 = partial_derivative(d.d11, 1, 0);
  dx.d12 = partial_derivative(d.d12, 1, 0);
  dx.d22 = partial_derivative(d.d22, 1, 0);
  Decomposition of_dx = decompose(dx, chi);
  Decomposition of_d = decompose(d, chi);
  CHECK(sup_norm(of_dx.coeff - partial_derivative(of_d.coeff, 1, 0)) < 1e-8);
}

TEST_CASE("decomposition with a genuine cutoff holds on the inner region") {
  Grid2 g = torus(256);
  std::mt19937_64 rng(53);
  Region inner = Region::rect(3.14, 3.14, 1.1, 1.1);
  ScalarField chi = make_cutoff(g, inner, 1.2);
  SymMatrixField d = random_sym(g, rng);
  DecomposeOptions opt;
  opt.check_region = inner;
  Decomposition dec = decompose(d, chi, opt);
  CHECK(dec.residual < 1e-6 * std::max(1.0, sup_norm(d)));
}

TEST_CASE("shifted decomposition") {
  Grid2 g = torus(128);
  ScalarField chi = unit_cutoff(g);
  double mu = 4.0, gamma = 0.1;

  SUBCASE("zero input is pure padding") {
    SymMatrixField h(g);
    double ct = 1.0;
    Decomposition dec = decompose_shifted(h, mu, gamma, ct, chi);
    double pad = ct * std::pow(mu, gamma);
    CHECK(sup_norm(dec.amp2 - ScalarField(g, pad)) < 1e-10);
    CHECK(dec.potential.lin.a11 == doctest::Approx(-pad));
    CHECK(dec.potential.lin.a22 == doctest::Approx(-pad));
    CHECK(sup_norm(dec.potential.comp[0]) < 1e-10);
  }

  SUBCASE("small multiple of the identity stays in the band") {
    SymMatrixField h(g, 0.1, 0.0, 0.1);
    double ct = std::pow(mu, -gamma);  // ctilde mu^gamma = 1
    Decomposition dec = decompose_shifted(h, mu, gamma, ct, chi);
    CHECK(field_min(dec.amp2) >= 0.5);
    CHECK(field_max(dec.amp2) <= 1.5);
    CHECK(dec.residual < 1e-6);
  }

  SUBCASE("band check rejects an overlarge trace part") {
    SymMatrixField h(g, 0.3, 0.0, 0.3);
    double ct = std::pow(mu, -gamma);  // |abar| = 0.3 > pad/4
    CHECK_THROWS_AS(decompose_shifted(h, mu, gamma, ct, chi), error);
    try {
      decompose_shifted(h, mu, gamma, ct, chi);
    } catch (const error& e) {
      CHECK(e.code() == errc::amplitude);
    }
  }

  SUBCASE("auto ctilde measures 4|abar|/mu^gamma") {
    std::mt19937_64 rng(59);
    Grid2 g2 = torus(96);
    SymMatrixField h(g2);
    h.d11 = random_smooth(g2, rng, 2, 0.4);
    h.d22 = random_smooth(g2, rng, 2, 0.4);
    Decomposition dec = decompose_shifted(h, mu, gamma, -1.0, unit_cutoff(g2));
    CHECK(dec.ctilde > 0);
    CHECK(dec.band_low >= 0.5);
    CHECK(dec.band_high <= 1.5);
  }
}
