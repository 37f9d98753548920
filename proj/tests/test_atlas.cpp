#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "core/atlas.hpp"
#include "core/error.hpp"

using namespace geocoil;

TEST_CASE("reference triples classify to the four types") {
  CHECK(classify_type(EpsTriple{0.02, 0.03, 0.04}) == TopType::I);
  CHECK(classify_type(EpsTriple{0.01, 0.03, 0.04}) == TopType::II);
  CHECK(classify_type(EpsTriple{-0.02, 0.03, 0.04}) == TopType::III);
  CHECK(classify_type(EpsTriple{-0.01, 0.0, 0.01}) == TopType::IV);
}

TEST_CASE("classification is scale-invariant and sign-symmetric") {
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int k = 0; k < 200; ++k) {
    const EpsTriple eps{u(rng), u(rng), u(rng)};
    TopType t = TopType::Marginal;
    try {
      t = classify_type(eps);
    } catch (const Error&) {
      continue;
    }
    const EpsTriple scaled{0.37 * eps[0], 0.37 * eps[1], 0.37 * eps[2]};
    CHECK(classify_type(scaled) == t);
    const EpsTriple neg{-eps[0], -eps[1], -eps[2]};
    CHECK(classify_type(neg) == t);
    const EpsTriple rot{eps[2], eps[0], eps[1]};
    CHECK(classify_type(rot) == t);
  }
}

TEST_CASE("boundary coefficients are marginal") {
  // Two vanishing coefficients.
  CHECK(classify_type(EpsTriple{0.0, 0.0, 0.3}) == TopType::Marginal);
  // One vanishing coefficient with a same-sign remaining pair.
  CHECK(classify_type(EpsTriple{0.02, 0.03, 0.0}) == TopType::Marginal);
  // A boundary conic: q1 = e1 e2 - e2 e3 + e3 e1 vanishes at (2,3,6)/100.
  CHECK(classify_type(EpsTriple{0.02, 0.03, 0.06}) == TopType::Marginal);
  // All vanishing is an error, not a type.
  try {
    (void)classify_type(EpsTriple{0.0, 0.0, 0.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AllZero);
  }
}

TEST_CASE("boundary residuals expose the separating conics") {
  const Vec3 r = boundary_residuals(EpsTriple{0.02, 0.03, 0.06});
  CHECK(std::abs(r[0]) < 1e-15);
  CHECK(r[1] > 0.0);
  CHECK(r[2] > 0.0);
}

TEST_CASE("region map covers the disk and finds all four types") {
  const RegionMap map = sample_region_map(64);
  CHECK(map.resolution == 64);
  std::set<TopType> seen;
  for (const RegionSample& s : map.samples) {
    CHECK(s.u * s.u + s.v * s.v <= 1.0 + 1e-12);
    seen.insert(s.type);
  }
  CHECK(seen.count(TopType::I) == 1);
  CHECK(seen.count(TopType::II) == 1);
  CHECK(seen.count(TopType::III) == 1);
  CHECK(seen.count(TopType::IV) == 1);
}

TEST_CASE("reference triples land in cells of their own type") {
  // Normalize each caption triple onto the unit disk and classify the nearest
  // grid node of a resolution-64 map.
  const int res = 64;
  const RegionMap map = sample_region_map(res);
  const EpsTriple triples[4] = {{0.02, 0.03, 0.04},
                                {0.01, 0.03, 0.04},
                                {-0.02, 0.03, 0.04},
                                {-0.01, 0.0, 0.01}};
  const TopType expected[4] = {TopType::I, TopType::II, TopType::III,
                               TopType::IV};
  for (int k = 0; k < 4; ++k) {
    const double n = std::sqrt(triples[k][0] * triples[k][0] +
                               triples[k][1] * triples[k][1] +
                               triples[k][2] * triples[k][2]);
    const double u = triples[k][0] / n, v = triples[k][1] / n;
    double best = 1e9;
    TopType at = TopType::Marginal;
    for (const RegionSample& s : map.samples) {
      const double d = (s.u - u) * (s.u - u) + (s.v - v) * (s.v - v);
      if (d < best) {
        best = d;
        at = s.type;
      }
    }
    CHECK(at == expected[k]);
  }
}

TEST_CASE("region map validates its resolution") {
  try {
    (void)sample_region_map(8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}

TEST_CASE("node count matches the quarter-disk area estimate") {
  const RegionMap map = sample_region_map(128);
  // Nodes inside the unit disk of a (res+1)^2 grid: close to pi/4 of them.
  const double frac =
      static_cast<double>(map.samples.size()) / (129.0 * 129.0);
  CHECK(frac > 0.76);
  CHECK(frac < 0.81);
}
