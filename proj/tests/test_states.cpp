#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qconcur/oracle.hpp"
#include "qconcur/states.hpp"
#include "test_helpers.hpp"

using namespace qconcur;

TEST_CASE("w_state amplitudes") {
  const PureState w3 = w_state(3);
  const double a = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(w3.amp()(4) - Complex(a, 0)) < 1e-15);  // |100>
  CHECK(std::abs(w3.amp()(2) - Complex(a, 0)) < 1e-15);  // |010>
  CHECK(std::abs(w3.amp()(1) - Complex(a, 0)) < 1e-15);  // |001>
  CHECK(std::abs(w3.amp()(0)) == 0.0);

  const PureState w2 = w_state(2);
  CHECK(std::abs(w2.amp()(1) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(w2.amp()(2) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);

  const PureState w4 = w_state(4);
  CHECK(w4.amp().squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
  int nonzero = 0;
  for (long i = 0; i < w4.side(); ++i) nonzero += std::abs(w4.amp()(i)) > 0;
  CHECK(nonzero == 4);

  CHECK_THROWS_AS(w_state(1), validation_error);
}

TEST_CASE("generalized_w") {
  const PureState prod = generalized_w({Complex(1, 0), Complex(0, 0), Complex(0, 0)});
  CHECK(std::abs(prod.amp()(4) - Complex(1, 0)) < 1e-15);

  const double u = 1.0 / std::sqrt(3.0);
  const PureState uniform = generalized_w({u, u, u});
  CHECK((uniform.amp() - w_state(3).amp()).cwiseAbs().maxCoeff() < 1e-15);

  const PureState two = generalized_w({std::sqrt(0.7), std::sqrt(0.3)});
  const double expected = 2.0 * std::sqrt(0.21);
  CHECK(pure_concurrence(two) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(oracle::wootters(projector(two)) == doctest::Approx(expected).epsilon(1e-10));

  CHECK_THROWS_AS(generalized_w({Complex(1, 0), Complex(1, 0)}), validation_error);
}

TEST_CASE("generalized_ghz") {
  const PureState ghz = generalized_ghz(3, std::numbers::pi / 4);
  CHECK(std::abs(ghz.amp()(0) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(ghz.amp()(7) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);

  CHECK(pure_concurrence(generalized_ghz(3, 0.0)) == doctest::Approx(0.0).epsilon(1e-14));

  // every proper marginal of the four-qubit state has the same purity
  const double theta = std::numbers::pi / 6;
  const PureState phi = generalized_ghz(4, theta);
  const double s = std::sin(theta), c = std::cos(theta);
  const double expected = 1.0 - 2.0 * s * s * c * c;
  CHECK(expected == doctest::Approx(0.625).epsilon(1e-12));
  for (long mask = 1; mask + 1 < 16; ++mask) {
    std::vector<int> part;
    for (int k = 1; k <= 4; ++k) {
      if (mask >> (k - 1) & 1) part.push_back(k);
    }
    CHECK(marginal_purity(phi, part) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("dct_state") {
  const DensityMatrix pure = dct_state({1.0, 0.0, 0.0, 0.0, 0.0});
  const DensityMatrix ghz = projector(generalized_ghz(3, std::numbers::pi / 4));
  CHECK((pure.mat() - ghz.mat()).cwiseAbs().maxCoeff() < 1e-14);

  const DensityMatrix mixed = dct_state({0.125, 0.125, 0.125, 0.125, 0.125});
  CHECK((mixed.mat() - Matrix::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff() < 1e-14);

  // eigenvalues are exactly the eight weights
  const DctWeights w{0.3, 0.1, 0.05, 0.15, 0.1};
  Eigen::SelfAdjointEigenSolver<Matrix> es(dct_state(w).mat());
  std::vector<double> expected = {0.05, 0.05, 0.1, 0.1, 0.1, 0.15, 0.15, 0.3};
  for (long i = 0; i < 8; ++i) {
    CHECK(es.eigenvalues()(i) == doctest::Approx(expected[i]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(dct_state({0.5, 0.5, 0.5, 0.0, 0.0}), validation_error);
}

TEST_CASE("mix_with_noise") {
  const DensityMatrix ghz = projector(generalized_ghz(3, std::numbers::pi / 4));
  CHECK((mix_with_noise(ghz, 1.0).mat() - ghz.mat()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((mix_with_noise(ghz, 0.0).mat() - Matrix::Identity(8, 8) / 8.0)
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  const DensityMatrix half = mix_with_noise(ghz, 0.5);
  CHECK(purity(half) ==
        doctest::Approx(testoracle::purity_frobenius(half.mat())).epsilon(1e-13));

  CHECK_THROWS_AS(mix_with_noise(ghz, 1.5), validation_error);
  CHECK_THROWS_AS(mix_with_noise(ghz, -0.1), validation_error);
}

TEST_CASE("random samplers are normalized and deterministic") {
  const DimSpec dims({2, 3});
  const PureState a = random_pure(dims, 99);
  CHECK(a.amp().squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
  const PureState b = random_pure(dims, 99);
  CHECK((a.amp() - b.amp()).cwiseAbs().maxCoeff() == 0.0);

  const DensityMatrix pure_rank = random_mixed(dims, 1, 5);
  CHECK(purity(pure_rank) == doctest::Approx(1.0).epsilon(1e-12));
  const DensityMatrix m1 = random_mixed(dims, 4, 5);
  const DensityMatrix m2 = random_mixed(dims, 4, 5);
  CHECK((m1.mat() - m2.mat()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_NOTHROW(DensityMatrix(m1.dims(), m1.mat()));  // valid by construction
}

TEST_CASE("pure_concurrence reference values") {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(pure_concurrence(PureState(DimSpec({2, 2}), bell)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK(pure_concurrence(generalized_ghz(3, std::numbers::pi / 4)) ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));

  CHECK(pure_concurrence(w_state(3)) ==
        doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));

  for (double theta : {0.21, 0.73, 1.38}) {
    const double expect = std::sqrt(7.0) * std::abs(std::sin(theta) * std::cos(theta));
    CHECK(pure_concurrence(generalized_ghz(4, theta)) ==
          doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("pure_concurrence vanishes exactly on product states") {
  // product state across every bipartition
  const PureState p1 = random_pure(DimSpec({2}), 3);
  const PureState p2 = random_pure(DimSpec({2}), 4);
  const PureState p3 = random_pure(DimSpec({2}), 5);
  Vector v = Vector::Zero(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        v(4 * a + 2 * b + c) = p1.amp()(a) * p2.amp()(b) * p3.amp()(c);
  CHECK(pure_concurrence(PureState(DimSpec({2, 2, 2}), v)) < 1e-7);

  // and is positive on an entangled one
  CHECK(pure_concurrence(w_state(3)) > 0.5);
}

TEST_CASE("pure_concurrence agrees with the per-cut expansion") {
  for (int s = 0; s < 10; ++s) {
    const PureState psi = random_pure(DimSpec({2, 2, 2}), 200 + s);
    double acc = 0.0;
    for (const Bipartition& cut : all_bipartitions(3)) {
      const double c2 = bipartite_pure_concurrence(psi, cut);
      acc += c2 * c2;
    }
    const double lhs = pure_concurrence(psi);
    CHECK(lhs * lhs == doctest::Approx(std::pow(2.0, 2 - 3) * acc).epsilon(1e-12));
  }
}

TEST_CASE("pure_concurrence_cd: Wootters reduction and fixed ratio") {
  for (int s = 0; s < 20; ++s) {
    const PureState psi = random_pure(DimSpec({2, 2}), 300 + s);
    CHECK(std::abs(pure_concurrence_cd(psi) - oracle::wootters(projector(psi))) < 1e-8);
  }

  Vector prod = Vector::Zero(8);
  prod(0) = 1.0;
  CHECK(pure_concurrence_cd(PureState(DimSpec({2, 2, 2}), prod)) == 0.0);

  // ratio to the purity form is a constant of (N, d)
  std::vector<double> ratios;
  for (int s = 0; s < 30; ++s) {
    const PureState psi = random_pure(DimSpec({2, 2, 2}), 400 + s);
    ratios.push_back(pure_concurrence_cd(psi) / pure_concurrence(psi));
  }
  for (double r : ratios) {
    CHECK(r == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));
  }

  CHECK_THROWS_AS(pure_concurrence_cd(random_pure(DimSpec({2, 3}), 1)), validation_error);
}

TEST_CASE("bipartite_pure_concurrence") {
  const PureState ghz = generalized_ghz(3, std::numbers::pi / 4);
  CHECK(bipartite_pure_concurrence(ghz, Bipartition({1}, 3)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // product across the cut 1|23
  // the square root amplifies round-off in the marginal purity, so exact
  // zero is only reachable at ~1e-8
  Vector v = Vector::Zero(8);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);  // |0>(|00>+|11>)/sqrt2
  CHECK(bipartite_pure_concurrence(PureState(DimSpec({2, 2, 2}), v),
                                   Bipartition({1}, 3)) < 1e-7);

  for (double theta : {0.4, 1.1}) {
    const PureState phi = generalized_ghz(4, theta);
    const double expect = 2.0 * std::abs(std::sin(theta) * std::cos(theta));
    for (const Bipartition& cut : all_bipartitions(4)) {
      CHECK(bipartite_pure_concurrence(phi, cut) ==
            doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

TEST_CASE("families stay valid across their parameter range") {
  const std::vector<double> dct = {0.4, 0.1, 0.1, 0.1, 0.05};
  for (const char* id : {"w-noise", "ghz-noise", "gen-ghz", "gen-w", "dct-noise"}) {
    const StateFamily fam = make_family(id, 3, dct);
    for (int i = 0; i <= 10; ++i) {
      const double t = fam.default_from + (fam.default_to - fam.default_from) * i / 10.0;
      const DensityMatrix rho = fam.make(t);
      CHECK_NOTHROW(DensityMatrix(rho.dims(), rho.mat()));
    }
  }
  CHECK_THROWS_AS(make_family("nope", 3), validation_error);
}
