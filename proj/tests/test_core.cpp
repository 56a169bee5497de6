#include <doctest.h>

#include <cmath>
#include <random>

#include "qjm/effect.hpp"
#include "test_support.hpp"

using namespace qjm;

TEST_CASE("make_effect accepts projections and validates the eigenvalue bounds") {
  const Effect p = make_effect(1.0, {0, 0, 1});
  CHECK(p.alpha == 1.0);
  CHECK(eigenvalues(p).first == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(eigenvalues(p).second == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(make_effect(0.5, {0, 0, 0.6}), NotAnEffect);
  try {
    make_effect(0.5, {0, 0, 0.6});
  } catch (const NotAnEffect& e) {
    CHECK(e.deficit() == doctest::Approx(-0.05).epsilon(1e-12));
  }

  const Effect e = make_effect(1.0, {0.3, 0.4, 0.0});
  const auto [lo, hi] = eigenvalues(e);
  CHECK(lo == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(hi == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("make_effect clamps boundary violations within tolerance") {
  const Effect e = make_effect(1.0, {0, 0, 1.0 + 5e-13});
  CHECK(is_effect(e.alpha, e.a, 0.0));
  CHECK(norm(e.a) <= 1.0);
  CHECK_THROWS_AS(make_effect(1.0, {0, 0, 1.0 + 5e-12}), NotAnEffect);
}

TEST_CASE("complement flips the coordinates and is an involution") {
  const Effect p = make_effect(1.0, {0, 0, 1});
  const Effect pc = complement(p);
  CHECK(pc.alpha == 1.0);
  CHECK(pc.a.z == -1.0);

  const Effect t = make_effect(0.5, {0, 0, 0});
  CHECK(complement(t).alpha == 1.5);

  const Effect e = make_effect(1.2, {0.3, 0, 0});
  const Effect ec = complement(e);
  CHECK(ec.alpha == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(ec.a.x == -0.3);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Effect r = qjm_test::random_effect(rng);
    const Effect rr = complement(complement(r));
    // the vector part round-trips bit-exactly; 2-(2-alpha) can differ by
    // one ulp for alpha < 1
    CHECK(rr.alpha == doctest::Approx(r.alpha).epsilon(5e-16));
    CHECK(rr.a.x == r.a.x);
    CHECK(rr.a.y == r.a.y);
    CHECK(rr.a.z == r.a.z);
    // eigenvalues of the complement are 1 - eigenvalues, swapped
    const auto [lo, hi] = eigenvalues(r);
    const auto [clo, chi] = eigenvalues(complement(r));
    CHECK(clo == doctest::Approx(1.0 - hi).epsilon(1e-12));
    CHECK(chi == doctest::Approx(1.0 - lo).epsilon(1e-12));
  }
}

TEST_CASE("eigenvalues stay inside [0,1] for valid effects") {
  CHECK(eigenvalues(make_effect(1.0, {0, 0, 0})).first == 0.5);
  CHECK(eigenvalues(make_effect(1.0, {0, 0, 0})).second == 0.5);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto [lo, hi] = eigenvalues(qjm_test::random_effect(rng));
    CHECK(lo >= -1e-15);
    CHECK(hi <= 1.0 + 1e-15);
    CHECK(lo <= hi);
  }
}

TEST_CASE("spectral decomposition reconstructs the effect") {
  const SpectralDecomposition s = spectral_decomposition(make_effect(1.0, {0, 0, 0.5}));
  CHECK(s.weight_plus == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(s.weight_minus == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s.axis.vec().z == doctest::Approx(1.0).epsilon(1e-14));

  const SpectralDecomposition proj = spectral_decomposition(make_effect(1.0, {0, 0, 1}));
  CHECK(proj.weight_plus == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(proj.weight_minus == doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS(spectral_decomposition(make_effect(1.0, {0, 0, 0})),
                  DegenerateAxis);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    Effect e = qjm_test::random_effect(rng);
    if (norm(e.a) < 1e-12) continue;
    const SpectralDecomposition sd = spectral_decomposition(e);
    CHECK(sd.weight_plus >= sd.weight_minus);
    CHECK(sd.weight_plus <= 1.0 + 1e-12);
    CHECK(sd.weight_minus >= -1e-12);
    // weight_+ * A(1, axis) + weight_- * A(1, -axis) == e
    const double alpha_rec = sd.weight_plus + sd.weight_minus;
    const Vec3 a_rec = (sd.weight_plus - sd.weight_minus) * sd.axis.vec();
    CHECK(alpha_rec == doctest::Approx(e.alpha).epsilon(1e-12));
    CHECK(norm(a_rec - e.a) < 1e-12);
  }
}

TEST_CASE("commutator norm is half the cross product") {
  CHECK(commutator_norm(make_effect(1.0, {1, 0, 0}), make_effect(1.0, {0, 1, 0})) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(commutator_norm(make_effect(1.0, {1, 0, 0}), make_effect(0.7, {0, 0.7, 0})) ==
        doctest::Approx(0.35).epsilon(1e-14));
  CHECK(commutator_norm(make_effect(1.0, {0.2, 0, 0}), make_effect(1.0, {0.9, 0, 0})) ==
        0.0);
  CHECK(commutator_norm(make_effect(0.5, {0.5, 0, 0}), make_effect(0.5, {0, 0.5, 0})) ==
        doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("reflect_effect realizes the covariance relation U E+ U = E-") {
  const Effect e = make_effect(1.0, {0, 0, 1});
  const Effect r = reflect_effect(e, UnitVector3::from({1, 0, 0}));
  CHECK(r.alpha == 1.0);
  CHECK(r.a.z == doctest::Approx(-1.0).epsilon(1e-15));
  // which equals the complement effect for alpha = 1
  CHECK(norm(r.a - complement(e).a) < 1e-15);

  // axis parallel to a fixes the effect
  const Effect f = make_effect(1.2, {0, 0.5, 0});
  const Effect rf = reflect_effect(f, UnitVector3::from({0, 1, 0}));
  CHECK(norm(rf.a - f.a) < 1e-15);

  const Effect g = reflect_effect(make_effect(1.0, {0.6, 0.8, 0}),
                                  UnitVector3::from({1, 0, 0}));
  CHECK(g.a.x == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(g.a.y == doctest::Approx(-0.8).epsilon(1e-15));

  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const Effect x = qjm_test::random_effect(rng);
    const UnitVector3 u = UnitVector3::normalized(qjm_test::random_direction(rng));
    const Effect rx = reflect_effect(x, u);
    // unitary conjugation preserves the spectrum
    CHECK(eigenvalues(rx).first == doctest::Approx(eigenvalues(x).first).epsilon(1e-12));
    CHECK(eigenvalues(rx).second == doctest::Approx(eigenvalues(x).second).epsilon(1e-12));
    const Effect rrx = reflect_effect(rx, u);
    CHECK(norm(rrx.a - x.a) < 1e-13);
  }
}

TEST_CASE("mix_observables is the convex mixture") {
  const SimpleObservable o1 = make_observable(1.0, {1, 0, 0});
  const SimpleObservable o2 = make_observable(1.0, {-1, 0, 0});
  const SimpleObservable same = mix_observables(o1, o2, 1.0);
  CHECK(norm(same.plus.a - o1.plus.a) == 0.0);

  const SimpleObservable mid = mix_observables(o1, o2, 0.5);
  CHECK(norm(mid.plus.a) == 0.0);
  CHECK(mid.plus.alpha == 1.0);

  const SimpleObservable q = mix_observables(make_observable(1.0, {0, 0, 1}),
                                             make_observable(1.0, {0, 0, 0}), 0.25);
  CHECK(q.plus.a.z == doctest::Approx(0.25).epsilon(1e-15));

  CHECK_THROWS_AS(mix_observables(o1, o2, 1.5), ParamOutOfRange);
  CHECK_THROWS_AS(mix_observables(o1, o2, -0.1), ParamOutOfRange);

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const SimpleObservable a = qjm_test::random_observable(rng);
    const SimpleObservable b = qjm_test::random_observable(rng);
    const SimpleObservable m = mix_observables(a, b, uni(rng));
    CHECK(is_effect(m.plus.alpha, m.plus.a));
  }
}

TEST_CASE("UnitVector3 validates its norm") {
  CHECK_THROWS_AS(UnitVector3::from({1, 1, 0}), ParamOutOfRange);
  CHECK_THROWS_AS(UnitVector3::normalized({0, 0, 0}), DegenerateAxis);
  const UnitVector3 u = UnitVector3::normalized({3, 4, 0});
  CHECK(u.vec().x == doctest::Approx(0.6).epsilon(1e-15));
}
