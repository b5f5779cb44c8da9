#include <gtest/gtest.h>

#include <random>

#include "ccl/closures.hpp"
#include "ccl/errors.hpp"
#include "test_util.hpp"

namespace ccl {
namespace {

using namespace ccl::testing;

struct CubicCone {
  RingPtr ambient = PolyRing::make(7, {"x", "y", "z"});
  Polynomial x = Polynomial::variable(ambient, 0);
  Polynomial y = Polynomial::variable(ambient, 1);
  Polynomial z = Polynomial::variable(ambient, 2);
  RingSpec spec{ambient, {x.pow(3) + y.pow(3) + z.pow(3)}};
};

struct CrossRing {
  RingPtr ambient;
  Polynomial x, y;
  RingSpec spec;
  explicit CrossRing(std::uint32_t p)
      : ambient(PolyRing::make(p, {"x", "y"})),
        x(Polynomial::variable(ambient, 0)),
        y(Polynomial::variable(ambient, 1)),
        spec(ambient, {x * y}) {}
};

TEST(BracketPower, Examples) {
  auto R = PolyRing::make(3, {"x", "y"});
  auto v = vars(R);
  EXPECT_TRUE(ideals_equal(bracket_power(ideal(R, {v[0], v[1]}), 3),
                           ideal(R, {v[0].pow(3), v[1].pow(3)})));
  EXPECT_TRUE(bracket_power(Ideal::unit(R), 9).groebner().is_unit());
  EXPECT_TRUE(ideals_equal(bracket_power(ideal(R, {v[0] + v[1]}), 1), ideal(R, {v[0] + v[1]})));
  EXPECT_THROW(bracket_power(ideal(R, {v[0]}), 6), InvalidArgument);
  EXPECT_THROW(bracket_power(ideal(R, {v[0]}), 0), InvalidArgument);

  for (std::uint32_t p : {2u, 3u, 5u}) {
    PathRing P(p);
    Ideal I = ideal(P.ambient, {P.x - P.w, P.x - P.y - P.z});
    Ideal expected =
        ideal(P.ambient, {P.x.pow(p) - P.w.pow(p), P.x.pow(p) - P.y.pow(p) - P.z.pow(p)});
    EXPECT_EQ(bracket_power(I, p).generators(), expected.generators()) << "p=" << p;
  }
}

TEST(TightClosureBounded, RegularRingNonMember) {
  auto R = PolyRing::make(5, {"x", "y"});
  auto v = vars(R);
  RingSpec S(R);
  ClosureVerdict verdict = tc_membership_bounded(v[1], ideal(R, {v[0]}), Polynomial::constant(R, 1), S);
  EXPECT_EQ(verdict.status, ClosureStatus::NonMember);
  ASSERT_TRUE(verdict.witness_q.has_value());
  EXPECT_EQ(*verdict.witness_q, 5u);
  EXPECT_FALSE(frobenius_check(v[1], ideal(R, {v[0]}), verdict.multiplier, S, 5));
}

TEST(TightClosureBounded, LiteralMemberIsOnlyUnknown) {
  PathRing P(3);
  Ideal I = ideal(P.ambient, {P.x, P.y * P.w});
  ClosureVerdict verdict = tc_membership_bounded(P.y * P.w * P.z + P.x, I, P.x + P.z, P.spec);
  EXPECT_EQ(verdict.status, ClosureStatus::UnknownUpToBound);
  EXPECT_EQ(verdict.checks.size(), 3u);
  EXPECT_EQ(verdict.checked_up_to, 27u);
  for (const auto& c : verdict.checks) EXPECT_TRUE(c.holds);
}

TEST(TightClosureBounded, CubicConeAgreesWithDirectMembership) {
  CubicCone C;
  ClosureVerdict verdict = tc_membership_bounded(C.z * C.z, ideal(C.ambient, {C.x, C.y}), C.z,
                                                 C.spec);
  EXPECT_EQ(verdict.status, ClosureStatus::UnknownUpToBound);
  ASSERT_EQ(verdict.checks.size(), 3u);
  // Oracle: z * z^(2q) in (x^q, y^q, x^3 + y^3 + z^3) built with plain powers.
  for (const auto& check : verdict.checks) {
    const std::uint64_t q = check.q;
    Ideal target = ideal(C.ambient, {C.x.pow(q), C.y.pow(q), C.spec.defining()[0]});
    EXPECT_EQ(check.holds, ideal_member(C.z.pow(2 * q + 1), target)) << "q=" << q;
    EXPECT_TRUE(check.holds);
  }
  EXPECT_EQ(verdict.checked_up_to, 343u);
}

TEST(TightClosureBounded, RespectsCapAndRejectsZeroMultiplier) {
  CubicCone C;
  Ideal I = ideal(C.ambient, {C.x, C.y});
  ClosureVerdict verdict = tc_membership_bounded(C.z * C.z, I, C.z, C.spec, {3, 49});
  EXPECT_EQ(verdict.checked_up_to, 49u);
  EXPECT_THROW(tc_membership_bounded(C.z, I, C.x - C.x, C.spec), InvalidArgument);
  PathRing P(2);
  EXPECT_THROW(tc_membership_bounded(P.z, P.J(), P.x * P.y, P.spec), InvalidArgument);
  EXPECT_THROW(tc_membership_bounded(C.z, I, C.z, C.spec, {0, 343}), InvalidArgument);
}

TEST(TightClosureSR, Examples) {
  auto R = PolyRing::make(3, {"a", "b"});
  auto v = vars(R);
  Ideal I = ideal(R, {v[0] * v[0], v[0] * v[1]});
  EXPECT_TRUE(ideals_equal(tight_closure_sr(I, RingSpec(R)), I));

  PathRing P(3);
  Ideal m = ideal(P.ambient, {P.x, P.y, P.z, P.w});
  EXPECT_TRUE(ideals_equal(tight_closure_sr(m, P.spec), m));

  Ideal I1 = ideal(P.ambient, {P.x - P.w, P.x - P.y - P.z});
  Ideal star = tight_closure_sr(I1, P.spec);
  EXPECT_TRUE(ideals_equal(star, m));
  Ideal tau = test_ideal_sr(P.spec);
  EXPECT_TRUE(ideal_contains(extend(I1, P.spec), tau * star));

  CubicCone C;
  EXPECT_THROW(tight_closure_sr(ideal(C.ambient, {C.x}), C.spec), UnsupportedInput);
}

TEST(TestIdealSR, Examples) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    PathRing P(p);
    EXPECT_EQ(to_string(test_ideal_sr(P.spec), P.spec), "(y, z, x*w)");
    CrossRing X(p);
    EXPECT_EQ(to_string(test_ideal_sr(X.spec), X.spec), "(x, y)");
  }
  auto R = PolyRing::make(5, {"x", "y"});
  EXPECT_TRUE(test_ideal_sr(RingSpec(R)).groebner().is_unit());
  EXPECT_TRUE(test_ideal_sr(RingSpec(R, {Polynomial::variable(R, 0)})).groebner().is_unit());
}

TEST(ParameterTestIdeal, PathRingColonRoute) {
  for (std::uint32_t p : {2u, 3u}) {
    PathRing P(p);
    auto res = parameter_test_ideal(P.spec, {P.x - P.w, P.x - P.y - P.z}, 4);
    EXPECT_EQ(to_string(res.ideal, P.spec), "(y, z, x*w)");
    EXPECT_TRUE(res.limit_pattern_verified);
    EXPECT_EQ(res.colons.size(), 4u);
    EXPECT_TRUE(ideals_equal(res.ideal, test_ideal_sr(P.spec)));
    // Each colon is tau + m^t, so no finite intersection equals tau.
    EXPECT_FALSE(res.stabilized);
    EXPECT_EQ(to_string(res.colons[1], P.spec), "(y, z, x^2, x*w, w^2)");
    EXPECT_EQ(to_string(res.finite_intersection, P.spec), "(y, z, x*w, x^4, w^4)");
  }
}

TEST(ParameterTestIdeal, RegularRingIsUnit) {
  auto R = PolyRing::make(3, {"x", "y"});
  auto v = vars(R);
  auto res = parameter_test_ideal(RingSpec(R), {v[0] + v[1], v[1] * v[1] - v[0]}, 3);
  EXPECT_TRUE(res.ideal.groebner().is_unit());
}

TEST(ParameterTestIdeal, CrossRingAgreesWithFormula) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    CrossRing X(p);
    auto res = parameter_test_ideal(X.spec, {X.x + X.y}, 4);
    EXPECT_EQ(to_string(res.ideal, X.spec), "(x, y)") << "p=" << p;
    EXPECT_TRUE(ideals_equal(res.ideal, test_ideal_sr(X.spec)));
  }
}

TEST(ParameterTestIdeal, Errors) {
  PathRing P(3);
  EXPECT_THROW(parameter_test_ideal(P.spec, {P.x - P.w}, 2), DimensionError);
  CubicCone C;
  EXPECT_THROW(parameter_test_ideal(C.spec, {C.x, C.y}, 2), UnsupportedInput);
  EXPECT_THROW(parameter_test_ideal(P.spec, {P.x - P.w, P.x - P.y - P.z}, 0), InvalidArgument);
}

TEST(ParameterTestIdeal, CubicConeWithBoundedOracle) {
  CubicCone C;
  ClosureOracle oracle = [&C](const Ideal& I) {
    return bounded_tight_closure(I, C.spec, C.z).upper_bound;
  };
  auto res = parameter_test_ideal(C.spec, {C.x, C.y}, 3, oracle);
  EXPECT_EQ(to_string(res.ideal, C.spec), "(x, y, z)");
}

TEST(BoundedClosure, CubicConeParameterIdeal) {
  CubicCone C;
  auto b = bounded_tight_closure(ideal(C.ambient, {C.x, C.y}), C.spec, C.z);
  EXPECT_EQ(b.quotient_dimension, 3u);
  EXPECT_EQ(to_string(b.upper_bound, C.spec), "(x, y, z^2)");
  EXPECT_EQ(b.qs, (std::vector<std::uint64_t>{7, 49, 343}));
}

TEST(BoundedClosure, RegularRingCollapses) {
  auto R = PolyRing::make(3, {"x", "y"});
  auto v = vars(R);
  Ideal I = ideal(R, {v[0] * v[0], v[1] * v[1] * v[1], v[0] * v[1]});
  auto b = bounded_tight_closure(I, RingSpec(R), Polynomial::constant(R, 1));
  EXPECT_TRUE(ideals_equal(b.upper_bound, I));
}

TEST(BoundedClosure, MatchesExactClosureOnPathRing) {
  PathRing P(2);
  Ideal I = ideal(P.ambient, {P.x - P.w, P.x - P.y - P.z});
  Polynomial c = P.x * P.w + P.y + P.z;  // a parameter test element
  auto b = bounded_tight_closure(I, P.spec, c);
  EXPECT_TRUE(ideals_equal(b.upper_bound, tight_closure_sr(I, P.spec)));
}

TEST(Certificate, TrivialModule) {
  PathRing P(3);
  Ideal I = ideal(P.ambient, {P.x - P.w, P.x - P.y - P.z});
  Polynomial x = P.x - P.w;
  auto cert = integral_dependence_certificate(x, I, Ideal::unit(P.ambient), P.spec);
  EXPECT_EQ(cert.degree, 1u);
  EXPECT_TRUE(ideal_member(cert.matrix_entries[0][0], I));
  EXPECT_TRUE(ideal_member(cert.matrix_entries[0][0] - x, P.J()));
  EXPECT_TRUE(verify_certificate(cert, x, I, P.spec));
}

TEST(Certificate, ZeroElement) {
  PathRing P(3);
  Ideal I = ideal(P.ambient, {P.x - P.w, P.x - P.y - P.z});
  Ideal tau = test_ideal_sr(P.spec);
  auto cert = integral_dependence_certificate(Polynomial(P.ambient), I, tau, P.spec);
  EXPECT_EQ(cert.degree, 3u);
  Polynomial X = Polynomial::variable(cert.polynomial_ring, 0);
  EXPECT_EQ(cert.characteristic_polynomial, X.pow(3));
}

TEST(Certificate, ElementsOfClosureInPathRing) {
  PathRing P(3);
  Ideal I = ideal(P.ambient, {P.x - P.w, P.x - P.y - P.z});
  Ideal tau = test_ideal_sr(P.spec);
  for (const Polynomial& x : {P.y, P.z, P.y + P.z, P.y - P.z, P.w}) {
    ASSERT_FALSE(ideal_member(x, extend(I, P.spec)));
    auto cert = integral_dependence_certificate(x, I, tau, P.spec);
    EXPECT_LE(cert.degree, 3u);
    EXPECT_TRUE(verify_certificate(cert, x, I, P.spec));
    EXPECT_EQ(cert.characteristic_polynomial.ring().variable(0), "X");
  }
}

TEST(Certificate, PreconditionFailure) {
  auto R = PolyRing::make(5, {"x", "y"});
  auto v = vars(R);
  EXPECT_THROW(integral_dependence_certificate(v[1], ideal(R, {v[0]}), Ideal::unit(R),
                                               RingSpec(R)),
               PreconditionFailed);
}

// --- properties ------------------------------------------------------------

Ideal random_sr_ideal(std::mt19937_64& rng, const PathRing& P) {
  std::vector<Polynomial> gens;
  unsigned k = 1 + rng() % 3;
  for (unsigned i = 0; i < k; ++i) gens.push_back(random_binomial(rng, P.ambient, 3));
  return Ideal(P.ambient, gens);
}

TEST(BracketPowerLaws, RegenerationAndComposition) {
  for (std::uint32_t p : {2u, 3u}) {
    auto R = PolyRing::make(p, {"a", "b", "c"});
    std::mt19937_64 rng(31337 + p);
    for (int iter = 0; iter < 200; ++iter) {
      Polynomial g1 = random_binomial(rng, R, 3);
      Polynomial g2 = random_binomial(rng, R, 3);
      Polynomial r = random_poly(rng, R, 2, 1);
      Ideal I(R, {g1, g2});
      Ideal regen(R, {g1 + r * g2, g2, g1 * g2});
      const std::uint64_t q = p;
      ASSERT_TRUE(ideals_equal(bracket_power(I, q), bracket_power(regen, q)));
      ASSERT_TRUE(ideals_equal(bracket_power(bracket_power(I, q), q),
                               bracket_power(I, static_cast<std::uint64_t>(q) * q)));
      ASSERT_TRUE(ideal_contains(ideal_power(I, static_cast<unsigned>(q)), bracket_power(I, q)));
    }
  }
}

TEST(TightClosureLaws, ExtensiveIdempotentMonotone) {
  PathRing P(3);
  std::mt19937_64 rng(2718);
  Ideal tau = test_ideal_sr(P.spec);
  for (int iter = 0; iter < 200; ++iter) {
    Ideal I = random_sr_ideal(rng, P);
    Ideal K = random_sr_ideal(rng, P);
    Ideal star = tight_closure_sr(I, P.spec);
    ASSERT_TRUE(ideal_contains(star, I));
    ASSERT_TRUE(ideals_equal(tight_closure_sr(star, P.spec), star));
    ASSERT_TRUE(ideal_contains(tight_closure_sr(I + K, P.spec), star));
    ASSERT_TRUE(ideal_contains(extend(I, P.spec), tau * star));
  }
}

TEST(TightClosureLaws, NonMemberVerdictsReplay) {
  auto R = PolyRing::make(3, {"a", "b"});
  RingSpec S(R);
  std::mt19937_64 rng(161803);
  int non_members = 0;
  for (int iter = 0; iter < 200; ++iter) {
    Ideal I(R, {random_binomial(rng, R, 2), random_binomial(rng, R, 2)});
    Polynomial x = random_poly(rng, R, 2, 2);
    ClosureVerdict v = tc_membership_bounded(x, I, Polynomial::constant(R, 1), S, {2, 27});
    ASSERT_NE(v.status, ClosureStatus::Member);
    // In a regular ring I* = I and 1 is a test element.
    ASSERT_EQ(v.status == ClosureStatus::NonMember, !ideal_member(x, I));
    if (v.status == ClosureStatus::NonMember) {
      ++non_members;
      ASSERT_FALSE(frobenius_check(x, I, v.multiplier, S, *v.witness_q));
    }
  }
  EXPECT_GT(non_members, 20);
}

TEST(CrossRoute, TestIdealAgreement) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PathRing P(p);
    EXPECT_TRUE(ideals_equal(test_ideal_sr(P.spec),
                             parameter_test_ideal(P.spec, {P.x - P.w, P.x - P.y - P.z}, 4).ideal));
  }
}

TEST(CertificateLaws, RandomElementsOfClosure) {
  PathRing P(2);
  Ideal I = ideal(P.ambient, {P.x - P.w, P.x - P.y - P.z});
  Ideal tau = test_ideal_sr(P.spec);
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 30; ++iter) {
    Polynomial x = random_poly(rng, P.ambient, 3, 2);
    x = x - Polynomial::constant(P.ambient, x.coefficient(Monomial{}));  // land in m = I*
    auto cert = integral_dependence_certificate(x, I, tau, P.spec);
    ASSERT_LE(cert.degree, 3u);
    ASSERT_TRUE(verify_certificate(cert, x, I, P.spec));
  }
}

}  // namespace
}  // namespace ccl
