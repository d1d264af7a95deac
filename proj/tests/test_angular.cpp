#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polariscope/half_int.hpp"
#include "polariscope/wigner.hpp"

using namespace polariscope;
using namespace polariscope::literals;

TEST_CASE("HalfInt parsing and arithmetic") {
  CHECK(HalfInt::parse("4") == 4_hi);
  CHECK(HalfInt::parse("7/2") == 7_half);
  CHECK(HalfInt::parse("-1/2") == -HalfInt::from_twice(1));
  CHECK(HalfInt::parse("-3") == HalfInt::integer(-3));
  CHECK_THROWS_AS(HalfInt::parse("4/3"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInt::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInt::parse(""), std::invalid_argument);
  CHECK((7_half).value() == doctest::Approx(3.5));
  CHECK((7_half).multiplicity() == 8);
  CHECK_FALSE((7_half).is_integer());
  CHECK((4_hi).valid_projection(HalfInt::integer(-4)));
  CHECK_FALSE((4_hi).valid_projection(1_half));
  CHECK_FALSE((4_hi).valid_projection(HalfInt::integer(5)));
  CHECK((7_half).str() == "7/2");
  CHECK((4_hi).str() == "4");
}

TEST_CASE("triangle rule") {
  CHECK(triangle_ok(1_hi, 1_hi, 2_hi));
  CHECK(triangle_ok(1_half, 1_half, 1_hi));
  CHECK_FALSE(triangle_ok(1_half, 1_half, 1_half));  // non-integer perimeter
  CHECK_FALSE(triangle_ok(1_hi, 1_hi, 3_hi));
}

TEST_CASE("Clebsch-Gordan fixture values") {
  // <1/2 1/2; 1/2 -1/2 | 0 0> = 1/sqrt(2)
  CHECK(clebsch_gordan(1_half, 1_half, 1_half, -HalfInt::from_twice(1), 0_hi,
                       0_hi) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  // <1 1; 1 -1 | 0 0> = 1/sqrt(3)
  CHECK(clebsch_gordan(1_hi, 1_hi, 1_hi, HalfInt::integer(-1), 0_hi, 0_hi) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  // stretched state: always exactly 1
  CHECK(clebsch_gordan(4_hi, 4_hi, 1_hi, 1_hi, 5_hi, 5_hi) == 1.0);
  // <1 0; 1 0 | 2 0> = sqrt(2/3)
  CHECK(clebsch_gordan(1_hi, 0_hi, 1_hi, 0_hi, 2_hi, 0_hi) ==
        doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("Clebsch-Gordan against independent Racah oracle") {
  for (int tj1 = 0; tj1 <= 8; ++tj1) {
    for (int tj2 = 0; tj2 <= 8; ++tj2) {
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
          for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
            // |M| > J is an invalid projection (library throws), not a zero
            if (std::abs(tm1 + tm2) > tJ) continue;
            const double lib = clebsch_gordan(
                HalfInt::from_twice(tj1), HalfInt::from_twice(tm1),
                HalfInt::from_twice(tj2), HalfInt::from_twice(tm2),
                HalfInt::from_twice(tJ), HalfInt::from_twice(tm1 + tm2));
            const double ref =
                oracle::clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tm1 + tm2);
            CHECK(lib == doctest::Approx(ref).epsilon(1e-13));
          }
        }
      }
    }
  }
}

TEST_CASE("Clebsch-Gordan orthogonality for spins up to 6") {
  // sum_{m1,m2} <j1 m1; j2 m2|J M><j1 m1; j2 m2|J' M'> = delta_JJ' delta_MM'
  const int tmax = 12;  // 2j = 12 -> j = 6
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, tmax);
  for (int trial = 0; trial < 40; ++trial) {
    const int tj1 = pick(rng);
    const int tj2 = pick(rng);
    for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
      for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2) {
        const int tM = tJ >= 2 ? tJ - 2 : tJ;  // an always-valid projection
        if (!HalfInt::from_twice(tJp).valid_projection(HalfInt::from_twice(tM)))
          continue;
        double sum = 0.0;
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
          const int tm2 = tM - tm1;
          if (std::abs(tm2) > tj2) continue;
          sum += clebsch_gordan(HalfInt::from_twice(tj1),
                                HalfInt::from_twice(tm1),
                                HalfInt::from_twice(tj2),
                                HalfInt::from_twice(tm2),
                                HalfInt::from_twice(tJ),
                                HalfInt::from_twice(tM)) *
                 clebsch_gordan(HalfInt::from_twice(tj1),
                                HalfInt::from_twice(tm1),
                                HalfInt::from_twice(tj2),
                                HalfInt::from_twice(tm2),
                                HalfInt::from_twice(tJp),
                                HalfInt::from_twice(tM));
        }
        CHECK(sum == doctest::Approx(tJ == tJp ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("Clebsch-Gordan error behaviour") {
  // invalid projections are caller bugs, not physical zeros
  CHECK_THROWS_AS(clebsch_gordan(1_hi, 1_half, 1_hi, 0_hi, 2_hi, 1_half),
                  std::domain_error);
  CHECK_THROWS_AS(clebsch_gordan(1_hi, HalfInt::integer(2), 1_hi, 0_hi, 2_hi,
                                 HalfInt::integer(2)),
                  std::domain_error);
  // M mismatch and broken triangles are physical zeros
  CHECK(clebsch_gordan(1_hi, 1_hi, 1_hi, 1_hi, 2_hi, 0_hi) == 0.0);
  CHECK(clebsch_gordan(1_hi, 0_hi, 1_hi, 0_hi, 3_hi, 0_hi) == 0.0);
}

TEST_CASE("6-j fixture values") {
  // {1 1/2 3/2; 7/2 5 4} = 1/6
  CHECK(wigner6j(1_hi, 1_half, 3_half, 7_half, 5_hi, 4_hi) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  // {0 1/2 1/2; 7/2 4 4} = 1/sqrt(18)
  CHECK(wigner6j(0_hi, 1_half, 1_half, 7_half, 4_hi, 4_hi) ==
        doctest::Approx(0.23570226039551584147).epsilon(1e-13));
  // {1 1 1; 1 1 1} = 1/6
  CHECK(wigner6j(1_hi, 1_hi, 1_hi, 1_hi, 1_hi, 1_hi) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  // {2 2 2; 2 2 2} = -3/70
  CHECK(wigner6j(2_hi, 2_hi, 2_hi, 2_hi, 2_hi, 2_hi) ==
        doctest::Approx(-3.0 / 70.0).epsilon(1e-13));
}

TEST_CASE("6-j against independent oracle and symmetries for spins up to 6") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 12);
  int checked = 0;
  while (checked < 300) {
    const int a = pick(rng), b = pick(rng), c = pick(rng);
    const int d = pick(rng), e = pick(rng), f = pick(rng);
    auto lib = [](int p, int q, int r, int s, int t, int u) {
      return wigner6j(HalfInt::from_twice(p), HalfInt::from_twice(q),
                      HalfInt::from_twice(r), HalfInt::from_twice(s),
                      HalfInt::from_twice(t), HalfInt::from_twice(u));
    };
    const double v = lib(a, b, c, d, e, f);
    const double ref = oracle::wigner6j(a, b, c, d, e, f);
    CHECK(v == doctest::Approx(ref).epsilon(1e-13));
    if (ref == 0.0) continue;
    ++checked;
    // column permutation symmetry
    CHECK(v == doctest::Approx(lib(b, a, c, e, d, f)).epsilon(1e-12));
    CHECK(v == doctest::Approx(lib(c, b, a, f, e, d)).epsilon(1e-12));
    // exchange of upper and lower entries in two columns
    CHECK(v == doctest::Approx(lib(a, e, f, d, b, c)).epsilon(1e-12));
    CHECK(v == doctest::Approx(lib(d, b, f, a, e, c)).epsilon(1e-12));
  }
}

TEST_CASE("6-j returns zero on broken triads") {
  CHECK(wigner6j(1_hi, 1_hi, 3_hi, 1_hi, 1_hi, 1_hi) == 0.0);
  CHECK(wigner6j(1_half, 1_half, 1_half, 1_half, 1_half, 1_half) == 0.0);
}
