#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <kruglov/exact.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace kruglov;

namespace {

// Independent oracle: count fixed-point-free permutations by enumeration.
Int derangements_bruteforce(unsigned n) {
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  Int count = 0;
  do {
    bool fixed_free = true;
    for (unsigned i = 0; i < n; ++i) {
      if (perm[i] == i) {
        fixed_free = false;
        break;
      }
    }
    if (fixed_free) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

TEST_CASE("factorial matches a repeated-product oracle") {
  Int acc = 1;
  for (unsigned n = 0; n <= 50; ++n) {
    if (n > 0) acc *= n;
    CHECK(factorial(n) == acc);
  }
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(20) == Int("2432902008176640000"));
}

TEST_CASE("derangements match enumeration for small n") {
  for (unsigned n = 0; n <= 8; ++n) {
    CHECK(derangements(n) == derangements_bruteforce(n));
  }
  CHECK(derangements(0) == 1);
  CHECK(derangements(1) == 0);
  CHECK(derangements(3) == 2);
  CHECK(derangements(4) == 9);
}

TEST_CASE("derangements satisfy the inclusion-exclusion identity") {
  for (unsigned r = 0; r <= 200; ++r) {
    Int expected = 0;
    for (unsigned j = 0; j <= r; ++j) {
      Int term = factorial(r) / factorial(j);
      expected += (j % 2 == 0) ? term : -term;
    }
    CHECK(derangements(r) == expected);
  }
}

TEST_CASE("derangement bounds hold for every r except the documented r=1") {
  CHECK(derangement_bounds_check(0));
  CHECK_FALSE(derangement_bounds_check(1));
  for (unsigned r = 2; r <= 200; ++r) {
    CAPTURE(r);
    CHECK(derangement_bounds_check(r));
  }
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(10, 10) == 1);
  CHECK(binomial(4, 7) == 0);
  for (unsigned n = 0; n <= 30; ++n) {
    Int row_sum = 0;
    for (unsigned k = 0; k <= n; ++k) row_sum += binomial(n, k);
    CHECK(row_sum == Int(1) << n);
  }
}

TEST_CASE("multinomial coefficients") {
  CHECK(multinomial({3}) == 1);
  CHECK(multinomial({2, 1, 1}) == 12);
  CHECK(multinomial({3, 2, 1}) == 60);
  CHECK(multinomial({}) == 1);

  // multinomial(parts) * prod(parts[i]!) == (sum parts)!
  const std::vector<std::vector<unsigned>> cases = {
      {1, 1, 1, 1}, {4, 4}, {5, 3, 2, 2}, {7}, {2, 2, 2, 2, 2}};
  for (const auto& parts : cases) {
    Int prod = 1;
    unsigned total = 0;
    for (unsigned p : parts) {
      prod *= factorial(p);
      total += p;
    }
    CHECK(multinomial(parts) * prod == factorial(total));
  }
}

TEST_CASE("1/e bracket is certified and tight") {
  const auto& [lo, hi] = inv_e_bracket();
  CHECK(lo < hi);
  CHECK(lo > 0);
  CHECK(hi - lo == Rat(Int(1), factorial(45)));
  CHECK(to_double(lo) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(to_double(hi) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  // Alternating series: S_45 < S_47 < ... < 1/e < ... < S_46 < S_44.
  Rat s46 = lo + Rat(Int(1), factorial(46));
  Rat s47 = s46 - Rat(Int(1), factorial(47));
  CHECK(lo < s47);
  CHECK(s47 < s46);
  CHECK(s46 < hi);
}

TEST_CASE("rational string round-trip") {
  CHECK(rat_to_string(Rat(3, 4)) == "3/4");
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK(rat_to_string(Rat(-7, 2)) == "-7/2");
  CHECK(rat_to_string(Rat(0)) == "0");
  CHECK(rat_from_string("3/4") == Rat(3, 4));
  CHECK(rat_from_string("5") == Rat(5));
  CHECK(rat_from_string("-7/2") == Rat(-7, 2));
  CHECK(rat_from_string("6/8") == Rat(3, 4));
  CHECK(rat_to_string(rat_from_string("6/8")) == "3/4");
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
}

TEST_CASE("floor_to_dyadic") {
  CHECK(floor_to_dyadic(Rat(1, 3), 2) == Rat(1, 4));
  CHECK(floor_to_dyadic(Rat(-1, 3), 2) == Rat(-1, 2));
  CHECK(floor_to_dyadic(Rat(5, 8), 3) == Rat(5, 8));
  CHECK(floor_to_dyadic(Rat(0), 10) == 0);
  // Loss is always in [0, 2^-bits).
  for (int num = -20; num <= 20; ++num) {
    Rat r(num, 7);
    Rat q = floor_to_dyadic(r, 5);
    CHECK(q <= r);
    CHECK(r - q < Rat(1, 32));
  }
}

TEST_CASE("double conversion and logs survive huge operands") {
  const Int& big = factorial(2048);
  Rat ratio(2 * big + 1, 3 * big);
  CHECK(to_double(ratio) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  CHECK(log_of(Int(1)) == doctest::Approx(0.0));
  CHECK(log_of(Int(2)) == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
  // ln(n!) = lgamma(n+1)
  CHECK(log_of(factorial(2048)) ==
        doctest::Approx(std::lgamma(2049.0)).epsilon(1e-12));
  CHECK(log_of(Rat(Int(1), factorial(300))) ==
        doctest::Approx(-std::lgamma(301.0)).epsilon(1e-12));
  CHECK_THROWS_AS(log_of(Int(0)), std::domain_error);
  CHECK_THROWS_AS(log_of(Rat(-1, 2)), std::domain_error);
}

TEST_CASE("Value: exactness is contagious and exact accessors refuse inexact") {
  Value a(Rat(1, 2));
  Value b(3);
  Value c = Value::inexact(0.25);

  CHECK(a.is_exact());
  CHECK((a + b).is_exact());
  CHECK((a + b).rational() == Rat(7, 2));
  CHECK_FALSE((a + c).is_exact());
  CHECK((a + c).as_double() == doctest::Approx(0.75));
  CHECK_FALSE((a * c).is_exact());
  CHECK_FALSE((-c).is_exact());

  CHECK_THROWS_AS(c.rational(), std::logic_error);
  CHECK_THROWS_AS(a.eq_exact(c), std::logic_error);
  CHECK(a.eq_exact(Value(Rat(2, 4))));
}

TEST_CASE("Value: ordering and merge equality") {
  Value half(Rat(1, 2));
  Value half_inexact = Value::inexact(0.5);
  Value third(Rat(1, 3));

  CHECK(Value::compare(third, half) < 0);
  CHECK(Value::compare(half, third) > 0);
  CHECK(Value::compare(half, half) == 0);
  // Exact sorts before inexact on a double tie, and they never merge.
  CHECK(Value::compare(half, half_inexact) < 0);
  CHECK_FALSE(half.same(half_inexact));
  CHECK(half.same(Value(Rat(2, 4))));
  CHECK(half_inexact.same(Value::inexact(0.5)));

  CHECK(Value(Rat(-3, 2)).abs().rational() == Rat(3, 2));
  CHECK(half.to_string() == "1/2");
  CHECK(Value(7).to_string() == "7");
  CHECK(Value::inexact(0.25).to_string() == "0.25");
}
