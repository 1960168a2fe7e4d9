#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <kruglov/distribution.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace kruglov;

namespace {

DiscreteDistribution dd(std::initializer_list<std::pair<Rat, Rat>> atoms,
                        Rat tail = Rat(0)) {
  std::vector<Atom> v;
  for (const auto& [val, m] : atoms) v.push_back({Value(val), m});
  return DiscreteDistribution(std::move(v), std::move(tail));
}

bool atoms_equal(const DiscreteDistribution& d,
                 std::initializer_list<std::pair<Rat, Rat>> expect) {
  if (d.atoms().size() != expect.size()) return false;
  std::size_t i = 0;
  for (const auto& [val, m] : expect) {
    if (d.atoms()[i].v.rational() != val) return false;
    if (d.atoms()[i].m != m) return false;
    ++i;
  }
  return true;
}

DiscreteDistribution random_law(std::mt19937_64& rng) {
  const unsigned n = 1 + rng() % 5;
  std::vector<Atom> atoms;
  std::vector<Rat> masses;
  Rat total = 0;
  for (unsigned i = 0; i < n; ++i) {
    Rat m(1 + static_cast<std::int64_t>(rng() % 5), 16);
    masses.push_back(m);
    total += m;
  }
  for (unsigned i = 0; i < n; ++i) {
    const auto v = static_cast<std::int64_t>(rng() % 21) - 10;
    atoms.push_back({Value(Rat(v, 2)), masses[i] / total});
  }
  return DiscreteDistribution(std::move(atoms));
}

}  // namespace

TEST_CASE("construction canonicalizes and validates") {
  DiscreteDistribution d({{Value(2), Rat(1, 3)}, {Value(1), Rat(1, 3)}, {Value(2), Rat(1, 3)}});
  CHECK(atoms_equal(d, {{1, {1, 3}}, {2, {2, 3}}}));
  CHECK(d.total_mass() == 1);
  CHECK(d.is_exact_law());
  CHECK_THROWS_AS(dd({{0, {3, 4}}, {1, {1, 2}}}), std::invalid_argument);  // > 1
  CHECK_THROWS_AS(dd({{0, {1, 2}}}), std::invalid_argument);  // missing mass uncovered
  CHECK(dd({{0, {1, 2}}}, Rat(1, 2)).tail() == Rat(1, 2));
}

TEST_CASE("law_of aggregates piece lengths per value") {
  CHECK(atoms_equal(law_of(StepFunction::constant(Value(Rat(7, 3)))),
                    {{{7, 3}, 1}}));
  StepFunction x({{Rat(1, 3), Value(1)}, {Rat(1, 3), Value(2)}, {Rat(1, 3), Value(1)}});
  CHECK(atoms_equal(law_of(x), {{1, {2, 3}}, {2, {1, 3}}}));
  StepFunction y = from_vector({Value(3), Value(1), Value(3), Value(2)});
  CHECK(atoms_equal(law_of(y), {{1, {1, 4}}, {2, {1, 4}}, {3, {1, 2}}}));
}

TEST_CASE("quantile is the non-increasing rearrangement of the law") {
  StepFunction q = quantile(dd({{0, {1, 2}}, {2, {1, 2}}}));
  REQUIRE(q.pieces().size() == 2);
  CHECK(q.pieces()[0].len == Rat(1, 2));
  CHECK(q.pieces()[0].val.rational() == 2);
  CHECK(q.pieces()[1].val.rational() == 0);

  StepFunction c = quantile(DiscreteDistribution::point_mass(Value(Rat(5, 2))));
  REQUIRE(c.pieces().size() == 1);
  CHECK(c.pieces()[0].val.rational() == Rat(5, 2));

  CHECK_THROWS_AS(quantile(dd({{1, {1, 2}}}, Rat(1, 2))), std::invalid_argument);
}

TEST_CASE("law_of / quantile round-trips") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    DiscreteDistribution mu = random_law(rng);
    // quantile works on |values|, so compare laws of absolute values.
    std::vector<Atom> abs_atoms;
    for (const auto& a : mu.atoms()) abs_atoms.push_back({a.v.abs(), a.m});
    DiscreteDistribution abs_mu(std::move(abs_atoms));
    CHECK(same_law(law_of(quantile(abs_mu)), abs_mu));
  }
  // quantile(law_of(x)) = rearrange(x) for nonnegative step functions.
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Value> vec;
    for (unsigned i = 0, n = 1 + rng() % 8; i < n; ++i) {
      vec.push_back(Value(Rat(static_cast<std::int64_t>(rng() % 12), 3)));
    }
    StepFunction x = from_vector(vec);
    CHECK(equimeasurable(quantile(law_of(x)), rearrange(x)));
  }
}

TEST_CASE("convolution: identity, hand oracle, moment linearity") {
  DiscreteDistribution coin = dd({{0, {1, 2}}, {1, {1, 2}}});
  CHECK(same_law(convolve(coin, DiscreteDistribution::point_mass(Value(0))), coin));
  CHECK(atoms_equal(convolve(coin, coin), {{0, {1, 4}}, {1, {1, 2}}, {2, {1, 4}}}));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    DiscreteDistribution a = random_law(rng);
    DiscreteDistribution b = random_law(rng);
    CHECK(mean(convolve(a, b)).eq_exact(mean(a) + mean(b)));
  }
}

TEST_CASE("convolution is commutative and associative on exact laws") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    DiscreteDistribution a = random_law(rng);
    DiscreteDistribution b = random_law(rng);
    DiscreteDistribution c = random_law(rng);
    CHECK(same_law(convolve(a, b), convolve(b, a)));
    CHECK(same_law(convolve(convolve(a, b), c), convolve(a, convolve(b, c))));
  }
}

TEST_CASE("sparse and lattice convolution paths agree") {
  // Denominator with msb > 40 forces the sort-merge path.
  const Int big_den = (Int(1) << 41) + 1;
  DiscreteDistribution a = dd({{0, {1, 3}}, {2, {2, 3}}});
  DiscreteDistribution b = dd({{1, {1, 4}}, {5, {3, 4}}});
  DiscreteDistribution ab = convolve(a, b);

  const Value shrink(Rat(Int(1), big_den));
  DiscreteDistribution a_small = scale_values(a, shrink);
  DiscreteDistribution b_small = scale_values(b, shrink);
  DiscreteDistribution ab_small = convolve(a_small, b_small);
  CHECK(same_law(ab_small, scale_values(ab, shrink)));
}

TEST_CASE("power_convolve") {
  DiscreteDistribution coin = dd({{0, {1, 2}}, {1, {1, 2}}});
  CHECK(same_law(power_convolve(coin, 0), DiscreteDistribution::point_mass(Value(0))));
  CHECK(same_law(power_convolve(coin, 1), coin));
  CHECK(atoms_equal(power_convolve(coin, 3),
                    {{0, {1, 8}}, {1, {3, 8}}, {2, {3, 8}}, {3, {1, 8}}}));
  DiscreteDistribution naive = coin;
  for (int i = 1; i < 5; ++i) naive = convolve(naive, coin);
  CHECK(same_law(power_convolve(coin, 5), naive));
}

TEST_CASE("mixture") {
  DiscreteDistribution coin = dd({{0, {1, 2}}, {1, {1, 2}}});
  CHECK(same_law(mixture({Rat(1)}, {coin}), coin));
  CHECK(atoms_equal(mixture({Rat(1, 2), Rat(1, 2)},
                            {DiscreteDistribution::point_mass(Value(0)),
                             DiscreteDistribution::point_mass(Value(1))}),
                    {{0, {1, 2}}, {1, {1, 2}}}));
  DiscreteDistribution deficient =
      mixture({Rat(1, 2)}, {DiscreteDistribution::point_mass(Value(1))});
  CHECK(atoms_equal(deficient, {{1, {1, 2}}}));
  CHECK(deficient.tail() == Rat(1, 2));
  CHECK_THROWS_AS(mixture({Rat(2, 3), Rat(2, 3)}, {coin, coin}),
                  std::invalid_argument);
}

TEST_CASE("ccdf bounds") {
  DiscreteDistribution d = dd({{0, {1, 2}}, {2, {1, 2}}});
  CHECK(ccdf(d, Value(-1)) == std::pair<Rat, Rat>{1, 1});
  CHECK(ccdf(d, Value(1)) == std::pair<Rat, Rat>{{1, 2}, {1, 2}});
  CHECK(ccdf(d, Value(2)) == std::pair<Rat, Rat>{0, 0});

  DiscreteDistribution t = dd({{1, {1, 2}}}, Rat(1, 2));
  auto [lo, hi] = ccdf(t, Value(0));
  CHECK(lo == Rat(1, 2));
  CHECK(hi == 1);

  // Lower bound is non-increasing in tau.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    DiscreteDistribution mu = random_law(rng);
    Rat prev = 1;
    for (int k = -12; k <= 12; ++k) {
      Rat cur = ccdf(mu, Value(Rat(k, 2))).first;
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("mean and abs_moment") {
  CHECK(mean(DiscreteDistribution::point_mass(Value(Rat(-7, 2)))).rational() ==
        Rat(-7, 2));
  CHECK(mean(dd({{1, {1, 2}}, {3, {1, 2}}})).rational() == 2);
  CHECK(abs_moment(dd({{-2, {1, 2}}, {1, {1, 2}}})).rational() == Rat(3, 2));
}

TEST_CASE("prune ledgers the removed mass and interval") {
  DiscreteDistribution d = prune(dd({{0, {999, 1000}}, {5, {1, 1000}}}), Rat(1, 100));
  CHECK(atoms_equal(d, {{0, {999, 1000}}}));
  CHECK(d.tail() == Rat(1, 1000));
  CHECK(d.tail_l1() == Rat(5, 1000));
  REQUIRE(d.pruned_interval().has_value());
  CHECK(d.pruned_interval()->first.rational() == 5);
  CHECK(d.pruned_interval()->second.rational() == 5);
  // prune never decreases the tail.
  CHECK(prune(d, Rat(0)).tail() == d.tail());
}

TEST_CASE("char_fn") {
  DiscreteDistribution coin = dd({{0, {1, 2}}, {1, {1, 2}}});
  CHECK(char_fn(coin, 0.0).value.real() == doctest::Approx(1.0));
  CHECK(char_fn(coin, 0.0).value.imag() == doctest::Approx(0.0));

  auto point = char_fn(DiscreteDistribution::point_mass(Value(3)), 0.7);
  CHECK(point.value.real() == doctest::Approx(std::cos(2.1)));
  CHECK(point.value.imag() == doctest::Approx(std::sin(2.1)));

  auto zero = char_fn(coin, std::numbers::pi);
  CHECK(std::abs(zero.value) == doctest::Approx(0.0).epsilon(1e-12));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    DiscreteDistribution mu = random_law(rng);
    const double t = static_cast<double>(rng() % 1000) / 100.0 - 5.0;
    CHECK(std::abs(char_fn(mu, t).value) <= 1.0 + to_double(mu.tail()) + 1e-12);
  }
}

TEST_CASE("quantize_masses floors onto the dyadic lattice, losses ledgered") {
  DiscreteDistribution d = quantize_masses(dd({{0, {1, 3}}, {1, {2, 3}}}), 2);
  CHECK(atoms_equal(d, {{0, {1, 4}}, {1, {1, 2}}}));
  CHECK(d.total_mass() == Rat(3, 4));
  CHECK(d.tail() == Rat(1, 4));
  CHECK(d.tail_l1() == Rat(1, 6));
  // Already-dyadic masses are untouched.
  DiscreteDistribution e = dd({{0, {1, 4}}, {7, {3, 4}}});
  CHECK(same_law(quantize_masses(e, 10), e));
}

TEST_CASE("round_values_up dominates and merges collisions") {
  DiscreteDistribution d = round_values_up(dd({{{1, 3}, {1, 2}}, {{2, 3}, {1, 2}}}), 2);
  CHECK(atoms_equal(d, {{{1, 2}, {1, 2}}, {{3, 4}, {1, 2}}}));
  DiscreteDistribution merged =
      round_values_up(dd({{{1, 3}, {1, 2}}, {{5, 12}, {1, 2}}}), 2);
  CHECK(atoms_equal(merged, {{{1, 2}, 1}}));
}

TEST_CASE("merge_upward dominates the original law") {
  DiscreteDistribution d = dd({{0, {1, 2}}, {1, {1, 4}}, {10, {1, 4}}});
  DiscreteDistribution m = merge_upward(d, 2);
  CHECK(atoms_equal(m, {{1, {3, 4}}, {10, {1, 4}}}));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    DiscreteDistribution mu = random_law(rng);
    std::vector<Atom> abs_atoms;
    for (const auto& a : mu.atoms()) abs_atoms.push_back({a.v.abs(), a.m});
    DiscreteDistribution nonneg(std::move(abs_atoms));
    DiscreteDistribution coarse = merge_upward(nonneg, 2);
    // The coarse law submajorizes the original.
    CHECK(submajorizes(quantile(coarse), quantile(nonneg), Value(0)));
  }
}

TEST_CASE("collapse_tail_to_zero yields an exact law") {
  DiscreteDistribution deficient =
      mixture({Rat(1, 2)}, {DiscreteDistribution::point_mass(Value(1))});
  DiscreteDistribution full = collapse_tail_to_zero(deficient);
  CHECK(atoms_equal(full, {{0, {1, 2}}, {1, {1, 2}}}));
  CHECK(full.is_exact_law());
  // Idempotent on exact laws.
  CHECK(same_law(collapse_tail_to_zero(full), full));
}

TEST_CASE("scale_values") {
  DiscreteDistribution d = dd({{1, {1, 2}}, {2, {1, 2}}});
  CHECK(atoms_equal(scale_values(d, Value(2)), {{2, {1, 2}}, {4, {1, 2}}}));
  CHECK(atoms_equal(scale_values(d, Value(-1)), {{-2, {1, 2}}, {-1, {1, 2}}}));
  CHECK(atoms_equal(scale_values(d, Value(0)), {{0, 1}}));
  DiscreteDistribution t = dd({{1, {1, 2}}}, Rat(1, 2)).with_extra_tail(Rat(0), Rat(1, 8));
  CHECK(scale_values(t, Value(2)).tail_l1() == Rat(1, 4));
  CHECK_THROWS_AS(scale_values(t, Value::inexact(0.5)), std::logic_error);
}

TEST_CASE("trusted fast path still rejects broken invariants") {
  CHECK_THROWS_AS(DiscreteDistribution::trusted({{Value(2), Rat(1, 2)}, {Value(1), Rat(1, 2)}},
                                                Rat(1), Rat(0), Rat(0)),
                  std::logic_error);
  CHECK_THROWS_AS(DiscreteDistribution::trusted({{Value(0), Rat(1, 2)}},
                                                Rat(1, 2), Rat(1, 4), Rat(0)),
                  std::logic_error);
}
