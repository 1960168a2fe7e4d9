#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kruglov {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Memoized; the returned reference stays valid for the life of the program.
const Int& factorial(unsigned n);
const Int& derangements(unsigned n);

Int binomial(unsigned n, unsigned k);
Int multinomial(const std::vector<unsigned>& parts);

// True iff r!/3 <= derangements(r) <= r!.  Holds for r = 0 and all r >= 2;
// r = 1 is the lone exception (derangements(1) = 0) and callers are expected
// to report it as such rather than as a defect.
bool derangement_bounds_check(unsigned r);

// Certified rational bracket of 1/e: lo < 1/e < hi, hi - lo = 1/45!.
// Both bounds are partial sums of sum_k (-1)^k / k!, so the bracket is exact
// by the alternating-series inequality.
const std::pair<Rat, Rat>& inv_e_bracket();

// "p/q", or just "p" when the (canonical) denominator is 1.
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

// Accepts "p/q", plain integers, and decimal literals like "0.125" or "3e-2"
// (converted exactly).
Rat rat_from_decimal(const std::string& s);

// The exact dyadic rational equal to a finite double.
Rat rat_from_double(double d);

// Round toward -infinity onto the lattice of multiples of 2^-bits.
Rat floor_to_dyadic(const Rat& r, unsigned bits);

// Conversions that behave for operands far outside double range.
double to_double(const Rat& r);
double log_of(const Int& n);  // natural log, requires n > 0
double log_of(const Rat& r);  // natural log, requires r > 0

// A scalar that is either an exact rational or an inexact double.  Inexactness
// is contagious through arithmetic; exact-only accessors throw on inexact
// values so that silent precision laundering is impossible.
class Value {
 public:
  Value() : exact_(true), rat_(0), dbl_(0.0) {}
  Value(int v) : exact_(true), rat_(v), dbl_(static_cast<double>(v)) {}
  Value(std::int64_t v) : exact_(true), rat_(v), dbl_(static_cast<double>(v)) {}
  Value(const Int& v) : exact_(true), rat_(v) { dbl_ = to_double(rat_); }
  Value(const Rat& r) : exact_(true), rat_(r), dbl_(to_double(r)) {}

  static Value inexact(double d) {
    Value v;
    v.exact_ = false;
    v.dbl_ = d;
    return v;
  }

  bool is_exact() const { return exact_; }
  double as_double() const { return dbl_; }

  const Rat& rational() const {
    if (!exact_) throw std::logic_error("Value: exact accessor on inexact value");
    return rat_;
  }

  Value operator+(const Value& o) const;
  Value operator-(const Value& o) const;
  Value operator*(const Value& o) const;
  Value operator-() const;
  Value abs() const;

  // Strict weak order: primarily by numeric value (exact when both sides are
  // exact), with exact sorting before inexact on double ties so that mixed
  // sequences still order deterministically.
  static int compare(const Value& a, const Value& b);
  bool operator<(const Value& o) const { return compare(*this, o) < 0; }

  // Merge equality for atoms: equal exact rationals, or bit-identical doubles.
  // An exact value never merges with an inexact one.
  bool same(const Value& o) const;

  // Exact equality; refuses to answer when either side is inexact.
  bool eq_exact(const Value& o) const {
    return rational() == o.rational();
  }

  std::string to_string() const;

 private:
  bool exact_;
  Rat rat_;
  double dbl_;
};

}  // namespace kruglov
