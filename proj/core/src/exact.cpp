#include "kruglov/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <numbers>

namespace kruglov {

namespace {

// std::deque gives stable references while the memo grows under the lock.
std::deque<Int> g_fact{Int(1)};
std::deque<Int> g_der{Int(1), Int(0)};
std::mutex g_memo_mutex;

}  // namespace

const Int& factorial(unsigned n) {
  std::lock_guard lock(g_memo_mutex);
  while (g_fact.size() <= n) {
    g_fact.push_back(g_fact.back() * Int(g_fact.size()));
  }
  return g_fact[n];
}

const Int& derangements(unsigned n) {
  std::lock_guard lock(g_memo_mutex);
  while (g_der.size() <= n) {
    const std::size_t r = g_der.size();
    g_der.push_back(Int(r - 1) * (g_der[r - 1] + g_der[r - 2]));
  }
  return g_der[n];
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

Int multinomial(const std::vector<unsigned>& parts) {
  unsigned total = 0;
  Int denom = 1;
  for (unsigned p : parts) {
    total += p;
    denom *= factorial(p);
  }
  return factorial(total) / denom;
}

bool derangement_bounds_check(unsigned r) {
  const Int& d = derangements(r);
  const Int& f = factorial(r);
  return 3 * d >= f && d <= f;
}

const std::pair<Rat, Rat>& inv_e_bracket() {
  static const std::pair<Rat, Rat> bracket = [] {
    // Partial sums of sum_k (-1)^k/k!: S_45 < 1/e < S_44.
    Rat s44 = 0, s45 = 0;
    for (unsigned k = 0; k <= 45; ++k) {
      Rat term(Int((k % 2 == 0) ? 1 : -1), factorial(k));
      if (k <= 44) s44 += term;
      s45 += term;
    }
    return std::pair<Rat, Rat>(s45, s44);
  }();
  return bracket;
}

std::string rat_to_string(const Rat& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) return num;
  return num + "/" + denominator(r).str();
}

namespace {

Int parse_int_strict(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("empty integer");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("non-digit");
  }
  return Int(s);
}

}  // namespace

Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(parse_int_strict(s));
    Int num = parse_int_strict(s.substr(0, slash));
    Int den = parse_int_strict(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception& e) {
    throw std::invalid_argument("bad rational literal '" + s + "': " + e.what());
  }
}

Rat rat_from_decimal(const std::string& s) {
  if (s.find('/') != std::string::npos) return rat_from_string(s);
  std::string digits;
  int exp10 = 0;
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = (s[i++] == '-');
  bool any_digit = false, seen_dot = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal literal '" + s + "'");
      seen_dot = true;
    } else {
      digits.push_back(s[i]);
      if (seen_dot) --exp10;
      any_digit = true;
    }
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    exp10 += std::stoi(s.substr(i + 1));
    i = s.size();
  }
  if (!any_digit || i != s.size()) {
    throw std::invalid_argument("bad decimal literal '" + s + "'");
  }
  Rat r(Int(digits.empty() ? "0" : digits));
  if (negative) r = -r;
  const Int pow10 = boost::multiprecision::pow(Int(10), static_cast<unsigned>(std::abs(exp10)));
  if (exp10 >= 0) {
    r *= Rat(pow10);
  } else {
    r /= Rat(pow10);
  }
  return r;
}

Rat rat_from_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("rat_from_double: non-finite");
  int exp = 0;
  const double mant = std::frexp(d, &exp);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  Rat r(scaled);
  const int shift = exp - 53;
  if (shift >= 0) {
    r *= Rat(Int(1) << shift);
  } else {
    r /= Rat(Int(1) << -shift);
  }
  return r;
}

Rat floor_to_dyadic(const Rat& r, unsigned bits) {
  Int scaled_num = numerator(r) << bits;
  Int q, rem;
  divide_qr(scaled_num, denominator(r), q, rem);
  if (rem != 0 && r < 0) --q;  // divide_qr truncates toward zero
  return Rat(q, Int(1) << bits);
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

double log_of(const Int& n) {
  if (n <= 0) throw std::domain_error("log_of: argument must be positive");
  const unsigned b = boost::multiprecision::msb(n);
  if (b <= 900) return std::log(n.convert_to<double>());
  // Keep 53 significant bits and account for the shift.
  const unsigned shift = b - 52;
  Int top = n >> shift;
  return std::log(top.convert_to<double>()) +
         static_cast<double>(shift) * std::numbers::ln2;
}

double log_of(const Rat& r) {
  if (r <= 0) throw std::domain_error("log_of: argument must be positive");
  return log_of(numerator(r)) - log_of(denominator(r));
}

Value Value::operator+(const Value& o) const {
  if (exact_ && o.exact_) return Value(Rat(rat_ + o.rat_));
  return inexact(dbl_ + o.dbl_);
}

Value Value::operator-(const Value& o) const {
  if (exact_ && o.exact_) return Value(Rat(rat_ - o.rat_));
  return inexact(dbl_ - o.dbl_);
}

Value Value::operator*(const Value& o) const {
  if (exact_ && o.exact_) return Value(Rat(rat_ * o.rat_));
  return inexact(dbl_ * o.dbl_);
}

Value Value::operator-() const {
  if (exact_) return Value(Rat(-rat_));
  return inexact(-dbl_);
}

Value Value::abs() const {
  if (exact_) return rat_ < 0 ? -*this : *this;
  return inexact(std::fabs(dbl_));
}

int Value::compare(const Value& a, const Value& b) {
  if (a.exact_ && b.exact_) {
    if (a.rat_ < b.rat_) return -1;
    if (b.rat_ < a.rat_) return 1;
    return 0;
  }
  if (a.dbl_ < b.dbl_) return -1;
  if (b.dbl_ < a.dbl_) return 1;
  if (a.exact_ != b.exact_) return a.exact_ ? -1 : 1;
  return 0;
}

bool Value::same(const Value& o) const {
  if (exact_ != o.exact_) return false;
  if (exact_) return rat_ == o.rat_;
  return dbl_ == o.dbl_;
}

std::string Value::to_string() const {
  if (exact_) return rat_to_string(rat_);
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, dbl_);
  return std::string(buf, ptr);
}

}  // namespace kruglov
