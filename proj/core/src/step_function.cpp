#include "kruglov/step_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace kruglov {

namespace {

Value scale_by_len(const Rat& len, const Value& v) {
  return Value(len) * v;
}

std::vector<Piece> merged(std::vector<Piece> pieces) {
  std::vector<Piece> out;
  for (auto& p : pieces) {
    if (!out.empty() && out.back().val.same(p.val)) {
      out.back().len += p.len;
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

StepFunction::StepFunction(std::vector<Piece> pieces) {
  Rat total = 0;
  for (const auto& p : pieces) {
    if (p.len <= 0) throw std::invalid_argument("StepFunction: piece length must be > 0");
    total += p.len;
  }
  if (total != 1) throw std::invalid_argument("StepFunction: piece lengths must sum to 1");
  pieces_ = merged(std::move(pieces));
}

StepFunction StepFunction::constant(Value v) {
  return StepFunction({{Rat(1), std::move(v)}});
}

bool StepFunction::all_exact() const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const Piece& p) { return p.val.is_exact(); });
}

StepFunction rearrange(const StepFunction& x) {
  std::vector<Piece> pieces;
  pieces.reserve(x.pieces().size());
  for (const auto& p : x.pieces()) pieces.push_back({p.len, p.val.abs()});
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return Value::compare(b.val, a.val) < 0;  // descending
  });
  return StepFunction(std::move(pieces));
}

StepFunction dilate(const StepFunction& x, const Rat& tau) {
  if (tau <= 0) throw std::invalid_argument("dilate: tau must be > 0");
  std::vector<Piece> pieces;
  if (tau <= 1) {
    for (const auto& p : x.pieces()) pieces.push_back({p.len * tau, p.val});
    if (tau < 1) pieces.push_back({1 - tau, Value(0)});
    return StepFunction(std::move(pieces));
  }
  Rat used = 0;
  for (const auto& p : x.pieces()) {
    Rat len = p.len * tau;
    if (used + len >= 1) {
      pieces.push_back({1 - used, p.val});
      return StepFunction(std::move(pieces));
    }
    pieces.push_back({len, p.val});
    used += len;
  }
  throw std::logic_error("dilate: pieces of a unit-measure function cover [0,1] under stretch");
}

Value partial_integral(const StepFunction& x, const Rat& tau) {
  if (tau < 0 || tau > 1) throw std::invalid_argument("partial_integral: tau must lie in [0,1]");
  Value acc(0);
  Rat pos = 0;
  for (const auto& p : x.pieces()) {
    if (pos + p.len <= tau) {
      acc = acc + scale_by_len(p.len, p.val);
      pos += p.len;
    } else {
      if (tau > pos) acc = acc + scale_by_len(tau - pos, p.val);
      break;
    }
  }
  return acc;
}

Value submajorization_margin(const StepFunction& y, const StepFunction& x) {
  const StepFunction xs = rearrange(x);
  const StepFunction ys = rearrange(y);
  const auto& xp = xs.pieces();
  const auto& yp = ys.pieces();

  // One merged sweep over the breakpoints of both rearrangements, carrying
  // both running integrals, so the cost is linear in the piece counts.  The
  // margin is piecewise linear in tau, so its minimum over [0,1] is attained
  // at a breakpoint (or at tau = 1, the final one).
  std::size_t ix = 0, iy = 0;
  Rat pos = 0;
  Rat x_end = xp.empty() ? Rat(1) : xp[0].len;
  Rat y_end = yp.empty() ? Rat(1) : yp[0].len;
  Value x_int(0), y_int(0);
  bool first = true;
  Value worst(0);
  while (ix < xp.size() || iy < yp.size()) {
    const Rat next = (ix < xp.size() && (iy >= yp.size() || x_end <= y_end))
                         ? x_end
                         : y_end;
    const Value seg{Rat(next - pos)};
    if (ix < xp.size()) x_int = x_int + seg * xp[ix].val;
    if (iy < yp.size()) y_int = y_int + seg * yp[iy].val;
    pos = next;
    if (ix < xp.size() && x_end == pos) {
      ++ix;
      if (ix < xp.size()) x_end += xp[ix].len;
    }
    if (iy < yp.size() && y_end == pos) {
      ++iy;
      if (iy < yp.size()) y_end += yp[iy].len;
    }
    const Value margin = y_int - x_int;
    if (first || margin < worst) {
      worst = margin;
      first = false;
    }
  }
  return worst;
}

bool submajorizes(const StepFunction& y, const StepFunction& x,
                  const Value& slack) {
  {
    const bool slack_neg = slack.is_exact() ? slack.rational() < 0 : slack.as_double() < 0;
    if (slack_neg) throw std::invalid_argument("submajorizes: slack must be nonnegative");
  }
  const Value margin = submajorization_margin(y, x) + slack;
  return margin.is_exact() ? margin.rational() >= 0 : margin.as_double() >= 0;
}

bool equimeasurable(const StepFunction& x, const StepFunction& y) {
  if (!x.all_exact() || !y.all_exact()) {
    throw std::logic_error("equimeasurable: exact comparison refused on inexact values");
  }
  StepFunction xs = rearrange(x);
  StepFunction ys = rearrange(y);
  if (xs.pieces().size() != ys.pieces().size()) return false;
  for (std::size_t i = 0; i < xs.pieces().size(); ++i) {
    if (xs.pieces()[i].len != ys.pieces()[i].len) return false;
    if (!xs.pieces()[i].val.eq_exact(ys.pieces()[i].val)) return false;
  }
  return true;
}

std::vector<Value> average_vector(const StepFunction& x, unsigned n) {
  if (n == 0) throw std::invalid_argument("average_vector: n must be >= 1");
  std::vector<Value> out;
  out.reserve(n);
  Value prev = partial_integral(x, 0);
  for (unsigned i = 1; i <= n; ++i) {
    Value next = partial_integral(x, Rat(i, n));
    out.push_back(Value(Rat(n)) * (next - prev));
    prev = next;
  }
  return out;
}

StepFunction from_vector(const std::vector<Value>& a) {
  if (a.empty()) throw std::invalid_argument("from_vector: vector must be non-empty");
  std::vector<Piece> pieces;
  pieces.reserve(a.size());
  const Rat len(1, static_cast<unsigned>(a.size()));
  for (const auto& v : a) pieces.push_back({len, v});
  return StepFunction(std::move(pieces));
}

StepFunction pointwise_sum(const StepFunction& x, const StepFunction& y) {
  std::vector<Piece> pieces;
  auto ix = x.pieces().begin();
  auto iy = y.pieces().begin();
  Rat rx = ix->len, ry = iy->len;  // remaining length in the current pieces
  Rat remaining = 1;
  while (remaining > 0) {
    const Rat step = std::min(rx, ry);
    pieces.push_back({step, ix->val + iy->val});
    remaining -= step;
    rx -= step;
    ry -= step;
    if (rx == 0 && remaining > 0) rx = (++ix)->len;
    if (ry == 0 && remaining > 0) ry = (++iy)->len;
  }
  return StepFunction(std::move(pieces));
}

StepFunction scale_function(const StepFunction& x, const Value& c) {
  std::vector<Piece> pieces;
  pieces.reserve(x.pieces().size());
  for (const auto& p : x.pieces()) pieces.push_back({p.len, p.val * c});
  return StepFunction(std::move(pieces));
}

}  // namespace kruglov
