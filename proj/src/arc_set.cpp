#include <algorithm>
#include <cctype>

#include "fullgroup/circle_maps.hpp"

namespace fullgroup {

namespace {

const CircleNumber kZero;
const CircleNumber kOne(1);

// Appends the circular arc [lower, lower + length) reduced into [0, 1).
void push_circular(std::vector<Arc>& out, const CircleNumber& lower, const CircleNumber& length) {
  Sign s = sign(length);
  if (s == Sign::negative) throw std::invalid_argument("arc with upper < lower");
  if (s == Sign::zero) return;
  if (length >= kOne) {
    out.push_back({kZero, kOne});
    return;
  }
  CircleNumber a = reduce_mod1(lower);
  CircleNumber b = a + length;
  if (b > kOne) {
    out.push_back({a, kOne});
    out.push_back({kZero, b - kOne});
  } else {
    out.push_back({std::move(a), std::move(b)});
  }
}

std::vector<Arc> canonical_union(std::vector<Arc> arcs) {
  auto by_lower = [](const Arc& x, const Arc& y) { return x.lower < y.lower; };
  if (!std::is_sorted(arcs.begin(), arcs.end(), by_lower)) std::sort(arcs.begin(), arcs.end(), by_lower);
  std::vector<Arc> out;
  out.reserve(arcs.size());
  for (auto& arc : arcs) {
    if (!out.empty() && arc.lower <= out.back().upper) {
      if (out.back().upper < arc.upper) out.back().upper = std::move(arc.upper);
    } else {
      out.push_back(std::move(arc));
    }
  }
  return out;
}

std::vector<CircleNumber> endpoints(const std::vector<Arc>& arcs) {
  std::vector<CircleNumber> pts;
  pts.reserve(2 * arcs.size());
  for (const auto& a : arcs) {
    pts.push_back(a.lower);
    pts.push_back(a.upper);
  }
  return pts;
}

enum class SetOp { unite, intersect, subtract, symmetric_difference };

bool keep(SetOp op, bool in_a, bool in_b) {
  switch (op) {
    case SetOp::unite: return in_a || in_b;
    case SetOp::intersect: return in_a && in_b;
    case SetOp::subtract: return in_a && !in_b;
    case SetOp::symmetric_difference: return in_a != in_b;
  }
  return false;
}

std::vector<Arc> combine_circle(std::span<const Arc> a, std::span<const Arc> b, SetOp op) {
  std::vector<CircleNumber> pts{kZero};
  {
    std::vector<Arc> av(a.begin(), a.end()), bv(b.begin(), b.end());
    std::vector<CircleNumber> pa = endpoints(av), pb = endpoints(bv);
    std::size_t i = 0, j = 0;
    auto push = [&](const CircleNumber& x) {
      if (!(pts.back() == x)) pts.push_back(x);
    };
    while (i < pa.size() || j < pb.size()) {
      if (j == pb.size()) {
        push(pa[i++]);
      } else if (i == pa.size()) {
        push(pb[j++]);
      } else {
        auto c = pa[i] <=> pb[j];
        if (c < 0) {
          push(pa[i++]);
        } else if (c > 0) {
          push(pb[j++]);
        } else {
          push(pa[i++]);
          ++j;
        }
      }
    }
    push(kOne);
  }
  std::vector<Arc> out;
  std::size_t ia = 0, ib = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const CircleNumber& p = pts[k];
    while (ia < a.size() && a[ia].upper <= p) ++ia;
    while (ib < b.size() && b[ib].upper <= p) ++ib;
    bool in_a = ia < a.size() && a[ia].lower <= p;
    bool in_b = ib < b.size() && b[ib].lower <= p;
    if (!keep(op, in_a, in_b)) continue;
    if (!out.empty() && out.back().upper == p) {
      out.back().upper = pts[k + 1];
    } else {
      out.push_back({p, pts[k + 1]});
    }
  }
  return out;
}

ArcSet combine(const ArcSet& a, const ArcSet& b, SetOp op) {
  if (a.circles() != b.circles()) throw std::invalid_argument("arc sets over different circle counts");
  std::vector<std::vector<Arc>> out(a.circles());
  for (std::size_t i = 0; i < a.circles(); ++i) out[i] = combine_circle(a.arcs(i), b.arcs(i), op);
  return ArcSet::from_arcs(std::move(out));
}

// Splits on `sep` at parenthesis depth 0, starting at pos; returns the piece.
std::string_view take_until(std::string_view text, std::size_t& pos, char sep) {
  int depth = 0;
  std::size_t start = pos;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == '(') {
      ++depth;
    } else if (c == ')' && depth > 0) {
      --depth;
    } else if (c == sep && depth == 0) {
      return text.substr(start, pos++ - start);
    }
  }
  throw ParseError("unterminated arc in '" + std::string(text) + "'");
}

}  // namespace

ArcSet ArcSet::from_arcs(std::vector<std::vector<Arc>> per_circle) {
  ArcSet s(per_circle.size());
  for (std::size_t i = 0; i < per_circle.size(); ++i) {
    for (const auto& arc : per_circle[i]) {
      if (sign(arc.lower) == Sign::negative || arc.upper > kOne || arc.upper <= arc.lower) {
        throw std::invalid_argument("arc [" + arc.lower.to_string() + "," + arc.upper.to_string() +
                                    ") is not a nonempty arc inside [0,1)");
      }
    }
    s.arcs_[i] = canonical_union(std::move(per_circle[i]));
  }
  return s;
}

ArcSet ArcSet::arc(std::size_t circles, std::size_t circle, const CircleNumber& lower, const CircleNumber& upper) {
  if (circle >= circles) throw std::out_of_range("circle index out of range");
  std::vector<std::vector<Arc>> per(circles);
  push_circular(per[circle], lower, upper - lower);
  return from_arcs(std::move(per));
}

ArcSet ArcSet::whole(std::size_t circles) {
  std::vector<std::vector<Arc>> per(circles, std::vector<Arc>{{kZero, kOne}});
  return from_arcs(std::move(per));
}

ArcSet ArcSet::on_all_circles(std::size_t circles, const CircleNumber& lower, const CircleNumber& upper) {
  std::vector<std::vector<Arc>> per(circles);
  for (auto& c : per) push_circular(c, lower, upper - lower);
  return from_arcs(std::move(per));
}

ArcSet ArcSet::parse(std::string_view text, std::size_t circles) {
  std::vector<std::vector<Arc>> per(circles);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
  };
  skip();
  if (text.substr(pos).starts_with("{}")) {
    pos += 2;
    skip();
    if (pos != text.size()) throw ParseError("trailing text after '{}'");
    return ArcSet(circles);
  }
  while (true) {
    skip();
    if (pos >= text.size()) break;
    std::size_t circle = 0;
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      circle = std::stoul(std::string(text.substr(start, pos - start)));
      if (pos >= text.size() || text[pos] != ':') throw ParseError("expected ':' after circle index");
      ++pos;
      skip();
    }
    if (circle >= circles) {
      throw ParseError("circle index " + std::to_string(circle) + " out of range for " + std::to_string(circles) +
                       " circle(s)");
    }
    if (pos >= text.size() || text[pos] != '[') throw ParseError("expected '[' in arc set '" + std::string(text) + "'");
    ++pos;
    CircleNumber lower = CircleNumber::parse(take_until(text, pos, ','));
    CircleNumber upper = CircleNumber::parse(take_until(text, pos, ')'));
    if (upper <= lower) throw ParseError("empty or reversed arc in '" + std::string(text) + "'");
    push_circular(per[circle], lower, upper - lower);
  }
  return from_arcs(std::move(per));
}

std::string ArcSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    for (const auto& a : arcs_[i]) {
      if (!out.empty()) out += " ";
      if (arcs_.size() > 1) out += std::to_string(i) + ":";
      out += "[" + a.lower.to_string() + "," + a.upper.to_string() + ")";
    }
  }
  return out.empty() ? "{}" : out;
}

bool ArcSet::empty() const {
  return std::all_of(arcs_.begin(), arcs_.end(), [](const auto& c) { return c.empty(); });
}

std::size_t ArcSet::arc_count() const {
  std::size_t n = 0;
  for (const auto& c : arcs_) n += c.size();
  return n;
}

CircleNumber ArcSet::measure() const {
  CircleNumber total;
  for (const auto& c : arcs_) {
    for (const auto& a : c) total += a.length();
  }
  return total * Rational(1, static_cast<unsigned long>(arcs_.size()));
}

ArcSet ArcSet::restricted_to(std::size_t circle) const {
  ArcSet s(circles());
  s.arcs_.at(circle) = arcs_.at(circle);
  return s;
}

ArcSet unite(const ArcSet& a, const ArcSet& b) { return combine(a, b, SetOp::unite); }
ArcSet intersect(const ArcSet& a, const ArcSet& b) { return combine(a, b, SetOp::intersect); }
ArcSet subtract(const ArcSet& a, const ArcSet& b) { return combine(a, b, SetOp::subtract); }
ArcSet symmetric_difference(const ArcSet& a, const ArcSet& b) {
  return combine(a, b, SetOp::symmetric_difference);
}
ArcSet complement(const ArcSet& a) { return subtract(ArcSet::whole(a.circles()), a); }
CircleNumber measure(const ArcSet& a) { return a.measure(); }

ArcSet translate(const ArcSet& a, const CircleNumber& by) {
  std::vector<std::vector<Arc>> per(a.circles());
  for (std::size_t i = 0; i < a.circles(); ++i) {
    for (const auto& arc : a.arcs(i)) push_circular(per[i], arc.lower + by, arc.length());
  }
  return ArcSet::from_arcs(std::move(per));
}

ArcSet rotate(const ArcSet& a, const RotationSystem& system, std::int64_t m) {
  if (a.circles() != system.circles()) throw std::invalid_argument("arc set and system differ in circle count");
  std::vector<std::vector<Arc>> per(a.circles());
  for (std::size_t i = 0; i < a.circles(); ++i) {
    CircleNumber shift = system.alpha(i) * m;
    for (const auto& arc : a.arcs(i)) push_circular(per[i], arc.lower + shift, arc.length());
  }
  return ArcSet::from_arcs(std::move(per));
}

}  // namespace fullgroup
