#include <algorithm>
#include <cmath>

#include "fullgroup/circle_maps.hpp"

namespace fullgroup {

namespace {

const CircleNumber kZero;
const CircleNumber kOne(1);

void merge_equal_powers(std::vector<Piece>& pieces) {
  std::size_t w = 0;
  for (std::size_t r = 0; r < pieces.size(); ++r) {
    if (w > 0 && pieces[w - 1].power == pieces[r].power) continue;
    if (w != r) pieces[w] = std::move(pieces[r]);
    ++w;
  }
  pieces.resize(w);
}

const CircleNumber& end_of(const std::vector<Piece>& pieces, std::size_t j) {
  return j + 1 < pieces.size() ? pieces[j + 1].start : kOne;
}

// Index of the piece containing x in [0, 1).
std::size_t locate(std::span<const Piece> pieces, const CircleNumber& x) {
  auto it = std::upper_bound(pieces.begin() + 1, pieces.end(), x,
                             [](const CircleNumber& v, const Piece& p) { return v < p.start; });
  return static_cast<std::size_t>(it - pieces.begin()) - 1;
}

// A domain arc [lower, upper) that a map moves by the exact offset `offset`
// (image inside [0, 1]).
struct Segment {
  CircleNumber lower;
  CircleNumber upper;
  CircleNumber offset;
  std::int64_t power;
};

// Splits piece j of `pieces` at the preimage of 0 so each part is a plain translation.
void segments_of_piece(const std::vector<Piece>& pieces, std::size_t j, const CircleNumber& alpha,
                       std::vector<Segment>& out) {
  const CircleNumber& a = pieces[j].start;
  const CircleNumber& b = end_of(pieces, j);
  const std::int64_t k = pieces[j].power;
  if (k == 0) {
    out.push_back({a, b, kZero, 0});
    return;
  }
  CircleNumber image = reduce_mod1(a + alpha * k);
  CircleNumber offset = image - a;
  CircleNumber image_end = b + offset;
  if (image_end > kOne) {
    CircleNumber cut = kOne - offset;
    out.push_back({a, cut, offset, k});
    out.push_back({std::move(cut), b, offset - kOne, k});
  } else {
    out.push_back({a, b, std::move(offset), k});
  }
}

std::vector<Piece> compose_circle(const std::vector<Piece>& s, const std::vector<Piece>& r, const CircleNumber& alpha) {
  std::vector<Piece> out;
  out.reserve(s.size() + r.size() + 2);
  std::vector<Segment> segments;
  for (std::size_t j = 0; j < r.size(); ++j) {
    segments.clear();
    segments_of_piece(r, j, alpha, segments);
    for (const auto& seg : segments) {
      CircleNumber image_lower = seg.lower + seg.offset;
      CircleNumber image_upper = seg.upper + seg.offset;
      std::size_t idx = locate(s, image_lower);
      out.push_back({seg.lower, seg.power + s[idx].power});
      for (++idx; idx < s.size() && s[idx].start < image_upper; ++idx) {
        out.push_back({s[idx].start - seg.offset, seg.power + s[idx].power});
      }
    }
  }
  merge_equal_powers(out);
  return out;
}

bool offsets_agree(std::int64_t k1, std::int64_t k2, const CircleNumber& alpha) {
  if (k1 == k2) return true;
  return (alpha * (k1 - k2)).is_integer();
}

void check_same(const PiecewiseRotation& s, const PiecewiseRotation& r) {
  if (!same_system(s.system(), r.system())) {
    throw std::invalid_argument("piecewise rotations belong to different rotation systems");
  }
}

}  // namespace

PiecewiseRotation PiecewiseRotation::identity(SystemPtr system) {
  std::size_t n = system->circles();
  return PiecewiseRotation(std::move(system), std::vector<std::vector<Piece>>(n, std::vector<Piece>{{kZero, 0}}));
}

PiecewiseRotation PiecewiseRotation::from_pieces(SystemPtr system, std::vector<std::vector<Piece>> pieces) {
  if (pieces.size() != system->circles()) throw std::invalid_argument("piece lists do not match circle count");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto& p = pieces[i];
    if (p.empty() || !(p.front().start == kZero)) throw std::invalid_argument("pieces must start at 0");
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      if (!(p[j].start < p[j + 1].start)) throw std::invalid_argument("piece starts must increase");
    }
    if (!(p.back().start < kOne)) throw std::invalid_argument("piece starts must lie in [0, 1)");
    // The images must tile [0, 1) as well.
    std::vector<Arc> images;
    std::vector<Segment> segs;
    for (std::size_t j = 0; j < p.size(); ++j) segments_of_piece(p, j, system->alpha(i), segs);
    for (const auto& s : segs) images.push_back({s.lower + s.offset, s.upper + s.offset});
    std::sort(images.begin(), images.end(), [](const Arc& x, const Arc& y) { return x.lower < y.lower; });
    CircleNumber cursor;
    for (const auto& im : images) {
      if (!(im.lower == cursor)) throw std::invalid_argument("piecewise rotation is not a bijection");
      cursor = im.upper;
    }
    if (!(cursor == kOne)) throw std::invalid_argument("piecewise rotation is not a bijection");
    merge_equal_powers(p);
  }
  return PiecewiseRotation(std::move(system), std::move(pieces));
}

std::size_t PiecewiseRotation::piece_count() const {
  std::size_t n = 0;
  for (const auto& c : pieces_) n += c.size();
  return n;
}

CircleNumber PiecewiseRotation::piece_end(std::size_t circle, std::size_t index) const {
  return end_of(pieces_.at(circle), index);
}

CircleNumber PiecewiseRotation::apply(std::size_t circle, const CircleNumber& x) const {
  const auto& p = pieces_.at(circle);
  std::size_t j = locate(p, x);
  return reduce_mod1(x + system_->alpha(circle) * p[j].power);
}

double PiecewiseRotation::apply_approx(std::size_t circle, double x) const {
  const auto& p = pieces_.at(circle);
  std::size_t j = 0;
  while (j + 1 < p.size() && p[j + 1].start.to_double() <= x) ++j;
  double y = x + static_cast<double>(p[j].power) * system_->alpha(circle).to_double();
  return y - std::floor(y);
}

bool PiecewiseRotation::is_identity() const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    for (const auto& p : pieces_[i]) {
      if (!offsets_agree(p.power, 0, system_->alpha(i))) return false;
    }
  }
  return true;
}

std::string PiecewiseRotation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i > 0) out += "; ";
    if (pieces_.size() > 1) out += std::to_string(i) + ": ";
    for (std::size_t j = 0; j < pieces_[i].size(); ++j) {
      if (j > 0) out += " ";
      out += "[" + pieces_[i][j].start.to_string() + "," + end_of(pieces_[i], j).to_string() + ")^" +
             std::to_string(pieces_[i][j].power);
    }
  }
  return out;
}

bool operator==(const PiecewiseRotation& a, const PiecewiseRotation& b) {
  return same_system(a.system_, b.system_) && a.pieces_ == b.pieces_;
}

PiecewiseRotation rotation(SystemPtr system, std::int64_t m) {
  std::size_t n = system->circles();
  return PiecewiseRotation(std::move(system), std::vector<std::vector<Piece>>(n, std::vector<Piece>{{kZero, m}}));
}

PiecewiseRotation make_involution(SystemPtr system, const ArcSet& a) {
  if (a.circles() != system->circles()) throw std::invalid_argument("arc set and system differ in circle count");
  ArcSet image = rotate(a, *system, 1);
  if (!intersect(a, image).empty()) {
    throw OverlapError("A = " + a.to_string() + " meets T(A); the involution T_A is undefined");
  }
  std::vector<std::vector<Piece>> pieces(a.circles());
  for (std::size_t i = 0; i < a.circles(); ++i) {
    std::vector<std::pair<Arc, std::int64_t>> marked;
    for (const auto& arc : a.arcs(i)) marked.push_back({arc, 1});
    for (const auto& arc : image.arcs(i)) marked.push_back({arc, -1});
    std::sort(marked.begin(), marked.end(), [](const auto& x, const auto& y) { return x.first.lower < y.first.lower; });
    auto& out = pieces[i];
    CircleNumber cursor;
    for (auto& [arc, power] : marked) {
      if (cursor < arc.lower) out.push_back({cursor, 0});
      out.push_back({arc.lower, power});
      cursor = arc.upper;
    }
    if (cursor < kOne) out.push_back({cursor, 0});
    merge_equal_powers(out);
  }
  return PiecewiseRotation(std::move(system), std::move(pieces));
}

PiecewiseRotation rotate_then(std::int64_t m, const PiecewiseRotation& r) {
  PiecewiseRotation out = r;
  if (m == 0) return out;
  for (auto& c : out.pieces_) {
    for (auto& p : c) p.power += m;
  }
  return out;
}

PiecewiseRotation compose(const PiecewiseRotation& s, const PiecewiseRotation& r) {
  check_same(s, r);
  std::vector<std::vector<Piece>> pieces(s.circles());
  for (std::size_t i = 0; i < s.circles(); ++i) {
    if (s.pieces_[i].size() == 1) {
      pieces[i] = r.pieces_[i];
      for (auto& p : pieces[i]) p.power += s.pieces_[i][0].power;
    } else {
      pieces[i] = compose_circle(s.pieces_[i], r.pieces_[i], s.system_->alpha(i));
    }
  }
  return PiecewiseRotation(s.system_, std::move(pieces));
}

PiecewiseRotation inverse(const PiecewiseRotation& s) {
  std::vector<std::vector<Piece>> pieces(s.circles());
  for (std::size_t i = 0; i < s.circles(); ++i) {
    std::vector<Segment> segs;
    for (std::size_t j = 0; j < s.pieces_[i].size(); ++j) segments_of_piece(s.pieces_[i], j, s.system_->alpha(i), segs);
    auto& out = pieces[i];
    for (const auto& seg : segs) out.push_back({seg.lower + seg.offset, -seg.power});
    std::sort(out.begin(), out.end(), [](const Piece& x, const Piece& y) { return x.start < y.start; });
    merge_equal_powers(out);
  }
  return PiecewiseRotation(s.system_, std::move(pieces));
}

CircleNumber uniform_distance(const PiecewiseRotation& s, const PiecewiseRotation& r) {
  check_same(s, r);
  CircleNumber total;
  for (std::size_t i = 0; i < s.circles(); ++i) {
    auto ps = s.pieces(i);
    auto pr = r.pieces(i);
    const CircleNumber& alpha = s.system()->alpha(i);
    std::size_t a = 0, b = 0;
    CircleNumber cursor;
    while (a < ps.size() && b < pr.size()) {
      const CircleNumber& end_a = a + 1 < ps.size() ? ps[a + 1].start : kOne;
      const CircleNumber& end_b = b + 1 < pr.size() ? pr[b + 1].start : kOne;
      auto c = end_a <=> end_b;
      const CircleNumber& end = c <= 0 ? end_a : end_b;
      if (!offsets_agree(ps[a].power, pr[b].power, alpha)) total += end - cursor;
      cursor = end;
      if (c <= 0) ++a;
      if (c >= 0) ++b;
    }
  }
  return total * Rational(1, static_cast<unsigned long>(s.circles()));
}

ArcSet support(const PiecewiseRotation& s) {
  std::vector<std::vector<Arc>> per(s.circles());
  for (std::size_t i = 0; i < s.circles(); ++i) {
    auto p = s.pieces(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (offsets_agree(p[j].power, 0, s.system()->alpha(i))) continue;
      per[i].push_back({p[j].start, s.piece_end(i, j)});
    }
  }
  return ArcSet::from_arcs(std::move(per));
}

}  // namespace fullgroup
