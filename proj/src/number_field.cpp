#include "fullgroup/number_field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

namespace fullgroup {

namespace {

constexpr unsigned kInitialSignBits = 32;

// floor(sqrt(d) * 2^bits), memoized per thread.
const Integer& scaled_isqrt(Radicand d, unsigned bits) {
  thread_local std::map<std::pair<Radicand, unsigned>, Integer> cache;
  auto key = std::make_pair(d, bits);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Integer v = Integer(static_cast<long>(d)) << (2 * bits);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return cache.emplace(key, std::move(r)).first->second;
}

// The number multiplied by a positive integer so that every coefficient is integral.
struct IntegerForm {
  Integer constant;
  std::vector<std::pair<Radicand, Integer>> terms;
  Integer denominator;  // > 0
};

IntegerForm integer_form(const CircleNumber& a) {
  IntegerForm f;
  Integer den = a.rational_part().get_den();
  for (const auto& t : a.surds()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  f.denominator = den;
  f.constant = a.rational_part().get_num() * (den / a.rational_part().get_den());
  f.terms.reserve(a.surds().size());
  for (const auto& t : a.surds()) {
    f.terms.emplace_back(t.radicand, t.coeff.get_num() * (den / t.coeff.get_den()));
  }
  return f;
}

// Integer bounds lo < value * denominator * 2^bits < hi (strict for irrational values).
void integer_bounds(const IntegerForm& f, unsigned bits, Integer& lo, Integer& hi) {
  lo = f.constant << bits;
  hi = lo;
  for (const auto& [d, n] : f.terms) {
    const Integer& s = scaled_isqrt(d, bits);
    if (n > 0) {
      lo += n * s;
      hi += n * (s + 1);
    } else {
      lo += n * (s + 1);
      hi += n * s;
    }
  }
}

Radicand squarefree_part(std::int64_t n, std::int64_t& square_root_of_rest) {
  square_root_of_rest = 1;
  Radicand d = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square_root_of_rest *= p;
    if (e % 2) d *= p;
  }
  return d * n;
}

Integer ceil_log2(const Rational& q) {
  // smallest b >= 0 with q <= 2^b
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (c <= 1) return 0;
  Integer m = c - 1;
  return Integer(static_cast<unsigned long>(mpz_sizeinbase(m.get_mpz_t(), 2)));
}

}  // namespace

bool is_squarefree(Radicand d) {
  if (d < 1) return false;
  for (Radicand p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

IrrationalBasis::IrrationalBasis(std::vector<Radicand> radicands) : radicands_(std::move(radicands)) {
  std::sort(radicands_.begin(), radicands_.end());
  if (std::adjacent_find(radicands_.begin(), radicands_.end()) != radicands_.end()) {
    throw std::invalid_argument("IrrationalBasis: duplicate radicand");
  }
  for (Radicand d : radicands_) {
    if (d < 2 || !is_squarefree(d)) {
      throw std::invalid_argument("IrrationalBasis: radicand " + std::to_string(d) + " is not squarefree and >= 2");
    }
  }
}

bool IrrationalBasis::contains(Radicand d) const {
  return std::binary_search(radicands_.begin(), radicands_.end(), d);
}

std::size_t IrrationalBasis::index_of(Radicand d) const {
  auto it = std::lower_bound(radicands_.begin(), radicands_.end(), d);
  if (it == radicands_.end() || *it != d) throw std::out_of_range("radicand not in basis");
  return static_cast<std::size_t>(it - radicands_.begin());
}

CircleNumber CircleNumber::sqrt_of(std::int64_t n) {
  if (n < 0) throw std::domain_error("sqrt of a negative number");
  if (n == 0) return {};
  std::int64_t outer = 1;
  Radicand d = squarefree_part(n, outer);
  CircleNumber r;
  if (d == 1) {
    r.rational_ = static_cast<long>(outer);
  } else {
    r.surds_.push_back({d, Rational(static_cast<long>(outer))});
  }
  return r;
}

Rational CircleNumber::coeff(Radicand d) const {
  auto it = std::lower_bound(surds_.begin(), surds_.end(), d,
                             [](const SurdTerm& t, Radicand r) { return t.radicand < r; });
  if (it != surds_.end() && it->radicand == d) return it->coeff;
  return 0;
}

CircleNumber CircleNumber::operator-() const {
  CircleNumber r = *this;
  r.rational_ = -r.rational_;
  for (auto& t : r.surds_) t.coeff = -t.coeff;
  return r;
}

CircleNumber& CircleNumber::operator+=(const CircleNumber& rhs) {
  rational_ += rhs.rational_;
  if (rhs.surds_.empty()) return *this;
  std::vector<SurdTerm> merged;
  merged.reserve(surds_.size() + rhs.surds_.size());
  auto a = surds_.begin();
  auto b = rhs.surds_.begin();
  while (a != surds_.end() || b != rhs.surds_.end()) {
    if (b == rhs.surds_.end() || (a != surds_.end() && a->radicand < b->radicand)) {
      merged.push_back(std::move(*a++));
    } else if (a == surds_.end() || b->radicand < a->radicand) {
      merged.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (c != 0) merged.push_back({a->radicand, std::move(c)});
      ++a;
      ++b;
    }
  }
  surds_ = std::move(merged);
  return *this;
}

CircleNumber& CircleNumber::operator-=(const CircleNumber& rhs) { return *this += -rhs; }

CircleNumber& CircleNumber::operator*=(const Rational& q) {
  if (q == 0) {
    rational_ = 0;
    surds_.clear();
    return *this;
  }
  Rational factor(q);
  factor.canonicalize();
  rational_ *= factor;
  for (auto& t : surds_) t.coeff *= factor;
  return *this;
}

std::strong_ordering operator<=>(const CircleNumber& a, const CircleNumber& b) {
  if (a.is_rational() && b.is_rational()) {
    int c = cmp(a.rational_part(), b.rational_part());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  switch (sign(a - b)) {
    case Sign::negative: return std::strong_ordering::less;
    case Sign::positive: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw ParseError("empty rational");
  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  auto read_decimal = [&](std::string_view part) -> Rational {
    if (part.empty()) throw ParseError("missing digits in '" + std::string(text) + "'");
    auto dot = part.find('.');
    std::string digits(part.substr(0, dot));
    std::string frac = dot == std::string_view::npos ? "" : std::string(part.substr(dot + 1));
    if (digits.empty() && frac.empty()) throw ParseError("missing digits in '" + std::string(text) + "'");
    for (char c : digits + frac) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad number '" + std::string(text) + "'");
    }
    Integer num(digits + frac, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
  std::string_view body(s);
  body.remove_prefix(pos);
  auto slash = body.find('/');
  Rational q;
  if (slash == std::string_view::npos) {
    q = read_decimal(body);
  } else {
    Rational num = read_decimal(body.substr(0, slash));
    Rational den = read_decimal(body.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    q = num / den;
  }
  return negative ? Rational(-q) : q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

namespace {

class NumberParser {
 public:
  explicit NumberParser(std::string_view text) : text_(text) {}

  CircleNumber parse() {
    CircleNumber total;
    skip_ws();
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) {
        if (first) fail("empty expression");
        break;
      }
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      CircleNumber t = term();
      total += negative ? -t : t;
      first = false;
    }
    return total;
  }

 private:
  CircleNumber term() {
    Rational coeff = 1;
    std::int64_t radicand = 1;
    bool expect_factor = true;
    while (true) {
      skip_ws();
      if (expect_factor) {
        if (starts_with("sqrt")) {
          pos_ += 4;
          skip_ws();
          expect('(');
          skip_ws();
          std::size_t start = pos_;
          while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
          if (start == pos_) fail("expected integer radicand");
          std::int64_t n = std::stoll(std::string(text_.substr(start, pos_ - start)));
          skip_ws();
          expect(')');
          CircleNumber root = CircleNumber::sqrt_of(n);
          if (root.is_rational()) {
            coeff *= root.rational_part();
          } else {
            coeff *= root.surds()[0].coeff;
            std::int64_t outer = 1;
            radicand = squarefree_part(radicand * root.surds()[0].radicand, outer);
            coeff *= Rational(static_cast<long>(outer));
          }
        } else {
          coeff *= literal();
        }
        expect_factor = false;
        continue;
      }
      if (!at_end() && peek() == '*') {
        ++pos_;
        expect_factor = true;
      } else if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        Rational d = literal();
        if (d == 0) fail("division by zero");
        coeff /= d;
      } else {
        break;
      }
    }
    if (radicand == 1) return CircleNumber(coeff);
    return CircleNumber::sqrt_of(radicand) * coeff;
  }

  Rational literal() {
    std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    if (start == pos_) fail("expected a number");
    return parse_rational(text_.substr(start, pos_ - start));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse number '" + std::string(text_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CircleNumber CircleNumber::parse(std::string_view text) { return NumberParser(text).parse(); }

std::string CircleNumber::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  auto emit_sign = [&](bool negative) {
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
  };
  for (const auto& t : surds_) {
    bool negative = t.coeff < 0;
    Rational mag = abs(t.coeff);
    emit_sign(negative);
    if (mag != 1) out += rational_to_string(mag) + "*";
    out += "sqrt(" + std::to_string(t.radicand) + ")";
  }
  if (rational_ != 0) {
    emit_sign(rational_ < 0);
    out += rational_to_string(abs(rational_));
  }
  return out;
}

double CircleNumber::to_double() const {
  double v = rational_.get_d();
  for (const auto& t : surds_) v += t.coeff.get_d() * std::sqrt(static_cast<double>(t.radicand));
  return v;
}

std::ostream& operator<<(std::ostream& os, const CircleNumber& a) { return os << a.to_string(); }

CircleNumber add(const CircleNumber& a, const CircleNumber& b) { return a + b; }
CircleNumber sub(const CircleNumber& a, const CircleNumber& b) { return a - b; }
CircleNumber negate(const CircleNumber& a) { return -a; }
CircleNumber scale(const CircleNumber& a, const Rational& q) { return a * q; }
bool is_zero(const CircleNumber& a) { return a.is_zero(); }

Sign sign(const CircleNumber& a) {
  if (a.is_rational()) {
    int s = sgn(a.rational_part());
    return s < 0 ? Sign::negative : s > 0 ? Sign::positive : Sign::zero;
  }
  IntegerForm f = integer_form(a);
  Integer lo, hi;
  for (unsigned bits = kInitialSignBits;; bits *= 2) {
    integer_bounds(f, bits, lo, hi);
    if (lo >= 0) return Sign::positive;
    if (hi <= 0) return Sign::negative;
  }
}

RationalInterval enclose(const CircleNumber& a, unsigned precision) {
  if (a.is_rational()) return {a.rational_part(), a.rational_part()};
  IntegerForm f = integer_form(a);
  // width = sum |n_j| / (den * 2^bits) <= 2^-precision
  Rational mass = 0;
  for (const auto& t : a.surds()) mass += abs(t.coeff);
  unsigned bits = precision + static_cast<unsigned>(ceil_log2(mass).get_ui());
  Integer lo, hi;
  integer_bounds(f, bits, lo, hi);
  Integer scale = f.denominator << bits;
  Rational l(lo, scale), h(hi, scale);
  l.canonicalize();
  h.canonicalize();
  return {l, h};
}

Integer floor(const CircleNumber& a) {
  if (a.is_rational()) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), a.rational_part().get_num_mpz_t(), a.rational_part().get_den_mpz_t());
    return r;
  }
  IntegerForm f = integer_form(a);
  Integer lo, hi, fl, fh;
  for (unsigned bits = kInitialSignBits;; bits *= 2) {
    integer_bounds(f, bits, lo, hi);
    Integer scale = f.denominator << bits;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_mpz_t(), scale.get_mpz_t());
    mpz_fdiv_q(fh.get_mpz_t(), hi.get_mpz_t(), scale.get_mpz_t());
    // lo < a*scale < hi; with hi itself possibly a multiple of scale
    if (fl == fh || (fh == fl + 1 && hi == fh * scale)) return fl;
  }
}

CircleNumber reduce_mod1(const CircleNumber& a) {
  Integer k = floor(a);
  if (k == 0) return a;
  return a - CircleNumber(Rational(k));
}

CircleNumber circle_distance(const CircleNumber& a) {
  CircleNumber f = reduce_mod1(a);
  CircleNumber g = CircleNumber(1) - f;
  return f <= g ? f : g;
}

CircleNumber abs(const CircleNumber& a) { return sign(a) == Sign::negative ? -a : a; }
const CircleNumber& min(const CircleNumber& a, const CircleNumber& b) { return b < a ? b : a; }
const CircleNumber& max(const CircleNumber& a, const CircleNumber& b) { return a < b ? b : a; }

IrrationalBasis basis_of(std::span<const CircleNumber> numbers) {
  std::vector<Radicand> ds;
  for (const auto& x : numbers) {
    for (const auto& t : x.surds()) ds.push_back(t.radicand);
  }
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return IrrationalBasis(std::move(ds));
}

bool surd_parts_independent(std::span<const CircleNumber> numbers) {
  IrrationalBasis basis = basis_of(numbers);
  const std::size_t rows = numbers.size();
  const std::size_t cols = basis.size();
  if (rows > cols) return false;
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (const auto& t : numbers[r].surds()) m[r][basis.index_of(t.radicand)] = t.coeff;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rational factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank == rows;
}

std::string to_decimal(const CircleNumber& a, unsigned digits) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits);
  Integer f = floor(a * Rational(p));
  bool negative = f < 0;
  Integer mag = negative ? Integer(-f) : f;
  std::string s = mag.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = negative ? "-" : "";
  out += s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  return out;
}

}  // namespace fullgroup
