#include "fullgroup/generator_word.hpp"

#include <cctype>
#include <cstdlib>

namespace fullgroup {

GeneratorWord::GeneratorWord(std::span<const Token> tokens) {
  for (const auto& t : tokens) append(t);
}

void GeneratorWord::append(const Token& token) {
  if (token.kind == Token::Kind::rot && token.power == 0) return;
  tokens_.push_back(token);
  // Collapse from the back until the tail is canonical.
  while (tokens_.size() >= 2) {
    Token& a = tokens_[tokens_.size() - 2];
    const Token& b = tokens_.back();
    if (a.kind == Token::Kind::rot && b.kind == Token::Kind::rot) {
      a.power += b.power;
      tokens_.pop_back();
      if (tokens_.back().power == 0) tokens_.pop_back();
    } else if (a.kind == Token::Kind::inv && b.kind == Token::Kind::inv) {
      tokens_.pop_back();
      tokens_.pop_back();
    } else {
      break;
    }
  }
}

GeneratorWord& GeneratorWord::operator*=(const GeneratorWord& rhs) {
  for (const auto& t : rhs.tokens_) append(t);
  return *this;
}

std::uint64_t GeneratorWord::letter_count() const {
  std::uint64_t n = 0;
  for (const auto& t : tokens_) n += t.kind == Token::Kind::inv ? 1 : static_cast<std::uint64_t>(std::llabs(t.power));
  return n;
}

std::string GeneratorWord::to_string() const {
  if (tokens_.empty()) return "id";
  std::string out;
  for (const auto& t : tokens_) {
    if (!out.empty()) out += " ";
    if (t.kind == Token::Kind::inv) {
      out += "U";
    } else if (t.power == 1) {
      out += "T";
    } else {
      out += "T^" + std::to_string(t.power);
    }
  }
  return out;
}

GeneratorWord GeneratorWord::parse(std::string_view text) {
  GeneratorWord w;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("cannot parse word '" + std::string(text) + "': " + what);
  };
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++pos;
    } else if (c == 'U') {
      w.append(Token::inv());
      ++pos;
    } else if (text.substr(pos).starts_with("id")) {
      pos += 2;
    } else if (c == 'T') {
      ++pos;
      std::int64_t m = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        std::string digits(text.substr(start, pos - start));
        if (digits.empty() || digits == "-" || digits == "+") fail("missing exponent");
        m = std::stoll(digits);
      }
      w.append(Token::rot(m));
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  return w;
}

PiecewiseRotation base_involution(const SystemPtr& system) {
  return make_involution(system, ArcSet::on_all_circles(system->circles(), CircleNumber(), system->beta()));
}

PiecewiseRotation evaluate(std::span<const Token> tokens, SystemPtr system) {
  PiecewiseRotation u = base_involution(system);
  PiecewiseRotation result = PiecewiseRotation::identity(system);
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (it->kind == Token::Kind::rot) {
      result = rotate_then(it->power, result);
    } else {
      result = compose(u, result);
    }
  }
  return result;
}

PiecewiseRotation evaluate(const GeneratorWord& word, SystemPtr system) { return evaluate(word.tokens(), std::move(system)); }

GeneratorWord conjugate_word(const GeneratorWord& word, std::int64_t k) {
  GeneratorWord out;
  out.append(Token::rot(k));
  out *= word;
  out.append(Token::rot(-k));
  return out;
}

}  // namespace fullgroup
