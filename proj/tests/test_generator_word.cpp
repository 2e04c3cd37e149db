#include <doctest.h>

#include "fullgroup/generator_word.hpp"
#include "support.hpp"

using namespace fullgroup;

TEST_CASE("canonical words") {
  GeneratorWord w{Token::rot(2), Token::rot(-2), Token::inv(), Token::inv(), Token::rot(3)};
  CHECK(w.to_string() == "T^3");
  CHECK(GeneratorWord{Token::inv(), Token::inv()}.size() == 0);
  CHECK(GeneratorWord().to_string() == "id");
  CHECK(GeneratorWord::parse("T^5 U T^-5").to_string() == "T^5 U T^-5");
  CHECK(GeneratorWord::parse("T*T*U").to_string() == "T^2 U");
  CHECK(GeneratorWord::parse("id") == GeneratorWord());
  CHECK(GeneratorWord::parse("T^5 U T^-5").letter_count() == 11);
  CHECK_THROWS_AS(GeneratorWord::parse("T^"), ParseError);
  CHECK_THROWS_AS(GeneratorWord::parse("X"), ParseError);
}

TEST_CASE("evaluation examples") {
  SystemPtr p = RotationSystem::standard();
  CHECK(evaluate(GeneratorWord(), p).is_identity());
  std::vector<Token> raw{Token::inv(), Token::inv()};
  CHECK(evaluate(std::span<const Token>(raw), p).is_identity());
  ArcSet base = ArcSet::arc(1, 0, CircleNumber(), p->beta());
  GeneratorWord conj{Token::rot(1), Token::inv(), Token::rot(-1)};
  CHECK(evaluate(conj, p) == make_involution(p, rotate(base, *p, 1)));
  CHECK(base_involution(p) == make_involution(p, base));

  SystemPtr p2 = RotationSystem::standard(2);
  ArcSet base2 = ArcSet::on_all_circles(2, CircleNumber(), p2->beta());
  CHECK(evaluate(conj, p2) == make_involution(p2, rotate(base2, *p2, 1)));
}

TEST_CASE("conjugate_word examples") {
  SystemPtr p = RotationSystem::standard();
  GeneratorWord u{Token::inv()};
  CHECK(conjugate_word(u, 0) == u);
  GeneratorWord c = conjugate_word(u, 1);
  CHECK(c == GeneratorWord{Token::rot(1), Token::inv(), Token::rot(-1)});
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    GeneratorWord w = testing_support::random_word(rng);
    CHECK(conjugate_word(conjugate_word(w, 2), -2) == w);
  }
}

TEST_CASE("evaluation is a homomorphism") {
  std::mt19937_64 rng(42);
  SystemPtr p = RotationSystem::standard(2);
  for (int i = 0; i < 60; ++i) {
    GeneratorWord a = testing_support::random_word(rng);
    GeneratorWord b = testing_support::random_word(rng);
    CHECK(evaluate(a * b, p) == compose(evaluate(a, p), evaluate(b, p)));
    int k = static_cast<int>(rng() % 101) - 50;
    CHECK(evaluate(conjugate_word(a, k), p) == compose(rotation(p, k), compose(evaluate(a, p), rotation(p, -k))));
    // Canonicalization never changes the evaluated map.
    std::vector<Token> raw(a.tokens().begin(), a.tokens().end());
    raw.push_back(Token::inv());
    raw.push_back(Token::inv());
    raw.push_back(Token::rot(3));
    raw.push_back(Token::rot(-3));
    CHECK(evaluate(std::span<const Token>(raw), p) == evaluate(a, p));
  }
}
