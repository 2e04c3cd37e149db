#pragma once

// Words over the generators T (with integer powers) and U = T_{n x [0, beta)}.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fullgroup/circle_maps.hpp"

namespace fullgroup {

struct Token {
  enum class Kind { rot, inv };

  Kind kind = Kind::rot;
  std::int64_t power = 0;  // meaningful for rot only

  static Token rot(std::int64_t m) { return {Kind::rot, m}; }
  static Token inv() { return {Kind::inv, 0}; }

  friend bool operator==(const Token&, const Token&) = default;
};

/// Run-length canonical word g_1 g_2 ... g_L, evaluated as g_1 ∘ g_2 ∘ ... ∘ g_L:
/// no Rot(0), no two adjacent Rot tokens, no adjacent U U.
class GeneratorWord {
 public:
  GeneratorWord() = default;
  explicit GeneratorWord(std::span<const Token> tokens);
  GeneratorWord(std::initializer_list<Token> tokens) : GeneratorWord(std::span(tokens.begin(), tokens.size())) {}

  /// "T^5 U T^-5", "T", "U", "id" (empty word). Tokens may also be joined by '*'.
  static GeneratorWord parse(std::string_view text);

  void append(const Token& token);
  GeneratorWord& operator*=(const GeneratorWord& rhs);
  friend GeneratorWord operator*(GeneratorWord a, const GeneratorWord& b) { return a *= b; }

  std::span<const Token> tokens() const { return tokens_; }
  bool empty() const { return tokens_.empty(); }
  /// Number of run-length tokens.
  std::size_t size() const { return tokens_.size(); }
  /// Length in letters T^{±1}, U.
  std::uint64_t letter_count() const;

  std::string to_string() const;

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;

 private:
  std::vector<Token> tokens_;
};

/// Folds compose over the tokens; Rot(m) is T^m and Inv is U.
PiecewiseRotation evaluate(std::span<const Token> tokens, SystemPtr system);
PiecewiseRotation evaluate(const GeneratorWord& word, SystemPtr system);

/// The base involution U = T_{n x [0, beta)}.
PiecewiseRotation base_involution(const SystemPtr& system);

/// T^k w T^-k.
GeneratorWord conjugate_word(const GeneratorWord& word, std::int64_t k);

}  // namespace fullgroup
