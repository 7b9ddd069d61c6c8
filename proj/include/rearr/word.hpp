#pragma once

#include <cstddef>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rearr {

inline constexpr std::size_t kDefaultMaxWordLength = 64;

class WordSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One factor A^a B^b of a word.
struct Block {
  unsigned a = 0;
  unsigned b = 0;
  auto operator<=>(const Block&) const = default;
};

/// A product A^{m_1} B^{n_1} ... A^{m_s} B^{n_s} in canonical form.
///
/// Canonical means adjacent runs of the same letter are merged and only the
/// leading A-exponent and the trailing B-exponent may be zero. Every nonempty
/// string over {A, B} has exactly one canonical word, so words compare equal
/// iff their letter strings do.
class Word {
 public:
  /// Builds the canonical word spelled by `letters` (must be nonempty, only
  /// 'A' and 'B').
  static Word from_letters(std::string_view letters);

  /// Canonicalizes an arbitrary block list (zero exponents anywhere are
  /// dropped and neighbouring runs merged). Throws if the result is empty.
  static Word from_blocks(const std::vector<Block>& blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  unsigned total_a() const;
  unsigned total_b() const;
  std::size_t length() const { return total_a() + total_b(); }

  std::string letters() const;
  /// Block grammar, e.g. "A^2 B^1 A^1 B^2".
  std::string to_string() const;

  bool operator==(const Word&) const = default;

 private:
  explicit Word(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}
  std::vector<Block> blocks_;
};

/// Accepts either a letter string ("AABABB") or whitespace-separated
/// alternating power tokens ("A^2 B^1 A^1 B^2"). Throws WordSyntaxError.
Word parse_word(std::string_view text,
                std::size_t max_length = kDefaultMaxWordLength);

/// The single-block word A^m B^n with the same letter counts.
Word ordered(const Word& word);

bool is_ordered(const Word& word);

/// Reversal of the letter string; for symmetric A, B this is the word of W^T.
Word transpose_word(const Word& word);

/// True when the word is A^m B^n or B^n A^m. Both sides of the rearrangement
/// inequality then have the same norm for every pair of symmetric matrices.
bool is_transpose_of_ordered(const Word& word);

/// Every canonical word of length 1..max_length, sorted by length then
/// lexicographically on letters.
std::vector<Word> enumerate_words(std::size_t max_length);

}  // namespace rearr
