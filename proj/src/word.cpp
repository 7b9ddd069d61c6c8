#include "rearr/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace rearr {

Word Word::from_letters(std::string_view letters) {
  if (letters.empty()) throw WordSyntaxError("empty word");
  std::vector<Block> blocks;
  Block cur;
  bool in_b = false;
  for (char c : letters) {
    if (c == 'A') {
      if (in_b) {
        blocks.push_back(cur);
        cur = Block{};
        in_b = false;
      }
      ++cur.a;
    } else if (c == 'B') {
      in_b = true;
      ++cur.b;
    } else {
      throw WordSyntaxError(std::string("unexpected character '") + c + "' in word");
    }
  }
  blocks.push_back(cur);
  return Word(std::move(blocks));
}

Word Word::from_blocks(const std::vector<Block>& blocks) {
  std::string letters;
  for (const auto& blk : blocks) {
    letters.append(blk.a, 'A');
    letters.append(blk.b, 'B');
  }
  if (letters.empty()) throw WordSyntaxError("empty word");
  return from_letters(letters);
}

unsigned Word::total_a() const {
  unsigned s = 0;
  for (const auto& blk : blocks_) s += blk.a;
  return s;
}

unsigned Word::total_b() const {
  unsigned s = 0;
  for (const auto& blk : blocks_) s += blk.b;
  return s;
}

std::string Word::letters() const {
  std::string out;
  for (const auto& blk : blocks_) {
    out.append(blk.a, 'A');
    out.append(blk.b, 'B');
  }
  return out;
}

std::string Word::to_string() const {
  std::string out;
  auto emit = [&out](char letter, unsigned k) {
    if (k == 0) return;
    if (!out.empty()) out += ' ';
    out += letter;
    out += '^';
    out += std::to_string(k);
  };
  for (const auto& blk : blocks_) {
    emit('A', blk.a);
    emit('B', blk.b);
  }
  return out;
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

Word parse_word(std::string_view text, std::size_t max_length) {
  auto tokens = split_ws(text);
  if (tokens.empty()) throw WordSyntaxError("empty word");

  std::string letters;
  const bool block_grammar = tokens.size() > 1 || tokens[0].find('^') != std::string_view::npos;
  if (!block_grammar) {
    letters = std::string(tokens[0]);
  } else {
    char prev = 0;
    for (auto tok : tokens) {
      if (tok.size() < 3 || (tok[0] != 'A' && tok[0] != 'B') || tok[1] != '^') {
        throw WordSyntaxError("malformed block token '" + std::string(tok) + "'");
      }
      if (tok[0] == prev) {
        throw WordSyntaxError("block tokens must alternate letters near '" + std::string(tok) + "'");
      }
      auto digits = tok.substr(2);
      unsigned long k = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw WordSyntaxError("bad exponent in '" + std::string(tok) + "'");
      }
      if (k == 0) throw WordSyntaxError("exponent must be >= 1 in '" + std::string(tok) + "'");
      if (k > max_length || letters.size() + k > max_length) {
        throw WordSyntaxError("word longer than the configured maximum of " +
                              std::to_string(max_length));
      }
      letters.append(k, tok[0]);
      prev = tok[0];
    }
  }
  if (letters.size() > max_length) {
    throw WordSyntaxError("word longer than the configured maximum of " + std::to_string(max_length));
  }
  return Word::from_letters(letters);
}

Word ordered(const Word& word) {
  return Word::from_blocks({Block{word.total_a(), word.total_b()}});
}

bool is_ordered(const Word& word) { return word.blocks().size() == 1; }

Word transpose_word(const Word& word) {
  auto s = word.letters();
  std::reverse(s.begin(), s.end());
  return Word::from_letters(s);
}

bool is_transpose_of_ordered(const Word& word) {
  return is_ordered(word) || is_ordered(transpose_word(word));
}

std::vector<Word> enumerate_words(std::size_t max_length) {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::string s(len, 'A');
    for (unsigned long long bits = 0; bits < (1ULL << len); ++bits) {
      // Bit (len-1-i) selects letter i so iteration order is lexicographic.
      for (std::size_t i = 0; i < len; ++i) s[i] = ((bits >> (len - 1 - i)) & 1ULL) ? 'B' : 'A';
      out.push_back(Word::from_letters(s));
    }
  }
  return out;
}

}  // namespace rearr
