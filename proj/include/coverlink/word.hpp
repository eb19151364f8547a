#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coverlink/errors.hpp"

namespace coverlink {

struct Letter {
  std::string generator;
  long exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

// A freely reduced word in named generators. Adjacent letters always carry
// distinct generator names and no exponent is zero.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}
  explicit Word(std::vector<Letter> letters) {
    for (auto& l : letters) push(std::move(l));
  }

  static Word generator(std::string name, long exponent = 1) { return Word({Letter{std::move(name), exponent}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  // Total number of generator symbols, i.e. the sum of |exponent|.
  std::size_t length() const {
    std::size_t n = 0;
    for (const auto& l : letters_) n += static_cast<std::size_t>(l.exponent < 0 ? -l.exponent : l.exponent);
    return n;
  }

  Word inverse() const {
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push(Letter{it->generator, -it->exponent});
    return w;
  }

  Word pow(long k) const {
    Word base = k < 0 ? inverse() : *this;
    Word out;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
    return out;
  }

  friend Word operator*(Word a, const Word& b) {
    for (const auto& l : b.letters_) a.push(l);
    return a;
  }

  // Exponent sum of one generator.
  long exponent_sum(std::string_view name) const {
    long s = 0;
    for (const auto& l : letters_)
      if (l.generator == name) s += l.exponent;
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    const char* sep = "";
    for (const auto& l : letters_) {
      os << sep << l.generator;
      if (l.exponent != 1) os << '^' << l.exponent;
      sep = " ";
    }
    return os.str();
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  void push(Letter l) {
    if (l.exponent == 0) return;
    if (!letters_.empty() && letters_.back().generator == l.generator) {
      letters_.back().exponent += l.exponent;
      if (letters_.back().exponent == 0) letters_.pop_back();
      return;
    }
    letters_.push_back(std::move(l));
  }

  std::vector<Letter> letters_;
};

namespace detail {

inline bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '\'' || c == '.';
}

inline Letter parse_token(std::string_view tok) {
  const auto caret = tok.find('^');
  std::string_view name = tok.substr(0, caret);
  if (name.empty()) throw ParseError("empty generator name in token '" + std::string(tok) + "'");
  for (char c : name)
    if (!is_name_char(c)) throw ParseError("bad character in generator name '" + std::string(name) + "'");
  long exponent = 1;
  if (caret != std::string_view::npos) {
    std::string_view num = tok.substr(caret + 1);
    if (!num.empty() && num.front() == '+') num.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), exponent);
    if (ec != std::errc() || ptr != num.data() + num.size() || num.empty())
      throw ParseError("bad exponent in token '" + std::string(tok) + "'");
    if (exponent == 0) throw ParseError("zero exponent in token '" + std::string(tok) + "'");
  }
  return Letter{std::string(name), exponent};
}

}  // namespace detail

// Parses whitespace-separated tokens `name` or `name^k` (k a nonzero integer).
inline Word parse_word(std::string_view text) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) letters.push_back(detail::parse_token(tok));
  return Word(std::move(letters));
}

}  // namespace coverlink
