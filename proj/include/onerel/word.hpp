#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace onerel {

/// Raised when text does not conform to a word or presentation grammar.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Raised when an operation is called outside its domain (rank mismatch,
/// non-surjective character, wrong relator shape, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// 1-based index of a free generator.
struct Generator {
  int index = 1;

  constexpr explicit Generator(int i) : index(i) {}
  friend constexpr auto operator<=>(const Generator&, const Generator&) = default;
};

/// x_i^{+1} or x_i^{-1}, packed as a signed integer (+i / -i).
class Letter {
 public:
  constexpr Letter(Generator g, int sign) : value_(sign > 0 ? g.index : -g.index) {}
  static constexpr Letter from_signed(int v) { return Letter(v); }

  constexpr Generator gen() const { return Generator(value_ > 0 ? value_ : -value_); }
  constexpr int index() const { return value_ > 0 ? value_ : -value_; }
  constexpr int sign() const { return value_ > 0 ? 1 : -1; }
  constexpr int value() const { return value_; }
  constexpr Letter inverse() const { return Letter(-value_); }

  friend constexpr bool operator==(Letter, Letter) = default;

  /// Total order on letters: by generator index, then +1 before -1.
  friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) {
    if (auto c = a.index() <=> b.index(); c != 0) return c;
    return b.value_ <=> a.value_;
  }

 private:
  constexpr explicit Letter(int v) : value_(v) {}
  int value_;
};

/// Freely reduced element of a free group. Immutable value type; the empty
/// word is the identity.
class Word {
 public:
  Word() = default;

  /// Freely reduces the given letters.
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters)
      : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

  /// Word from signed integers (+i for x_i, -i for x_i^-1), reduced.
  static Word from_signed(std::initializer_list<int> values);
  static Word from_signed(std::span<const int> values);
  static Word generator(Generator g, int power = 1);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  /// Largest generator index that occurs, 0 for the empty word.
  int max_generator() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  struct Trusted {};
  Word(Trusted, std::vector<Letter> letters) : letters_(std::move(letters)) {}
  friend Word concat(const Word&, const Word&);
  friend Word invert(const Word&);
  friend Word reduce(std::span<const Letter>);
  friend Word rotate(const Word&, std::size_t);
  friend Word subword(const Word&, std::size_t, std::size_t);

  std::vector<Letter> letters_;
};

Word reduce(std::span<const Letter> letters);
Word invert(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, long long k);
inline Word operator*(const Word& a, const Word& b) { return concat(a, b); }

/// Rotation by `shift` positions; only meaningful for cyclically reduced words.
Word rotate(const Word& w, std::size_t shift);
Word subword(const Word& w, std::size_t pos, std::size_t len);

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicReduction cyclically_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

long long exponent_sum(const Word& w, Generator g);
std::size_t occurrence_count(const Word& w, Generator g);
/// Exponent sums of x_1..x_rank.
std::vector<long long> exponent_vector(const Word& w, int rank);
/// Number of distinct generators that occur in w.
int generator_support(const Word& w, int rank);

/// Canonical representative of the class of w under conjugation and
/// inversion: the least rotation of the cyclic reduction of w or of its
/// inverse.
class CyclicWord {
 public:
  explicit CyclicWord(const Word& w);
  const Word& rep() const { return rep_; }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord& a, const CyclicWord& b) { return a.rep_ <=> b.rep_; }

 private:
  Word rep_;
};

inline CyclicWord canonical_cyclic(const Word& w) { return CyclicWord(w); }

/// Least rotation of a cyclically reduced word (no inversion).
Word least_rotation(const Word& w);
bool is_conjugate(const Word& a, const Word& b);

/// Word grammar: terms `x<k>` with optional `^[-]<n>`, or compact letters
/// a-z (generators 1-26) and A-Z (their inverses). A lone "1" is the identity.
Word parse_word(std::string_view text, int rank);
/// As parse_word, additionally accepting parenthesised subwords with integer
/// powers, e.g. "(x1^3 x2 x1^2)^3".
Word parse_word_extended(std::string_view text, int rank);

/// Run-length formatted text, e.g. "x1^2 x2^-3"; the identity prints as "1".
std::string to_string(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace onerel

template <>
struct std::hash<onerel::Word> : onerel::WordHash {};
