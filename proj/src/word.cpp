#include "onerel/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace onerel {

namespace {

// Free reduction with a stack; each letter is pushed or cancels the top.
std::vector<Letter> reduce_letters(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace

Word::Word(std::span<const Letter> letters) : letters_(reduce_letters(letters)) {}

Word Word::from_signed(std::initializer_list<int> values) {
  return from_signed(std::span<const int>(values.begin(), values.size()));
}

Word Word::from_signed(std::span<const int> values) {
  std::vector<Letter> letters;
  letters.reserve(values.size());
  for (int v : values) {
    if (v == 0) throw PreconditionError("generator index 0 is not a letter");
    letters.push_back(Letter::from_signed(v));
  }
  return Word(letters);
}

Word Word::generator(Generator g, int power) {
  if (g.index < 1) throw PreconditionError("generator index must be positive");
  std::vector<Letter> letters(static_cast<std::size_t>(std::abs(power)), Letter(g, power));
  return Word(Trusted{}, std::move(letters));
}

int Word::max_generator() const {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, l.index());
  return m;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  // shortlex
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

Word reduce(std::span<const Letter> letters) { return Word(Word::Trusted{}, reduce_letters(letters)); }

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(Word::Trusted{}, std::move(out));
}

Word concat(const Word& a, const Word& b) {
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() &&
         a.letters_[a.size() - 1 - cancel] == b.letters_[cancel].inverse()) {
    ++cancel;
  }
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.insert(out.end(), a.letters_.begin(), a.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.letters_.begin() + static_cast<std::ptrdiff_t>(cancel), b.letters_.end());
  return Word(Word::Trusted{}, std::move(out));
}

Word power(const Word& w, long long k) {
  Word base = k < 0 ? invert(w) : w;
  Word result;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) result = concat(result, base);
  return result;
}

Word rotate(const Word& w, std::size_t shift) {
  if (w.empty()) return w;
  shift %= w.size();
  std::vector<Letter> out(w.letters_);
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(shift), out.end());
  return Word(Word::Trusted{}, std::move(out));
}

Word subword(const Word& w, std::size_t pos, std::size_t len) {
  auto first = w.letters_.begin() + static_cast<std::ptrdiff_t>(pos);
  return Word(Word::Trusted{}, std::vector<Letter>(first, first + static_cast<std::ptrdiff_t>(len)));
}

CyclicReduction cyclically_reduce(const Word& w) {
  std::size_t k = 0;
  const std::size_t n = w.size();
  while (2 * k + 1 < n && w[k] == w[n - 1 - k].inverse()) ++k;
  return {subword(w, k, n - 2 * k), subword(w, 0, k)};
}

bool is_cyclically_reduced(const Word& w) { return w.size() < 2 || w.front() != w.back().inverse(); }

long long exponent_sum(const Word& w, Generator g) {
  long long s = 0;
  for (Letter l : w.letters()) {
    if (l.gen() == g) s += l.sign();
  }
  return s;
}

std::size_t occurrence_count(const Word& w, Generator g) {
  return static_cast<std::size_t>(
      std::count_if(w.letters().begin(), w.letters().end(), [g](Letter l) { return l.gen() == g; }));
}

std::vector<long long> exponent_vector(const Word& w, int rank) {
  std::vector<long long> e(static_cast<std::size_t>(std::max(rank, w.max_generator())), 0);
  for (Letter l : w.letters()) e[static_cast<std::size_t>(l.index() - 1)] += l.sign();
  e.resize(static_cast<std::size_t>(rank));
  return e;
}

int generator_support(const Word& w, int rank) {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(rank, w.max_generator()) + 1), false);
  int count = 0;
  for (Letter l : w.letters()) {
    if (!seen[static_cast<std::size_t>(l.index())]) {
      seen[static_cast<std::size_t>(l.index())] = true;
      ++count;
    }
  }
  return count;
}

Word least_rotation(const Word& w) {
  const std::size_t n = w.size();
  if (n < 2) return w;
  // Booth's algorithm over the doubled sequence.
  std::vector<Letter> s(w.letters().begin(), w.letters().end());
  s.insert(s.end(), w.letters().begin(), w.letters().end());
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    long i = f[j - k - 1];
    while (i != -1 && s[j] != s[k + static_cast<std::size_t>(i) + 1]) {
      if (s[j] < s[k + static_cast<std::size_t>(i) + 1]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && s[j] != s[k]) {
      if (s[j] < s[k]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return rotate(w, k);
}

CyclicWord::CyclicWord(const Word& w) {
  Word core = cyclically_reduce(w).core;
  Word a = least_rotation(core);
  Word b = least_rotation(invert(core));
  rep_ = b < a ? b : a;
}

bool is_conjugate(const Word& a, const Word& b) {
  Word ca = cyclically_reduce(a).core;
  Word cb = cyclically_reduce(b).core;
  if (ca.size() != cb.size()) return false;
  return least_rotation(ca) == least_rotation(cb);
}

// ---------------------------------------------------------------------------
// Text grammar

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, int rank, bool extended)
      : text_(text), rank_(rank), extended_(extended) {}

  std::vector<Letter> parse() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '1') {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (pos_ == text_.size()) return {};
      pos_ = save;
    }
    auto out = sequence(0);
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  std::vector<Letter> sequence(int depth) {
    std::vector<Letter> out;
    skip_ws();
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ')') {
        if (depth == 0) fail("unbalanced ')'");
        return out;
      }
      std::vector<Letter> term;
      if (c == '(') {
        if (!extended_) fail("parentheses are not allowed here");
        ++pos_;
        term = sequence(depth + 1);
        if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
        ++pos_;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        term.push_back(letter());
      } else {
        fail("unexpected character '" + std::string(1, c) + "'");
      }
      long long e = exponent();
      append_power(out, term, e);
      skip_ws();
    }
    if (depth > 0) fail("missing ')'");
    return out;
  }

  Letter letter() {
    char c = text_[pos_];
    std::size_t start = pos_;
    int index = 0;
    int sign = 1;
    if (c == 'x' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      long long v = digits();
      if (v < 1 || v > std::numeric_limits<int>::max()) fail_at("generator index out of range", start);
      index = static_cast<int>(v);
    } else if (std::islower(static_cast<unsigned char>(c))) {
      index = c - 'a' + 1;
      ++pos_;
    } else {
      index = c - 'A' + 1;
      sign = -1;
      ++pos_;
    }
    if (index > rank_) {
      fail_at("generator index " + std::to_string(index) + " exceeds rank " + std::to_string(rank_), start);
    }
    return Letter(Generator(index), sign);
  }

  long long exponent() {
    std::size_t save = pos_;
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '^') {
      pos_ = save;
      return 1;
    }
    ++pos_;
    skip_ws();
    int sign = 1;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      sign = -1;
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected exponent digits");
    return sign * digits();
  }

  long long digits() {
    long long v = 0;
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (std::numeric_limits<int>::max() - 9) / 10) fail_at("number too large", start);
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  static void append_power(std::vector<Letter>& out, const std::vector<Letter>& term, long long e) {
    const bool inv = e < 0;
    for (long long k = 0; k < (inv ? -e : e); ++k) {
      if (inv) {
        for (auto it = term.rbegin(); it != term.rend(); ++it) out.push_back(it->inverse());
      } else {
        out.insert(out.end(), term.begin(), term.end());
      }
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  std::string_view text_;
  int rank_;
  bool extended_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, int rank) {
  if (rank < 1) throw PreconditionError("rank must be positive");
  auto letters = WordParser(text, rank, false).parse();
  return reduce(letters);
}

Word parse_word_extended(std::string_view text, int rank) {
  if (rank < 1) throw PreconditionError("rank must be positive");
  auto letters = WordParser(text, rank, true).parse();
  return reduce(letters);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += ' ';
    out += 'x' + std::to_string(w[i].index());
    long long e = static_cast<long long>(j - i) * w[i].sign();
    if (e != 1) out += '^' + std::to_string(e);
    i = j;
  }
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l.value()));
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace onerel
