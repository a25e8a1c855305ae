#pragma once

#include <optional>
#include <vector>

#include "onerel/word.hpp"

namespace onerel {

/// Substitution map x_i -> images[i-1] on the free group of the given rank.
class Endomorphism {
 public:
  Endomorphism(int rank, std::vector<Word> images);
  static Endomorphism identity(int rank);

  int rank() const { return rank_; }
  /// Rank of the target free group (largest generator used by an image, at
  /// least rank()).
  int target_rank() const { return target_rank_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(Generator g) const { return images_.at(static_cast<std::size_t>(g.index - 1)); }

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  int rank_;
  int target_rank_;
  std::vector<Word> images_;
};

/// Homomorphic substitution; throws PreconditionError if w uses a generator
/// beyond e.rank().
Word apply(const Endomorphism& e, const Word& w);
/// (a o b)(x) = a(b(x)).
Endomorphism compose(const Endomorphism& a, const Endomorphism& b);

/// Elementary Nielsen move. `multiply` sends x_target to x_target x_by^power
/// (power = +1 or -1); `invert` sends x_target to its inverse.
struct NielsenMove {
  enum class Kind { multiply, invert };
  Kind kind = Kind::invert;
  int target = 1;
  int by = 0;
  int power = 1;

  static NielsenMove multiply(int target, int by, int power = 1) { return {Kind::multiply, target, by, power}; }
  static NielsenMove invert(int target) { return {Kind::invert, target, 0, 1}; }
  NielsenMove inverse() const { return kind == Kind::invert ? *this : multiply(target, by, -power); }

  friend bool operator==(const NielsenMove&, const NielsenMove&) = default;
};

/// Free-group automorphism carried as a product of Nielsen moves together
/// with its forward and backward substitution maps.
///
/// The move list m_1, ..., m_k denotes m_1 o m_2 o ... o m_k. Replaying the
/// moves in order on the tuple (x_1, ..., x_n), with `multiply` replacing
/// entry r by entry_r * entry_s^p, yields the forward images.
class Automorphism {
 public:
  static Automorphism identity(int rank);
  static Automorphism from_moves(int rank, std::vector<NielsenMove> moves);
  /// Decomposes an image tuple into Nielsen moves by greedy Nielsen
  /// reduction; throws PreconditionError if the images do not form a basis
  /// that the reduction can resolve.
  static Automorphism from_images(int rank, const std::vector<Word>& images);

  int rank() const { return forward_.rank(); }
  const Endomorphism& forward() const { return forward_; }
  const Endomorphism& backward() const { return backward_; }
  const std::vector<NielsenMove>& moves() const { return moves_; }

  Word operator()(const Word& w) const { return apply(forward_, w); }
  Automorphism inverse() const;
  bool is_identity() const;

  /// forward o backward and backward o forward fix every generator.
  bool verify() const;

 private:
  Automorphism(int rank, std::vector<NielsenMove> moves);
  std::vector<NielsenMove> moves_;
  Endomorphism forward_;
  Endomorphism backward_;
};

Word apply(const Automorphism& a, const Word& w);
/// (a o b)(w) = a(b(w)); ranks must agree.
Automorphism compose(const Automorphism& a, const Automorphism& b);

/// tau_rs: x_r -> x_r x_s, all other generators fixed.
Automorphism nielsen_multiply(int rank, Generator r, Generator s);
/// tau_i: x_i -> x_i^-1, all other generators fixed.
Automorphism nielsen_invert(int rank, Generator i);

/// Whitehead automorphism (A, a). `in_set[v]` marks letter vertex v (see
/// letter_vertex) as a member of A; a must be in A and a^-1 must not.
Automorphism whitehead_automorphism(int rank, const std::vector<bool>& in_set, Letter multiplier);
/// Inner automorphism x -> c^-1 x c.
Automorphism conjugation(int rank, const Word& c);

/// Vertex index of a letter in the Whitehead graph: 2(i-1) for x_i, 2(i-1)+1
/// for x_i^-1.
inline int letter_vertex(Letter l) { return 2 * (l.index() - 1) + (l.sign() > 0 ? 0 : 1); }

/// Homomorphism F_rank -> Z given by its values on the generators.
class IntegralCharacter {
 public:
  explicit IntegralCharacter(std::vector<long long> values);
  static IntegralCharacter dual(int rank, Generator g);

  int rank() const { return static_cast<int>(values_.size()); }
  const std::vector<long long>& values() const { return values_; }
  long long value(Generator g) const { return values_.at(static_cast<std::size_t>(g.index - 1)); }
  /// Onto Z iff the gcd of the values is 1.
  bool is_surjective() const { return surjective_; }
  /// Index of the generator if this is +-(dual of one generator).
  std::optional<Generator> unit_generator() const;

  friend bool operator==(const IntegralCharacter& a, const IntegralCharacter& b) { return a.values_ == b.values_; }

 private:
  std::vector<long long> values_;
  bool surjective_;
};

long long character_apply(const IntegralCharacter& phi, const Word& w);
/// The character phi o a, i.e. x_j -> phi(a(x_j)).
IntegralCharacter pullback(const IntegralCharacter& phi, const Automorphism& a);

/// Automorphism theta with phi(theta(x_j)) = 0 for j < rank and
/// phi(theta(x_rank)) = 1, built by Euclidean reduction on the character
/// values.
Automorphism normalize_character(const IntegralCharacter& phi);

struct WhiteheadResult {
  Word minimal;
  Automorphism automorphism;  // automorphism(w) == minimal
};

/// Whitehead peak reduction: repeatedly applies the first length-reducing
/// Whitehead automorphism (multipliers in generator order, x_i before
/// x_i^-1; the set A is a minimum cut of the Whitehead graph) until none
/// exists. The result is cyclically reduced and has minimal length in the
/// automorphic orbit of w. rank = 0 means w.max_generator() (at least 1).
WhiteheadResult whitehead_minimize(const Word& w, int rank = 0);

/// As whitehead_minimize, restricted to Whitehead automorphisms that fix the
/// character dual to `stable`. Minimises length; the count of non-stable
/// letters never increases.
WhiteheadResult whitehead_minimize_fixing(const Word& w, int rank, Generator stable);

bool is_primitive(const Word& w, int rank = 0);

struct FreeFactor {
  Automorphism automorphism;
  Generator omitted;
};

/// Automorphism carrying w into the free factor spanned by all generators
/// but `omitted`, if w lies in a proper free factor.
std::optional<FreeFactor> proper_free_factor(const Word& w, int rank);

}  // namespace onerel
