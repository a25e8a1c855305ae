#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "onerel/automorphism.hpp"
#include "onerel/word.hpp"

namespace onerel {

/// <x_1, ..., x_n | w> with w stored cyclically reduced. An empty relator
/// presents the free group of rank n.
class OneRelatorPresentation {
 public:
  OneRelatorPresentation(int rank, const Word& relator, std::string label = {});

  int rank() const { return rank_; }
  const Word& relator() const { return relator_; }
  const std::string& label() const { return label_; }

  friend bool operator==(const OneRelatorPresentation& a, const OneRelatorPresentation& b) {
    return a.rank_ == b.rank_ && a.relator_ == b.relator_;
  }

 private:
  int rank_;
  Word relator_;
  std::string label_;
};

/// Finite presentation with any number of relators. Only produced by the
/// stabilize / destabilize moves; analyses take one-relator presentations.
struct Presentation {
  int rank = 0;
  std::vector<Word> relators;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

Presentation to_presentation(const OneRelatorPresentation& p);
/// The one-relator form, if at most one relator is non-trivial.
std::optional<OneRelatorPresentation> as_one_relator(const Presentation& p);

/// Adds x_{n+1} together with the relator x_{n+1}.
Presentation stabilize(const Presentation& p);
Presentation stabilize(const OneRelatorPresentation& p);

/// Removes generator g using relator `relator_index` (0-based), which must
/// be a rotation of g^-1 u or of its inverse with u free of g. Occurrences
/// of g elsewhere are replaced by u and higher generators shift down.
Presentation destabilize(const Presentation& p, Generator g, std::size_t relator_index);

/// Relator replaced by the cyclic reduction of theta(relator).
OneRelatorPresentation apply_automorphism(const OneRelatorPresentation& p, const Automorphism& theta);

/// Same normal closure in the free group: conjugate to each other or to
/// each other's inverse.
bool relators_equivalent(const Word& a, const Word& b);

/// Z^free_rank x Z/torsion.
struct AbelianInvariants {
  int free_rank = 0;
  std::optional<long long> torsion;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

AbelianInvariants abelianization(const OneRelatorPresentation& p);

/// Order of an element of H_1; `infinite` when it has infinite order.
struct ElementOrder {
  bool infinite = false;
  long long value = 1;

  static ElementOrder finite(long long v) { return {false, v}; }
  static ElementOrder unbounded() { return {true, 0}; }
  friend bool operator==(const ElementOrder&, const ElementOrder&) = default;
};

/// Order of the image of u in Z^n / <e(relator)>.
ElementOrder element_order_in_h1(const OneRelatorPresentation& p, const Word& u);

/// Text form `< x1, x2 | WORD >`; the generator list fixes the rank and may
/// use x1, x2, ... or the compact letters a, b, ... in order. With
/// `extended`, the relator may use parenthesised powers.
OneRelatorPresentation parse_presentation(std::string_view text, bool extended = false);
std::string to_string(const OneRelatorPresentation& p);
std::string to_string(const AbelianInvariants& h);
std::string to_string(const ElementOrder& o);

/// One line of a presentation file: blank and `#` lines yield nothing; an
/// optional trailing `; label=NAME` sets the label.
std::optional<OneRelatorPresentation> parse_presentation_line(std::string_view line, bool extended = false);

}  // namespace onerel
