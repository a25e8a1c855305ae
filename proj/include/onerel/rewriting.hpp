#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onerel/automorphism.hpp"
#include "onerel/presentation.hpp"
#include "onerel/word.hpp"

namespace onerel {

/// y_{level,slot}^sign, standing for t^level x_slot t^-level.
struct YLetter {
  int level = 0;
  int slot = 1;  // index of a non-stable generator
  int sign = 1;

  friend bool operator==(const YLetter&, const YLetter&) = default;
};

/// A relator rewritten over the kernel generators y_{i,j}. Levels are
/// shifted so that the minimum is 0; the original word equals
/// t^shift y_expand(*this) t^-shift.
struct YWord {
  std::vector<YLetter> letters;
  int m = 0;  // maximum level
  Generator stable{1};
  int rank = 1;  // rank of the x-basis
  int shift = 0;

  friend bool operator==(const YWord&, const YWord&) = default;
};

/// Scans w with a running power of the stable letter; each other letter is
/// emitted at the current power. Requires zero exponent sum on `stable`; for
/// cyclically reduced w the result is cyclically reduced in the y-letters.
YWord y_rewrite(const Word& w, Generator stable, int rank = 0);
/// Product of t^i x_j t^-i over the letters.
Word y_expand(const YWord& yw);

/// Vertex generators y_{i,j} are numbered level-major:
/// index = i (n-1) + (position of j among the non-stable generators) + 1.
int vertex_index(int level, int slot, Generator stable, int rank);
YLetter vertex_letter(Letter l, Generator stable, int rank);
Word vertex_word(const YWord& yw);
/// Inverse of vertex_word for an arbitrary word in the vertex generators;
/// the result is not level-normalized (shift 0, m from the letters).
YWord y_word_from_vertex(const Word& w, Generator stable, int rank);

/// Change of basis making a character dual to a single generator. The
/// relator in the new basis is the cyclic core of theta^-1(w), and
/// phi o theta is dual to `stable`.
struct CharacterBasis {
  IntegralCharacter character;
  Automorphism theta;
  Generator stable;
  Word relator;
};

/// A unit character +-x_t keeps x_t as the stable letter (inverting x_t for
/// the minus sign); otherwise the basis comes from normalize_character and
/// the stable letter is the last generator.
CharacterBasis character_basis(const OneRelatorPresentation& p, const IntegralCharacter& phi);

enum class Verdict { fg_kernel, not_fg_kernel };
enum class Exclusion { unique_max_repeated_min, unique_min_repeated_max };

struct FiberingReport {
  std::vector<int> lambda;
  int min_value = 0;
  int max_value = 0;
  int min_multiplicity = 0;
  int max_multiplicity = 0;
  bool rank_is_two = false;
  Verdict verdict = Verdict::not_fg_kernel;
  std::optional<Exclusion> exclusion;
};

/// The kernel of phi is finitely generated iff the rank is 2 and the level
/// sequence of the rewritten relator has a unique minimum and maximum.
FiberingReport brown_test(const OneRelatorPresentation& p, const IntegralCharacter& phi);
FiberingReport fibering_report(const YWord& yw);

/// Deterministic surjective character vanishing on the relator. Rank 2:
/// the primitive vector orthogonal to e with first nonzero entry positive
/// (dual of x1 when e = 0). Higher rank: dual of x_n when e = 0, else dual
/// of the highest x_i with e_i = 0, else (e_2, -e_1, 0, ...) / gcd over the
/// first pair of coordinates.
IntegralCharacter default_character(const OneRelatorPresentation& p);

struct NonManifoldCertificate {
  Exclusion kind;
  IntegralCharacter character;
  FiberingReport report;
};

/// Rank 2 only. With e the exponent vector of the relator, the vanishing
/// character is the primitive vector orthogonal to e with its first
/// nonzero entry positive. When e = 0 every character vanishes; the duals
/// of x1 and x2 are tried in turn.
std::optional<NonManifoldCertificate> non_manifold_certificate(const OneRelatorPresentation& p);

struct HnnSplitting {
  CharacterBasis basis;
  YWord rewritten;
  OneRelatorPresentation vertex;  // generators y_{i,j}, 0 <= i <= m
  int m = 0;
  int edge_rank = 0;
  Endomorphism inclusion_plus;   // y_{i,j} -> y_{i,j}
  Endomorphism inclusion_minus;  // y_{i,j} -> y_{i+1,j}
};

/// Expands a word in the vertex generators back to the x-basis of the
/// rewritten relator (stable letter t = basis.stable).
Word expand_vertex_word(const HnnSplitting& s, const Word& vertex_word);

HnnSplitting moldavansky_split(const OneRelatorPresentation& p, const IntegralCharacter& phi);

struct MappingTorusData {
  HnnSplitting splitting;
  int base_rank = 0;
  Automorphism psi;  // on y_0 .. y_{m-1}
  Word w3;           // vertex relator rotated to y_m^-1 w3
};

/// Requires a finitely generated kernel. y_j -> y_{j+1} for j < m-1 and
/// y_{m-1} -> w3.
MappingTorusData mapping_torus(const OneRelatorPresentation& p, const IntegralCharacter& phi);

/// The two-generator relator t^m y_0 t^-m expand(w3)^-1 left after
/// eliminating y_1 .. y_m from the mapping-torus presentation, written in
/// the basis of the rewritten relator.
OneRelatorPresentation mapping_torus_presentation(const MappingTorusData& d);

std::string to_string(Verdict v);
std::string to_string(Exclusion e);
/// "y{i}_{j}" names; j is the x-index of the slot.
std::string y_name(const YLetter& l);
std::string to_string(const YWord& yw);

}  // namespace onerel
