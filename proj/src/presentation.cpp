#include "onerel/presentation.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

namespace onerel {

OneRelatorPresentation::OneRelatorPresentation(int rank, const Word& relator, std::string label)
    : rank_(rank), relator_(cyclically_reduce(relator).core), label_(std::move(label)) {
  if (rank < 1) throw PreconditionError("presentation rank must be positive");
  if (relator.max_generator() > rank) throw PreconditionError("relator uses a generator beyond the rank");
}

Presentation to_presentation(const OneRelatorPresentation& p) {
  Presentation out{p.rank(), {}};
  if (!p.relator().empty()) out.relators.push_back(p.relator());
  return out;
}

std::optional<OneRelatorPresentation> as_one_relator(const Presentation& p) {
  std::optional<Word> relator;
  for (const Word& r : p.relators) {
    if (r.empty()) continue;
    if (relator) return std::nullopt;
    relator = r;
  }
  return OneRelatorPresentation(p.rank, relator.value_or(Word()));
}

Presentation stabilize(const Presentation& p) {
  Presentation out = p;
  out.rank = p.rank + 1;
  out.relators.push_back(Word::generator(Generator(out.rank)));
  return out;
}

Presentation stabilize(const OneRelatorPresentation& p) { return stabilize(to_presentation(p)); }

Presentation destabilize(const Presentation& p, Generator g, std::size_t relator_index) {
  if (g.index < 1 || g.index > p.rank) throw PreconditionError("generator index out of range");
  if (relator_index >= p.relators.size()) throw PreconditionError("relator index out of range");
  const Word core = cyclically_reduce(p.relators[relator_index]).core;
  if (occurrence_count(core, g) != 1) {
    throw PreconditionError("relator does not contain x" + std::to_string(g.index) + " exactly once");
  }
  std::size_t k = 0;
  while (core[k].gen() != g) ++k;
  const Word rotated = rotate(core, k);
  const Word rest = subword(rotated, 1, rotated.size() - 1);
  // g^-1 u = 1 gives g = u; g u = 1 gives g = u^-1.
  const Word value = rotated.front().sign() < 0 ? rest : invert(rest);

  // Reindex: x_i -> x_{i-1} above g. value omits g, so its image is exact.
  std::vector<Word> images;
  for (int i = 1; i <= p.rank; ++i) {
    images.push_back(i == g.index ? Word() : Word::generator(Generator(i < g.index ? i : i - 1)));
  }
  images[static_cast<std::size_t>(g.index - 1)] = apply(Endomorphism(p.rank, images), value);
  const Endomorphism substitute(p.rank, std::move(images));

  Presentation out{p.rank - 1, {}};
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (i == relator_index) continue;
    Word r = apply(substitute, p.relators[i]);
    if (!r.empty()) out.relators.push_back(std::move(r));
  }
  return out;
}

OneRelatorPresentation apply_automorphism(const OneRelatorPresentation& p, const Automorphism& theta) {
  if (theta.rank() != p.rank()) throw PreconditionError("automorphism rank does not match presentation");
  return OneRelatorPresentation(p.rank(), apply(theta, p.relator()), p.label());
}

bool relators_equivalent(const Word& a, const Word& b) { return canonical_cyclic(a) == canonical_cyclic(b); }

AbelianInvariants abelianization(const OneRelatorPresentation& p) {
  long long d = 0;
  for (long long v : exponent_vector(p.relator(), p.rank())) d = std::gcd(d, v);
  if (d == 0) return {p.rank(), std::nullopt};
  AbelianInvariants h{p.rank() - 1, std::nullopt};
  if (d >= 2) h.torsion = d;
  return h;
}

ElementOrder element_order_in_h1(const OneRelatorPresentation& p, const Word& u) {
  if (u.max_generator() > p.rank()) throw PreconditionError("element uses a generator beyond the rank");
  const auto e = exponent_vector(p.relator(), p.rank());
  const auto v = exponent_vector(u, p.rank());
  long long g = 0;
  for (long long x : e) g = std::gcd(g, x);
  const bool v_zero = std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
  if (g == 0) return v_zero ? ElementOrder::finite(1) : ElementOrder::unbounded();

  // v has finite order iff v = c * (e / g) for an integer c; the order is
  // then g / gcd(g, c).
  std::size_t i = 0;
  while (e[i] == 0) ++i;
  const long long ei = e[i] / g;
  if (v[i] % ei != 0) return ElementOrder::unbounded();
  const long long c = v[i] / ei;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (v[j] != c * (e[j] / g)) return ElementOrder::unbounded();
  }
  return ElementOrder::finite(g / std::gcd(g, c));
}

// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t offset(std::string_view whole, std::string_view part) {
  return static_cast<std::size_t>(part.data() - whole.data());
}

bool generator_name_matches(std::string_view name, int position) {
  if (name.size() == 1 && position <= 26 && name[0] == 'a' + position - 1) return true;
  return name.size() >= 2 && name[0] == 'x' && name.substr(1) == std::to_string(position);
}

}  // namespace

OneRelatorPresentation parse_presentation(std::string_view text, bool extended) {
  std::string_view body = trim(text);
  if (body.empty() || body.front() != '<') throw ParseError("presentation must start with '<'", offset(text, body));
  if (body.back() != '>') throw ParseError("presentation must end with '>'", offset(text, body) + body.size());
  body = body.substr(1, body.size() - 2);
  const std::size_t bar = body.find('|');
  if (bar == std::string_view::npos) throw ParseError("missing '|'", offset(text, body) + body.size());

  std::string_view gens = body.substr(0, bar);
  int rank = 0;
  while (true) {
    const std::size_t comma = gens.find(',');
    std::string_view name = trim(gens.substr(0, comma));
    ++rank;
    if (!generator_name_matches(name, rank)) {
      throw ParseError("generator " + std::to_string(rank) + " must be named x" + std::to_string(rank),
                       offset(text, name));
    }
    if (comma == std::string_view::npos) break;
    gens.remove_prefix(comma + 1);
  }

  std::string_view word_text = body.substr(bar + 1);
  try {
    Word relator = extended ? parse_word_extended(word_text, rank) : parse_word(word_text, rank);
    return OneRelatorPresentation(rank, relator);
  } catch (const ParseError& e) {
    // Re-anchor the position to the full text.
    std::string msg = e.what();
    msg = msg.substr(0, msg.rfind(" (at position"));
    throw ParseError(msg, offset(text, word_text) + e.position());
  }
}

std::optional<OneRelatorPresentation> parse_presentation_line(std::string_view line, bool extended) {
  if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  if (trim(line).empty()) return std::nullopt;
  std::string label;
  std::string_view body = line;
  if (const std::size_t semi = line.find(';'); semi != std::string_view::npos) {
    body = line.substr(0, semi);
    std::string_view attr = trim(line.substr(semi + 1));
    constexpr std::string_view key = "label=";
    if (attr.substr(0, key.size()) != key || trim(attr.substr(key.size())).empty()) {
      throw ParseError("expected 'label=NAME' after ';'", offset(line, attr));
    }
    label = std::string(trim(attr.substr(key.size())));
  }
  OneRelatorPresentation p = parse_presentation(body, extended);
  return OneRelatorPresentation(p.rank(), p.relator(), label);
}

std::string to_string(const OneRelatorPresentation& p) {
  std::string out = "<";
  for (int i = 1; i <= p.rank(); ++i) {
    if (i > 1) out += ", ";
    out += "x" + std::to_string(i);
  }
  out += " | " + to_string(p.relator()) + ">";
  return out;
}

std::string to_string(const AbelianInvariants& h) {
  std::string out;
  if (h.free_rank == 1) out = "Z";
  if (h.free_rank > 1) out = "Z^" + std::to_string(h.free_rank);
  if (h.torsion) out += (out.empty() ? "" : " x ") + ("Z/" + std::to_string(*h.torsion));
  return out.empty() ? "0" : out;
}

std::string to_string(const ElementOrder& o) { return o.infinite ? "infinite" : std::to_string(o.value); }

}  // namespace onerel
