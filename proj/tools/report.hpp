#pragma once

#include <string>

#include "json.hpp"
#include "onerel/hierarchy.hpp"
#include "onerel/presentation.hpp"
#include "onerel/rewriting.hpp"

namespace onerel::cli {

// Insertion-ordered so that field order is part of the output contract.
using Json = nlohmann::ordered_json;

Json input_json(const OneRelatorPresentation& p, const std::string& text);
Json abelian_json(const AbelianInvariants& h);
Json automorphism_json(const Automorphism& a);
Json character_json(const IntegralCharacter& phi);
Json fibering_json(const OneRelatorPresentation& p, const IntegralCharacter& phi);
Json certificate_json(const std::optional<NonManifoldCertificate>& c);
Json splitting_json(const HnnSplitting& s);
Json torus_json(const MappingTorusData& d);
Json hierarchy_json(const Hierarchy& h, bool full);
Json order_json(const Word& u, const ElementOrder& o);

std::string terminal_name(const TerminalGroup& t);

/// Indented `key: value` rendering of a report tree. Scalars print exactly
/// as in the JSON dump, so both forms carry the same numbers in the same
/// order.
std::string render_text(const Json& report);

}  // namespace onerel::cli
