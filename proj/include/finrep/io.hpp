#pragma once

// Text formats and JSON reports. Key names are stable; CI scripts read them.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "finrep/algebra.hpp"
#include "finrep/comer.hpp"
#include "finrep/gf2_search.hpp"
#include "finrep/group.hpp"
#include "finrep/johnson.hpp"
#include "finrep/verify.hpp"

namespace finrep {

using Json = nlohmann::ordered_json;

/// Partition file: one "atom element" pair per line, '#' comments. Elements
/// use the group's text form (bitstring, integer or comma coordinates).
/// Throws ParseError for syntax and unknown atoms, StructuralError for
/// overlaps, gaps, a listed zero or an asymmetric atom.
ColoredPartition parse_partition(std::string_view text, const GroupSpec& group, const RaSpec& spec);

std::string format_partition(const ColoredPartition& part, const RaSpec& spec);

std::string read_file(const std::string& path);

Json to_json(const RaSpec& spec);

/// `group` formats points of sumset reports and Cayley colorings; pass
/// nullptr to print brute-force points as plain indices.
Json to_json(const VerificationReport& report, const RaSpec& spec, const GroupSpec* group);

Json to_json(const CosetScheme& scheme);
Json to_json(const BoundResult& bound);
Json to_json(const McReport& report);
Json to_json(const PrecheckResult& result);
Json to_json(const FixtureReport& report);
/// Leaves out wall-clock time so seeded runs serialize identically.
Json to_json(const SearchOutcome& outcome);

}  // namespace finrep
