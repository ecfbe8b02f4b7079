#pragma once

// JSON documents for instances, splitting families, isomorphism inputs and
// outputs, and validation reports. Every document carries schema_version
// "1"; serialization sorts keys and is byte-stable.

#include "ksplit/kunneth.hpp"
#include "ksplit/splitter.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>

namespace ksplit {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Integers are JSON numbers when they fit in 64 bits, decimal strings
/// otherwise. Both forms are accepted on input.
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);

/// {"invariant_factors": [...], "free_rank": r}
Json group_to_json(const FgGroup& g);
FgGroup group_from_json(const Json& j);

/// {"rows": r, "cols": c, "data": [[row 0], [row 1], ...]}
Json matrix_to_json(const Matrix& m);
/// Throws ParseError when the declared or actual shape differs from the
/// expected one.
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

Json hom_to_json(const GroupHom& f);
/// Shape is checked against the groups; relation violations surface as
/// ParseError.
GroupHom hom_from_json(const Json& j, const FgGroup& domain, const FgGroup& codomain);

Json instance_to_json(const KunnethInstance& inst);
/// Throws ParseError on any structural problem. Semantic validity is left
/// to validate_instance.
KunnethInstance instance_from_json(const Json& j);

Json splitting_to_json(const SplittingFamily& fam);
SplittingFamily splitting_from_json(const Json& j, const KunnethInstance& inst);

/// Input of the lifting step: phi0, phi1 and the ideal pairing.
struct IsoInput {
  GroupHom phi0;
  GroupHom phi1;
  std::map<std::string, std::string> pairing;
};
Json iso_input_to_json(const IsoInput& in);
IsoInput iso_input_from_json(const Json& j, const KunnethInstance& a, const KunnethInstance& b);
Json complex_iso_to_json(const ComplexIso& iso);

/// {"ok": bool, "checks": [{name, status, detail, where, witness}]}
Json report_to_json(const ValidationReport& rep);
/// One line per check: "PASS name", "FAIL name [at where]: detail (witness ...)".
std::string report_to_text(const ValidationReport& rep);

/// dump(2) plus a trailing newline.
std::string serialize(const Json& j);
/// Throws ParseError on malformed JSON.
Json parse_json(const std::string& text);

/// Throws ParseError when the file cannot be read.
std::string read_file(const std::string& path);
/// Writes to a sibling temporary and renames it into place.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace ksplit
