#pragma once

// JSON forms of fields, elements, subspaces, pairs, codes, schemes and
// transcripts.  Polynomials and elements list coefficients constant term
// first; an F_q value is the array of its e residues mod p and an element of
// F_{q^m} is the array of its m F_q coordinates.

#include <string>

#include "json.hpp"
#include "rsrepair/goodpair.hpp"
#include "rsrepair/repair.hpp"
#include "rsrepair/rscode.hpp"
#include "rsrepair/subspace.hpp"

namespace rsrepair {

using json = nlohmann::json;

json field_to_json(const FieldCtx& f);
FieldPtr field_from_json(const json& j);

json scalar_to_json(const FieldCtx& f, std::uint32_t c);
std::uint32_t scalar_from_json(const FieldCtx& f, const json& j);
json elem_to_json(const FieldCtx& f, Elt a);
Elt elem_from_json(const FieldCtx& f, const json& j);
json elems_to_json(const FieldCtx& f, std::span<const Elt> v);
std::vector<Elt> elems_from_json(const FieldCtx& f, const json& j);

json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(FieldPtr f, const json& j);

json pair_to_json(const GoodPair& p);
// The certificate is recomputed, not trusted.
GoodPair pair_from_json(const json& j);

json code_to_json(const RsCode& c);
RsCode code_from_json(const json& j);

inline constexpr int kSchemaVersion = 1;

json scheme_to_json(const RepairScheme& s);
RepairScheme scheme_from_json(const json& j);

json transcript_to_json(const FieldCtx& f, const RepairTranscript& t);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace rsrepair
