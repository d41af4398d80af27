#pragma once

// Serialization of results as JSON documents, aligned tables and CSV.
// Integers beyond 2^53 - 1 in magnitude are emitted as decimal strings.

#include "json.hpp"

#include <string>
#include <vector>

#include "qfrank/classgroup.hpp"
#include "qfrank/family.hpp"
#include "qfrank/kishi_miyake.hpp"
#include "qfrank/quadforms.hpp"
#include "qfrank/rank_relation.hpp"

namespace qfrank::report {

using nlohmann::json;

enum class Format { Table, Json, Csv };

json integer(const BigInt& x);
json integer(std::int64_t x);

json to_json(const QuadForm& f);
json to_json(const ClassGroupStructure& s);
json to_json(const KMInstance& inst, const KMVerdict& verdict);
json to_json(const TripleSearchResult& r);
json to_json(const FieldInstance& inst);
json to_json(const VerificationRecord& rec);

/// A list-shaped result: header plus rows of cells.
struct Rows {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
};

Rows triple_rows(const TripleSearchResult& r);
Rows form_rows(const std::vector<Cycle>& cycles);
Rows form_rows(const std::vector<QuadForm>& forms);

/// Pretty JSON with sorted keys and a trailing newline.
std::string render_json(const json& doc);
/// Flattened "path  value" lines.
std::string render_table(const json& doc);
std::string render_csv(const Rows& rows);

}  // namespace qfrank::report
