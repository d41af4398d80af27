#include "qfrank/report.hpp"

#include <algorithm>
#include <sstream>

namespace qfrank::report {
namespace {

constexpr std::int64_t kMaxSafeInteger = (std::int64_t{1} << 53) - 1;

void flatten(const json& node, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    if (node.empty()) out.emplace_back(path, "{}");
    for (const auto& [key, value] : node.items()) {
      flatten(value, path.empty() ? key : path + "." + key, out);
    }
  } else if (node.is_array()) {
    const bool scalar = std::all_of(node.begin(), node.end(),
                                    [](const json& e) { return e.is_primitive(); });
    if (scalar) {
      std::string joined = "[";
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i > 0) joined += ", ";
        joined += node[i].is_string() ? node[i].get<std::string>() : node[i].dump();
      }
      out.emplace_back(path, joined + "]");
    } else {
      for (std::size_t i = 0; i < node.size(); ++i) {
        flatten(node[i], path + "[" + std::to_string(i) + "]", out);
      }
    }
  } else if (node.is_string()) {
    out.emplace_back(path, node.get<std::string>());
  } else {
    out.emplace_back(path, node.dump());
  }
}

json optional_rank(const std::optional<RankComputation>& rc) {
  if (!rc) return nullptr;
  return json{{"by_torsion", rc->by_torsion},
              {"by_divisors", rc->by_divisors},
              {"consistent", rc->consistent()},
              {"structure", to_json(rc->structure)}};
}

}  // namespace

json integer(const BigInt& x) {
  if (mpz_fits_slong_p(x.get_mpz_t())) return integer(static_cast<std::int64_t>(mpz_get_si(x.get_mpz_t())));
  return x.get_str();
}

json integer(std::int64_t x) {
  if (x > kMaxSafeInteger || x < -kMaxSafeInteger) return std::to_string(x);
  return x;
}

json to_json(const QuadForm& f) { return json::array({integer(f.a()), integer(f.b()), integer(f.c())}); }

json to_json(const ClassGroupStructure& s) {
  json divisors = json::array();
  for (auto d : s.elementary_divisors) divisors.push_back(integer(static_cast<std::int64_t>(d)));
  return json{{"discriminant", integer(s.discriminant)},
              {"order", integer(static_cast<std::int64_t>(s.order))},
              {"elementary_divisors", divisors},
              {"three_rank", s.three_rank}};
}

json to_json(const KMInstance& inst, const KMVerdict& verdict) {
  return json{{"u", integer(inst.u)},
              {"v", integer(inst.v)},
              {"poly_p", integer(inst.poly_p)},
              {"poly_q", integer(inst.poly_q)},
              {"disc_f", integer(verdict.disc_f)},
              {"k1", verdict.k1},
              {"k2", verdict.k2},
              {"k3", verdict.k3},
              {"k4_branch", std::string(to_string(verdict.k4_branch))},
              {"all_satisfied", verdict.all_satisfied}};
}

json to_json(const TripleSearchResult& r) {
  json found = json::array();
  for (const auto& t : r.found) found.push_back(json::array({integer(t.x), integer(t.y), integer(t.z)}));
  return json{{"d", integer(r.d)},
              {"bound", integer(static_cast<std::int64_t>(r.bound))},
              {"found", found},
              {"exhausted", r.exhausted}};
}

json to_json(const FieldInstance& inst) {
  json congruences = json::object();
  for (const auto& c : inst.congruences) congruences[c.claim] = c.holds;
  return json{{"radicand_minus", integer(inst.radicand_minus)},
              {"radicand_plus", integer(inst.radicand_plus)},
              {"a", integer(inst.a)},
              {"d", integer(inst.d)},
              {"disc_minus", integer(inst.disc_minus)},
              {"disc_plus", integer(inst.disc_plus)},
              {"congruences", congruences},
              {"refuted_congruences", inst.refuted()}};
}

json to_json(const VerificationRecord& rec) {
  json claims = json::object();
  for (const auto& [name, status] : rec.paper_claims) claims[name] = std::string(to_string(status));
  const KMInstance km = family::km_instance_for(rec.params);
  return json{
      {"params", {{"k", integer(rec.params.k)}, {"l", integer(rec.params.l)}, {"n", rec.params.n}}},
      {"instance", rec.instance ? to_json(*rec.instance) : json(nullptr)},
      {"km_verdict", to_json(km, rec.km_verdict)},
      {"s", rec.s ? json(rec.s->by_torsion) : json(nullptr)},
      {"r", rec.r ? json(rec.r->by_torsion) : json(nullptr)},
      {"rank_checks", {{"s", optional_rank(rec.s)}, {"r", optional_rank(rec.r)}}},
      {"triple_search", rec.triple_search ? to_json(*rec.triple_search) : json(nullptr)},
      {"paper_claims", claims},
      {"budget_events", rec.budget_events},
      {"cross_checks_passed", rec.cross_checks_passed()}};
}

Rows triple_rows(const TripleSearchResult& r) {
  Rows rows{{"x", "y", "z"}, {}};
  for (const auto& t : r.found) rows.cells.push_back({t.x.get_str(), t.y.get_str(), t.z.get_str()});
  return rows;
}

Rows form_rows(const std::vector<Cycle>& cycles) {
  Rows rows{{"cycle", "principal", "a", "b", "c"}, {}};
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (const auto& f : cycles[i].forms) {
      rows.cells.push_back({std::to_string(i), cycles[i].principal ? "1" : "0", std::to_string(f.a()),
                            std::to_string(f.b()), std::to_string(f.c())});
    }
  }
  return rows;
}

Rows form_rows(const std::vector<QuadForm>& forms) {
  Rows rows{{"a", "b", "c"}, {}};
  for (const auto& f : forms) {
    rows.cells.push_back({std::to_string(f.a()), std::to_string(f.b()), std::to_string(f.c())});
  }
  return rows;
}

std::string render_json(const json& doc) { return doc.dump(2) + "\n"; }

std::string render_table(const json& doc) {
  std::vector<std::pair<std::string, std::string>> lines;
  flatten(doc, "", lines);
  std::size_t width = 0;
  for (const auto& [key, value] : lines) width = std::max(width, key.size());
  std::ostringstream os;
  for (const auto& [key, value] : lines) {
    os << key << std::string(width - key.size() + 2, ' ') << value << '\n';
  }
  return os.str();
}

std::string render_csv(const Rows& rows) {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(rows.header);
  for (const auto& r : rows.cells) line(r);
  return os.str();
}

}  // namespace qfrank::report
