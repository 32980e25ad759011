#pragma once

// JSON records (nlohmann::json) and aligned text tables for characters,
// flag vectors, decomposition tables and verification reports.

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "modcato/periodicity.hpp"

namespace modcato {

using json = nlohmann::json;

inline json weight_json(const Weight& w) {
  json a = json::array();
  for (std::size_t i = 0; i < w.rank(); ++i) a.push_back(w[i]);
  return a;
}

inline Weight weight_from_json(const json& j) {
  if (!j.is_array() || j.empty() || j.size() > kMaxRank) throw InvalidArgument("weight record must be a short array");
  std::vector<Coord> c;
  for (const auto& x : j) c.push_back(x.get<Coord>());
  return Weight(c);
}

inline json box_json(const TruncationBox& box) {
  json c = json::array();
  for (const auto& w : box.ceiling()) c.push_back(weight_json(w));
  return {{"ceiling", c}, {"depth", box.depth()}};
}

inline TruncationBox box_from_json(const json& j) {
  std::set<Weight> c;
  for (const auto& w : j.at("ceiling")) c.insert(weight_from_json(w));
  return TruncationBox(c, j.at("depth").get<Coord>());
}

inline json character_json(const RootSystem& rs, const FormalCharacter& chi) {
  json terms = json::array();
  for (const auto& [w, c] : chi.sorted_terms(rs))
    if (c != 0) terms.push_back({{"weight", weight_json(w)}, {"mult", c}});
  return {{"type", to_string(chi.cartan_type())},
          {"box", box_json(chi.box())},
          {"complete", chi.complete()},
          {"terms", terms}};
}

inline FormalCharacter character_from_json(const RootSystem& rs, const json& j) {
  if (parse_cartan_type(j.at("type").get<std::string>()) != rs.cartan_type())
    throw InvalidArgument("character record belongs to a different root system");
  FormalCharacter out(rs.cartan_type(), box_from_json(j.at("box")), j.at("complete").get<bool>());
  for (const auto& t : j.at("terms")) out.add(rs, weight_from_json(t.at("weight")), t.at("mult").get<Coord>());
  return out;
}

inline json flag_json(const FlagVector& V) {
  json a = json::array();
  for (const auto& [w, c] : V.entries()) a.push_back({{"weight", weight_json(w)}, {"mult", c}});
  return a;
}

inline FlagVector flag_from_json(const json& j) {
  FlagVector V;
  for (const auto& t : j) V.add(weight_from_json(t.at("weight")), t.at("mult").get<Coord>());
  return V;
}

/// Entries as sorted (mu, lambda, value) triples, zeros omitted.
inline json table_json(const DecompositionTable& t) {
  json rows = json::array();
  for (const auto& [mu, region] : t.row_regions) {
    json r = json::array();
    for (const auto& w : region) r.push_back(weight_json(w));
    rows.push_back({{"mu", weight_json(mu)}, {"region", r}});
  }
  json entries = json::array();
  for (const auto& [k, v] : t.entries)
    entries.push_back({{"mu", weight_json(k.first)}, {"lambda", weight_json(k.second)}, {"value", v}});
  return {{"p", t.p}, {"rows", rows}, {"entries", entries}};
}

inline DecompositionTable table_from_json(const json& j) {
  DecompositionTable t;
  t.p = j.at("p").get<std::int64_t>();
  for (const auto& row : j.at("rows")) {
    std::vector<Weight> region;
    for (const auto& w : row.at("region")) region.push_back(weight_from_json(w));
    t.row_regions[weight_from_json(row.at("mu"))] = region;
  }
  for (const auto& e : j.at("entries"))
    t.entries[{weight_from_json(e.at("mu")), weight_from_json(e.at("lambda"))}] = e.at("value").get<Coord>();
  return t;
}

inline json report_json(const Report& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"identity", e.identity}, {"left", e.left}, {"right", e.right}, {"pass", e.pass}});
  json tables = json::array();
  for (const auto& t : r.tables) tables.push_back(table_json(t));
  return {{"title", r.title}, {"passed", r.passed()}, {"entries", entries}, {"tables", tables}};
}

inline Report report_from_json(const json& j) {
  Report r;
  r.title = j.at("title").get<std::string>();
  for (const auto& e : j.at("entries"))
    r.entries.push_back({e.at("identity").get<std::string>(), e.at("left").get<std::string>(),
                         e.at("right").get<std::string>(), e.at("pass").get<bool>()});
  for (const auto& t : j.at("tables")) r.tables.push_back(table_from_json(t));
  return r;
}

/// Plain text table: a header row and right-aligned columns.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : rows_{std::move(header)} {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    std::ostringstream out;
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out << "  ";
        out << std::setw(static_cast<int>(width[i])) << r[i];
      }
      out << '\n';
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string character_text(const RootSystem& rs, const FormalCharacter& chi) {
  TextTable t({"weight", "mult"});
  for (const auto& [w, c] : chi.sorted_terms(rs))
    if (c != 0) t.add({to_string(w), std::to_string(c)});
  return t.str();
}

inline std::string flag_table_text(const RootSystem& rs, const FlagVector& V) {
  std::vector<std::pair<Weight, Coord>> rows(V.entries().begin(), V.entries().end());
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) { return HigherFirst{&rs}(a.first, b.first); });
  TextTable t({"weight", "mult"});
  for (const auto& [w, c] : rows) t.add({to_string(w), std::to_string(c)});
  return t.str();
}

inline std::string table_text(const RootSystem& rs, const DecompositionTable& d) {
  TextTable t({"mu", "lambda", "[Delta(mu):L(lambda)]"});
  std::vector<Weight> mus;
  for (const auto& [mu, r] : d.row_regions) mus.push_back(mu);
  std::sort(mus.begin(), mus.end(), HigherFirst{&rs});
  for (const auto& mu : mus) {
    std::vector<Weight> region = d.row_regions.at(mu);
    std::sort(region.begin(), region.end(), HigherFirst{&rs});
    for (const auto& lambda : region) {
      const Coord v = d.at(mu, lambda);
      if (v != 0) t.add({to_string(mu), to_string(lambda), std::to_string(v)});
    }
  }
  return t.str();
}

inline std::string report_text(const RootSystem& rs, const Report& r) {
  std::string s = r.title + "\n";
  TextTable t({"identity", "left", "right", "result"});
  for (const auto& e : r.entries) t.add({e.identity, e.left, e.right, e.pass ? "pass" : "FAIL"});
  s += t.str();
  for (const auto& tab : r.tables) s += "\n" + table_text(rs, tab);
  s += r.passed() ? "all identities hold\n" : std::to_string(r.failures()) + " identities failed\n";
  return s;
}

}  // namespace modcato
