// Copyright 2026 The msalg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MSALG_IO_HPP_
#define MSALG_IO_HPP_

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "msalg/algebra.hpp"
#include "msalg/closure.hpp"
#include "msalg/core.hpp"
#include "msalg/synthesis.hpp"

namespace msalg {

using json = nlohmann::ordered_json;

namespace detail {

inline bool is_natural(const json& v) {
  return v.is_number_unsigned() ||
         (v.is_number_integer() && v.get<long long>() >= 0);
}

inline void reject_unknown_fields(const json& obj,
                                  const std::set<std::string>& allowed,
                                  const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw error("instance file: unknown field '" + it.key() + "' in " +
                  where);
}

inline json subset_to_json(const MSSubset& x) {
  json out = json::object();
  for (int s = 0; s < x.carrier()->num_sorts(); ++s) {
    Mask bits = x.sort_bits(s);
    if (!bits) continue;
    json ids = json::array();
    while (bits) {
      ids.push_back(std::countr_zero(bits));
      bits &= bits - 1;
    }
    out[x.carrier()->sorts().name(s)] = ids;
  }
  return out;
}

inline MSSubset subset_from_json(const CarrierPtr& c, const json& obj,
                                 const std::string& where) {
  if (!obj.is_object())
    throw error("instance file: subset in " + where + " must be an object");
  Mask bits = 0;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    int s = c->sorts().index_of(it.key());
    if (!it.value().is_array())
      throw error("instance file: subset coordinate in " + where +
                  " must be an array");
    for (const json& e : it.value()) {
      if (!detail::is_natural(e))
        throw error("instance file: bad element id in " + where);
      int x = e.get<int>();
      if (x >= c->size(s))
        throw error("instance file: element " + std::to_string(x) +
                    " out of range for sort " + it.key() + " in " + where);
      bits |= Mask{1} << (c->offset(s) + x);
    }
  }
  return MSSubset(c, bits);
}

inline std::vector<int> parse_tuple_key(const std::string& key,
                                        int expect_len) {
  std::vector<int> out;
  if (!key.empty()) {
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = key.find(',', pos);
      std::string part = key.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (part.empty() ||
          part.find_first_not_of("0123456789") != std::string::npos)
        throw error("instance file: malformed tuple key '" + key + "'");
      out.push_back(std::stoi(part));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (static_cast<int>(out.size()) != expect_len)
    throw error("instance file: tuple key '" + key + "' has " +
                std::to_string(out.size()) + " entries, expected " +
                std::to_string(expect_len));
  return out;
}

inline CarrierPtr carrier_from_json(const json& doc) {
  if (!doc.contains("sorts") || !doc["sorts"].is_array())
    throw error("instance file: missing 'sorts' name list");
  if (!doc.contains("carrier") || !doc["carrier"].is_array())
    throw error("instance file: missing 'carrier' size list");
  std::vector<std::string> names;
  for (const json& n : doc["sorts"]) {
    if (!n.is_string()) throw error("instance file: sort names must be strings");
    names.push_back(n.get<std::string>());
  }
  std::vector<int> sizes;
  for (const json& n : doc["carrier"]) {
    if (!detail::is_natural(n))
      throw error("instance file: carrier sizes must be naturals");
    sizes.push_back(n.get<int>());
  }
  return make_carrier(std::move(names), std::move(sizes));
}

}  // namespace detail

inline json algebra_to_json(const Algebra& a,
                            const std::vector<OpProvenance>* provenance =
                                nullptr) {
  const CarrierPtr& c = a.carrier();
  json doc;
  doc["kind"] = "algebra";
  doc["sorts"] = c->sorts().names();
  doc["carrier"] = c->sizes();
  json ops = json::array();
  for (int i = 0; i < a.signature().num_ops(); ++i) {
    const OpDecl& decl = a.signature().op(i);
    json op;
    op["name"] = decl.name;
    json arity = json::array();
    for (int s : decl.arity.sorts) arity.push_back(c->sorts().name(s));
    op["arity"] = arity;
    op["sort"] = c->sorts().name(decl.coarity);
    json table = json::object();
    const std::vector<int>& t = a.table(i);
    std::vector<int> args(decl.arity.length(), 0);
    for (std::size_t row = 0; row < t.size(); ++row) {
      std::string key;
      for (int k = 0; k < decl.arity.length(); ++k) {
        if (k) key += ',';
        key += std::to_string(args[k]);
      }
      table[key] = t[row];
      for (int k = decl.arity.length() - 1; k >= 0; --k) {
        if (++args[k] < c->size(decl.arity.sorts[k])) break;
        args[k] = 0;
      }
    }
    op["table"] = table;
    ops.push_back(op);
  }
  doc["ops"] = ops;
  if (provenance) {
    json prov = json::array();
    for (std::size_t i = 0; i < provenance->size(); ++i) {
      const OpProvenance& p = (*provenance)[i];
      json entry;
      entry["op"] = a.signature().op(static_cast<int>(i)).name;
      entry["x"] = detail::subset_to_json(MSSubset(c, p.x));
      entry["sort"] = c->sorts().name(p.sort);
      entry["b"] = p.b;
      json word = json::array();
      for (int s : p.word.sorts) word.push_back(c->sorts().name(s));
      entry["word"] = word;
      prov.push_back(entry);
    }
    doc["provenance"] = prov;
  }
  return doc;
}

inline json table_to_json(const ClosureTable& t) {
  const CarrierPtr& c = t.carrier();
  json doc;
  doc["kind"] = "closure_table";
  doc["sorts"] = c->sorts().names();
  doc["carrier"] = c->sizes();
  json rows = json::array();
  for (Mask m : all_subset_masks(c)) {
    json row;
    row["in"] = detail::subset_to_json(MSSubset(c, m));
    row["out"] = detail::subset_to_json(MSSubset(c, t.at(m)));
    rows.push_back(row);
  }
  doc["table"] = rows;
  return doc;
}

inline Algebra algebra_from_json(const json& doc) {
  detail::reject_unknown_fields(
      doc, {"kind", "sorts", "carrier", "ops", "provenance"}, "algebra");
  CarrierPtr c = detail::carrier_from_json(doc);
  if (!doc.contains("ops") || !doc["ops"].is_array())
    throw error("instance file: algebra missing 'ops' list");
  std::vector<OpDecl> decls;
  std::vector<std::vector<int>> tables;
  for (const json& op : doc["ops"]) {
    detail::reject_unknown_fields(op, {"name", "arity", "sort", "table"},
                                  "op");
    if (!op.contains("name") || !op["name"].is_string())
      throw error("instance file: op missing 'name'");
    std::string name = op["name"].get<std::string>();
    if (!op.contains("arity") || !op["arity"].is_array())
      throw error("instance file: op '" + name + "' missing 'arity'");
    Word w;
    for (const json& s : op["arity"]) {
      if (!s.is_string())
        throw error("instance file: arity of op '" + name +
                    "' must list sort names");
      w.sorts.push_back(c->sorts().index_of(s.get<std::string>()));
    }
    if (!op.contains("sort") || !op["sort"].is_string())
      throw error("instance file: op '" + name + "' missing 'sort'");
    int coarity = c->sorts().index_of(op["sort"].get<std::string>());
    if (!op.contains("table") || !op["table"].is_object())
      throw error("instance file: op '" + name + "' missing 'table'");

    std::size_t rows = 1;
    for (int s : w.sorts) rows *= static_cast<std::size_t>(c->size(s));
    std::vector<int> table(rows, -1);
    for (auto it = op["table"].begin(); it != op["table"].end(); ++it) {
      std::vector<int> args = detail::parse_tuple_key(it.key(), w.length());
      std::size_t idx = 0;
      for (int i = 0; i < w.length(); ++i) {
        int s = w.sorts[i];
        if (args[i] >= c->size(s))
          throw error("instance file: tuple '" + it.key() +
                      "' out of range for op '" + name + "'");
        idx = idx * static_cast<std::size_t>(c->size(s)) +
              static_cast<std::size_t>(args[i]);
      }
      if (!detail::is_natural(it.value()))
        throw error("instance file: table value for '" + it.key() +
                    "' in op '" + name + "' must be an element id");
      table[idx] = it.value().get<int>();
    }
    for (std::size_t i = 0; i < table.size(); ++i)
      if (table[i] < 0)
        throw error("instance file: table for op '" + name +
                    "' not total (missing tuple index " + std::to_string(i) +
                    ")");
    decls.push_back({std::move(name), std::move(w), coarity});
    tables.push_back(std::move(table));
  }
  return Algebra(c, Signature(c->sorts(), std::move(decls)),
                 std::move(tables));
}

inline ClosureTable table_from_json(const json& doc) {
  detail::reject_unknown_fields(doc, {"kind", "sorts", "carrier", "table"},
                                "closure_table");
  CarrierPtr c = detail::carrier_from_json(doc);
  if (!doc.contains("table") || !doc["table"].is_array())
    throw error("instance file: closure_table missing 'table' list");
  std::vector<Mask> map(std::size_t{1} << c->total_size(), kNoMemo);
  for (const json& row : doc["table"]) {
    detail::reject_unknown_fields(row, {"in", "out"}, "table row");
    if (!row.contains("in") || !row.contains("out"))
      throw error("instance file: table row needs 'in' and 'out'");
    MSSubset in = detail::subset_from_json(c, row["in"], "table row 'in'");
    MSSubset out = detail::subset_from_json(c, row["out"], "table row 'out'");
    if (map[in.bits()] != kNoMemo)
      throw error("instance file: duplicate table entry for X=" +
                  subset_spec(in));
    map[in.bits()] = out.bits();
  }
  for (Mask m = 0; m < map.size(); ++m)
    if (map[m] == kNoMemo)
      throw error("instance file: table not total: missing X=" +
                  subset_spec(MSSubset(c, m)));
  return ClosureTable(c, std::move(map));
}

using Instance = std::variant<Algebra, ClosureTable>;

/// Loads and validates an instance file; closure tables are additionally
/// axiom-checked unless skip_axioms.
inline Instance load_instance(const std::string& path,
                              bool skip_axioms = false) {
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw error("parse error in '" + path + "': " + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw error("instance file '" + path + "': missing 'kind'");
  std::string kind = doc["kind"].get<std::string>();
  if (kind == "algebra") return algebra_from_json(doc);
  if (kind == "closure_table") {
    ClosureTable t = table_from_json(doc);
    if (!skip_axioms) {
      AxiomReport r = check_closure_axioms(t);
      if (!r.all())
        throw error("instance file '" + path +
                    "': table violates the closure axioms");
    }
    return t;
  }
  throw error("instance file '" + path + "': unknown kind '" + kind + "'");
}

inline void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw error("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
}

}  // namespace msalg

#endif  // MSALG_IO_HPP_
