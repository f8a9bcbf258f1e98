#include "bk/model_io.hpp"

#include <fstream>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <sstream>

#include "bk/error.hpp"
#include "bk/report_json.hpp"

namespace bk {

namespace {

using Json = nlohmann::ordered_json;

void require_object(const Json& j, const std::string& path,
                    std::initializer_list<std::string_view> required,
                    std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) throw ValidationError("expected an object", path);
  for (auto key : required)
    if (!j.contains(std::string(key))) throw ValidationError("missing key '" + std::string(key) + "'", path);
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto k : required) known = known || key == k;
    for (auto k : optional) known = known || key == k;
    if (!known) throw ValidationError("unknown key '" + key + "'", path);
  }
}

std::size_t as_index(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError("expected an integer", path);
  if (!j.is_number_unsigned()) throw ValidationError("expected a non-negative integer", path);
  return j.get<std::size_t>();
}

std::string as_name(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError("expected a string", path);
  auto s = j.get<std::string>();
  if (s.empty()) throw ValidationError("empty name", path);
  return s;
}

std::size_t checked_sort(const BeliefStructure& m, const Json& j, const std::string& path) {
  std::string name = as_name(j, path);
  if (!m.has_sort(name)) throw ValidationError("unknown sort '" + name + "'", path);
  return m.sort_size(name);
}

BitSet read_members(const Json& j, std::size_t width, const std::string& path) {
  if (!j.is_array()) throw ValidationError("expected an array of states", path);
  BitSet bits(width);
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = path + "/" + std::to_string(i);
    std::size_t x = as_index(j[i], at);
    if (x >= width)
      throw ValidationError("state " + std::to_string(x) + " out of range for carrier of size " +
                                std::to_string(width),
                            at);
    bits.set(x);
  }
  return bits;
}

std::string pointer_escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

}  // namespace

BeliefStructure load_model(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed model document: ") + e.what(),
                     e.byte == 0 ? 0 : e.byte - 1);
  }

  require_object(doc, "", {"sorts", "relations"}, {"predicates", "families", "cycles"});
  BeliefStructure m;

  const Json& sorts = doc["sorts"];
  if (!sorts.is_object()) throw ValidationError("expected an object", "/sorts");
  for (const auto& [name, size] : sorts.items()) {
    std::string path = "/sorts/" + pointer_escape(name);
    if (name.empty()) throw ValidationError("empty sort name", path);
    std::size_t n = as_index(size, path);
    if (n > kMaxCarrier)
      throw ValidationError("carrier larger than " + std::to_string(kMaxCarrier), path);
    m.add_sort(name, n);
  }

  const Json& relations = doc["relations"];
  if (!relations.is_object()) throw ValidationError("expected an object", "/relations");
  for (const auto& [name, body] : relations.items()) {
    std::string path = "/relations/" + pointer_escape(name);
    if (name.empty()) throw ValidationError("empty relation name", path);
    require_object(body, path, {"from", "to", "pairs"});
    std::size_t from_n = checked_sort(m, body["from"], path + "/from");
    std::size_t to_n = checked_sort(m, body["to"], path + "/to");
    Relation r(body["from"].get<std::string>(), from_n, body["to"].get<std::string>(), to_n);
    const Json& pairs = body["pairs"];
    if (!pairs.is_array()) throw ValidationError("expected an array of pairs", path + "/pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::string at = path + "/pairs/" + std::to_string(i);
      const Json& pr = pairs[i];
      if (!pr.is_array() || pr.size() != 2) throw ValidationError("expected [int, int]", at);
      std::size_t x = as_index(pr[0], at + "/0");
      std::size_t y = as_index(pr[1], at + "/1");
      if (x >= from_n)
        throw ValidationError("state " + std::to_string(x) + " out of range for carrier of size " +
                                  std::to_string(from_n),
                              at + "/0");
      if (y >= to_n)
        throw ValidationError("state " + std::to_string(y) + " out of range for carrier of size " +
                                  std::to_string(to_n),
                              at + "/1");
      r.set(x, y);
    }
    m.add_relation(name, std::move(r));
  }

  if (doc.contains("predicates")) {
    const Json& preds = doc["predicates"];
    if (!preds.is_object()) throw ValidationError("expected an object", "/predicates");
    for (const auto& [name, body] : preds.items()) {
      std::string path = "/predicates/" + pointer_escape(name);
      if (name.empty()) throw ValidationError("empty predicate name", path);
      require_object(body, path, {"sort", "members"});
      std::size_t n = checked_sort(m, body["sort"], path + "/sort");
      m.add_predicate(name, Predicate(body["sort"].get<std::string>(),
                                      read_members(body["members"], n, path + "/members")));
    }
  }

  if (doc.contains("families")) {
    const Json& fams = doc["families"];
    if (!fams.is_object()) throw ValidationError("expected an object", "/families");
    for (const auto& [name, body] : fams.items()) {
      std::string path = "/families/" + pointer_escape(name);
      if (name.empty()) throw ValidationError("empty family name", path);
      require_object(body, path, {"sort", "predicates"}, {"nonempty"});
      std::size_t n = checked_sort(m, body["sort"], path + "/sort");
      bool nonempty = false;
      if (body.contains("nonempty")) {
        if (!body["nonempty"].is_boolean())
          throw ValidationError("expected a boolean", path + "/nonempty");
        nonempty = body["nonempty"].get<bool>();
      }
      const Json& list = body["predicates"];
      if (!list.is_array()) throw ValidationError("expected an array", path + "/predicates");
      std::vector<BitSet> members;
      for (std::size_t i = 0; i < list.size(); ++i) {
        std::string at = path + "/predicates/" + std::to_string(i);
        members.push_back(read_members(list[i], n, at));
        if (nonempty && members.back().none())
          throw ValidationError("empty predicate in a nonempty family", at);
      }
      m.add_family(name, PredicateFamily(body["sort"].get<std::string>(), n, std::move(members),
                                         nonempty));
    }
  }

  if (doc.contains("cycles")) {
    const Json& cycles = doc["cycles"];
    if (!cycles.is_object()) throw ValidationError("expected an object", "/cycles");
    for (const auto& [name, body] : cycles.items()) {
      std::string path = "/cycles/" + pointer_escape(name);
      if (name.empty()) throw ValidationError("empty cycle name", path);
      if (!body.is_array() || body.empty())
        throw ValidationError("expected a nonempty array of relation names", path);
      BeliefCycle cycle;
      for (std::size_t i = 0; i < body.size(); ++i) {
        std::string at = path + "/" + std::to_string(i);
        std::string rel = as_name(body[i], at);
        if (!m.relations().count(rel))
          throw ValidationError("unknown relation '" + rel + "'", at);
        cycle.relations.push_back(rel);
      }
      m.add_cycle(name, std::move(cycle));
    }
  }

  return m;
}

BeliefStructure load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("cannot read model file '" + path + "'");
  return load_model(buf.str());
}

std::string serialize_model(const BeliefStructure& m, int indent) {
  Json doc = Json::object();
  Json sorts = Json::object();
  for (const auto& s : m.sorts()) sorts[s.name] = s.size;
  doc["sorts"] = std::move(sorts);

  Json relations = Json::object();
  for (const auto& [name, r] : m.relations()) {
    Json pairs = Json::array();
    for (auto [x, y] : r.pairs()) pairs.push_back({x, y});
    relations[name] = Json{{"from", r.from_sort()}, {"to", r.to_sort()}, {"pairs", pairs}};
  }
  doc["relations"] = std::move(relations);

  if (!m.predicates().empty()) {
    Json preds = Json::object();
    for (const auto& [name, p] : m.predicates())
      preds[name] = Json{{"sort", p.sort}, {"members", p.members.members()}};
    doc["predicates"] = std::move(preds);
  }
  if (!m.families().empty()) {
    Json fams = Json::object();
    for (const auto& [name, f] : m.families()) {
      Json list = Json::array();
      for (const auto& p : f.members()) list.push_back(p.members());
      fams[name] = Json{{"sort", f.sort()}, {"nonempty", f.require_nonempty()}, {"predicates", list}};
    }
    doc["families"] = std::move(fams);
  }
  if (!m.cycles().empty()) {
    Json cycles = Json::object();
    for (const auto& [name, c] : m.cycles()) cycles[name] = c.relations;
    doc["cycles"] = std::move(cycles);
  }
  return json::dump(doc, indent);
}

}  // namespace bk
