#pragma once

// Minimal JSON Schema checker covering the keywords used under schemas/:
// type, enum, const, properties, required, additionalProperties, items,
// minItems, maxItems, minimum, oneOf and $ref (same-file or "file.json#/...").

#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace schema {

using Json = nlohmann::json;

class Store {
 public:
  explicit Store(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const Json& load(const std::string& file) {
    auto it = docs_.find(file);
    if (it != docs_.end()) return it->second;
    std::ifstream in(dir_ / file);
    if (!in) throw std::runtime_error("cannot open schema " + file);
    return docs_.emplace(file, Json::parse(in)).first->second;
  }

  /// Empty result means valid; otherwise one message per violation found.
  std::vector<std::string> validate(const Json& doc, const std::string& file) {
    std::vector<std::string> errors;
    check(doc, load(file), file, "", errors);
    return errors;
  }

 private:
  const Json& resolve(const std::string& ref, std::string& file) {
    auto hash = ref.find('#');
    if (hash != 0) file = ref.substr(0, hash);
    const Json& root = load(file);
    std::string pointer = hash == std::string::npos ? "" : ref.substr(hash + 1);
    return root.at(Json::json_pointer(pointer));
  }

  static bool type_matches(const Json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
  }

  void check(const Json& v, const Json& s, std::string file, const std::string& at,
             std::vector<std::string>& errors) {
    if (s.contains("$ref")) {
      const Json& target = resolve(s["$ref"].get<std::string>(), file);
      check(v, target, file, at, errors);
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || type_matches(v, t.get<std::string>());
      } else {
        ok = type_matches(v, s["type"].get<std::string>());
      }
      if (!ok) {
        errors.push_back(at + ": expected type " + s["type"].dump());
        return;
      }
    }
    if (s.contains("const") && v != s["const"]) errors.push_back(at + ": expected " + s["const"].dump());
    if (s.contains("enum")) {
      bool ok = false;
      for (const auto& e : s["enum"]) ok = ok || v == e;
      if (!ok) errors.push_back(at + ": not one of " + s["enum"].dump());
    }
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>())
      errors.push_back(at + ": below minimum");
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
        errors.push_back(at + ": too few items");
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
        errors.push_back(at + ": too many items");
      if (s.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i)
          check(v[i], s["items"], file, at + "/" + std::to_string(i), errors);
    }
    if (v.is_object()) {
      if (s.contains("required"))
        for (const auto& k : s["required"])
          if (!v.contains(k.get<std::string>())) errors.push_back(at + ": missing " + k.get<std::string>());
      for (const auto& [k, item] : v.items()) {
        if (s.contains("properties") && s["properties"].contains(k)) {
          check(item, s["properties"][k], file, at + "/" + k, errors);
        } else if (s.contains("additionalProperties")) {
          const Json& extra = s["additionalProperties"];
          if (extra.is_boolean()) {
            if (!extra.get<bool>()) errors.push_back(at + ": unexpected key " + k);
          } else {
            check(item, extra, file, at + "/" + k, errors);
          }
        }
      }
    }
    if (s.contains("oneOf")) {
      int matches = 0;
      for (const auto& branch : s["oneOf"]) {
        std::vector<std::string> sub;
        check(v, branch, file, at, sub);
        matches += sub.empty();
      }
      if (matches != 1) errors.push_back(at + ": matched " + std::to_string(matches) + " oneOf branches");
    }
  }

  std::filesystem::path dir_;
  std::map<std::string, Json> docs_;
};

}  // namespace schema
