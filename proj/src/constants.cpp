#include "wpgap/constants.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wpgap/errors.hpp"

namespace wpgap {

namespace {

using ordered_json = nlohmann::ordered_json;

void read_field(const ordered_json& j, const char* key, double& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number())
    throw Error(ErrorCode::parse_error,
                std::string("constants: field '") + key + "' must be a number");
  out = v.get<double>();
}

}  // namespace

std::string ConstantsTable::to_json() const {
  ordered_json j;
  j["C_eps"] = C_eps;
  j["nu"] = nu;
  j["c1"] = c1;
  j["beta"] = beta;
  j["C_A3"] = C_A3;
  j["C_short"] = C_short;
  return j.dump(2) + "\n";
}

ConstantsTable ConstantsTable::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error,
                std::string("constants: invalid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw Error(ErrorCode::parse_error, "constants: top level must be an object");
  static const char* known[] = {"C_eps", "nu", "c1", "beta", "C_A3", "C_short"};
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok)
      throw Error(ErrorCode::parse_error,
                  "constants: unknown field '" + key + "'");
    (void)value;
  }
  ConstantsTable t;
  read_field(j, "C_eps", t.C_eps);
  read_field(j, "nu", t.nu);
  read_field(j, "c1", t.c1);
  read_field(j, "beta", t.beta);
  read_field(j, "C_A3", t.C_A3);
  read_field(j, "C_short", t.C_short);
  if (!(t.C_eps > 0) || !(t.nu > 0) || !(t.c1 > 0) || !(t.beta > 0) ||
      !(t.C_A3 > 0) || !(t.C_short > 0))
    throw Error(ErrorCode::precondition, "constants: all entries must be positive");
  return t;
}

ConstantsTable ConstantsTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::file_not_found,
                "constants: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace wpgap
