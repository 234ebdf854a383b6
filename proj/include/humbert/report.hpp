#pragma once

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "humbert/errors.hpp"

namespace humbert {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Error };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  throw InternalError("unknown status");
}

// Structured verdict for one verification. Serializes canonically (field
// insertion order is fixed), so identical inputs give byte-identical output.
struct CheckReport {
  std::string name;
  Status status = Status::Pass;
  Json parameters = Json::object();
  Json details = Json::object();
  std::optional<std::string> witness;

  static CheckReport pass(std::string check_name) {
    CheckReport r;
    r.name = std::move(check_name);
    return r;
  }

  static CheckReport fail(std::string check_name, std::string witness_text) {
    CheckReport r;
    r.name = std::move(check_name);
    r.status = Status::Fail;
    r.witness = std::move(witness_text);
    return r;
  }

  // A failing report must always carry a witness.
  void mark_fail(std::string witness_text) {
    status = Status::Fail;
    if (!witness) witness = std::move(witness_text);
  }

  bool passed() const { return status == Status::Pass; }

  Json to_json() const {
    if (status == Status::Fail && !witness)
      throw InternalError("failing report without witness: " + name);
    Json j = Json::object();
    j["name"] = name;
    j["status"] = to_string(status);
    j["parameters"] = parameters;
    j["details"] = details;
    if (witness) j["witness"] = *witness;
    return j;
  }
};

inline constexpr int kReportSchemaVersion = 1;

inline Json report_document(const CheckReport& report) {
  Json j = Json::object();
  j["schema"] = kReportSchemaVersion;
  Json body = report.to_json();
  for (auto& [key, value] : body.items()) j[key] = value;
  return j;
}

inline Json report_document(std::span<const CheckReport> reports) {
  Json j = Json::object();
  j["schema"] = kReportSchemaVersion;
  j["reports"] = Json::array();
  for (const auto& r : reports) j["reports"].push_back(r.to_json());
  return j;
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline std::string reports_to_csv(std::span<const CheckReport> reports) {
  std::string out = "check,status,witness\n";
  for (const auto& r : reports) {
    out += csv_escape(r.name);
    out += ',';
    out += to_string(r.status);
    out += ',';
    out += csv_escape(r.witness.value_or(""));
    out += '\n';
  }
  return out;
}

inline std::string reports_to_text(std::span<const CheckReport> reports) {
  std::string out;
  for (const auto& r : reports) {
    out += "[" + to_string(r.status) + "] " + r.name;
    if (!r.details.empty()) out += "  " + r.details.dump();
    if (r.witness) out += "  witness: " + *r.witness;
    out += '\n';
  }
  return out;
}

}  // namespace humbert
