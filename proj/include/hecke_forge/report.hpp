#pragma once

// Verification records and their JSON / CSV serialization.

#include "hecke_forge/rational.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <complex>
#include <cstdio>
#include <ctime>
#include <string>
#include <utility>
#include <vector>

namespace hecke_forge::report {

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "skipped";
  }
}

inline constexpr const char* kSchema = "hecke-forge/1";

struct VerificationReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::string lhs;
  std::string rhs;
  double abs_error = 0;
  double tolerance = 0;  // 0 for exact checks
  Status status = Status::skipped;
  long long elapsed_ms = 0;
  std::string note;

  /// Sets the status from abs_error and tolerance.
  void settle() { status = abs_error <= tolerance ? Status::pass : Status::fail; }

  std::string param_string() const {
    std::string out;
    for (const auto& [k, v] : params) out += (out.empty() ? "" : " ") + k + "=" + v;
    return out;
  }
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x + 0.0);
  return buf;
}

/// "re+im i" (or "re-im i").
inline std::string format_complex(std::complex<double> z) {
  const double re = std::abs(z.real()) < 1e-13 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-13 ? 0.0 : z.imag();
  std::string out = format_double(re);
  out += im < 0 ? "-" : "+";
  out += format_double(std::abs(im)) + "i";
  return out;
}

inline nlohmann::ordered_json to_json(const VerificationReport& r, bool timestamps) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["params"] = params;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["abs_error"] = r.abs_error;
  j["tolerance"] = r.tolerance;
  j["status"] = status_name(r.status);
  if (timestamps) j["elapsed_ms"] = r.elapsed_ms;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string reports_json(const std::vector<VerificationReport>& reports, bool timestamps) {
  nlohmann::ordered_json doc;
  doc["schema"] = kSchema;
  if (timestamps) doc["generated_at"] = utc_timestamp();
  doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) doc["reports"].push_back(to_json(r, timestamps));
  return doc.dump(2) + "\n";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string reports_csv(const std::vector<VerificationReport>& reports, bool timestamps) {
  std::string out = "name,params,lhs,rhs,abs_error,tolerance,status";
  out += timestamps ? ",elapsed_ms\n" : "\n";
  for (const auto& r : reports) {
    out += csv_field(r.name) + "," + csv_field(r.param_string()) + "," + csv_field(r.lhs) + "," + csv_field(r.rhs) + "," +
           format_double(r.abs_error) + "," + format_double(r.tolerance) + "," + status_name(r.status);
    if (timestamps) out += "," + std::to_string(r.elapsed_ms);
    out += "\n";
  }
  return out;
}

}  // namespace hecke_forge::report
