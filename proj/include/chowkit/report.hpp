#pragma once

// Verification records shared by every module and the command line.

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace chowkit {

enum class Status { Pass, Fail, Inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

inline Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "inconclusive") return Status::Inconclusive;
  throw std::invalid_argument("unknown status '" + s + "'");
}

struct VerificationReport {
  std::string module;
  std::string check;
  std::string anchor;  // human-readable pointer to the statement being checked
  Status status = Status::Inconclusive;
  std::vector<std::pair<std::string, std::string>> witness;
  double seconds = 0;  // wall time; rendered in summaries only

  void add(std::string key, std::string value) { witness.emplace_back(std::move(key), std::move(value)); }
  bool passed() const { return status == Status::Pass; }
  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : witness)
      if (k == key) return &v;
    return nullptr;
  }
};

inline VerificationReport make_report(std::string module, std::string check, std::string anchor) {
  VerificationReport r;
  r.module = std::move(module);
  r.check = std::move(check);
  r.anchor = std::move(anchor);
  return r;
}

/// Pass if every condition holds.
inline Status status_of(bool ok) { return ok ? Status::Pass : Status::Fail; }

// ---------------------------------------------------------------------------
// Serialization: one JSON object per line, fields in a fixed order. Wall time
// is left out so reruns are byte-identical.

inline std::string to_json_line(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["record"] = "check";
  j["module"] = r.module;
  j["check"] = r.check;
  j["anchor"] = r.anchor;
  j["status"] = to_string(r.status);
  auto w = nlohmann::ordered_json::array();
  for (const auto& [k, v] : r.witness) w.push_back({k, v});
  j["witness"] = w;
  return j.dump();
}

inline VerificationReport from_json_line(const std::string& line) {
  auto j = nlohmann::ordered_json::parse(line);
  if (j.at("record") != "check") throw std::invalid_argument("not a check record");
  VerificationReport r = make_report(j.at("module"), j.at("check"), j.at("anchor"));
  r.status = status_from_string(j.at("status"));
  for (const auto& kv : j.at("witness")) r.add(kv.at(0), kv.at(1));
  return r;
}

/// Run-level facts recorded ahead of the checks.
struct ReportContext {
  std::vector<std::pair<std::string, std::string>> fields;
};

inline std::string to_json_line(const ReportContext& c) {
  nlohmann::ordered_json j;
  j["record"] = "context";
  for (const auto& [k, v] : c.fields) j[k] = v;
  return j.dump();
}

inline void sort_reports(std::vector<VerificationReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.module, a.check) < std::tie(b.module, b.check);
  });
}

/// 0 if every check passed, 1 if any failed, 3 if none failed but some were
/// inconclusive (budget exhausted).
inline int exit_status(const std::vector<VerificationReport>& reports) {
  bool fail = false, inconclusive = false;
  for (const auto& r : reports) {
    fail = fail || r.status == Status::Fail;
    inconclusive = inconclusive || r.status == Status::Inconclusive;
  }
  return fail ? 1 : inconclusive ? 3 : 0;
}

inline std::string structured_report(const ReportContext& ctx, std::vector<VerificationReport> reports) {
  sort_reports(reports);
  std::string out = to_json_line(ctx) + "\n";
  for (const auto& r : reports) out += to_json_line(r) + "\n";
  return out;
}

inline std::string render_summary(const ReportContext& ctx, std::vector<VerificationReport> reports) {
  sort_reports(reports);
  std::ostringstream os;
  for (const auto& [k, v] : ctx.fields) os << k << ": " << v << "\n";
  std::size_t failed = 0;
  for (const auto& r : reports) {
    std::string tag = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "INCONCLUSIVE";
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
    os << tag << "  " << r.module << "/" << r.check << "  (" << secs << ")\n";
    if (!r.passed()) {
      ++failed;
      os << "      anchor: " << r.anchor << "\n";
      for (const auto& [k, v] : r.witness) os << "      " << k << " = " << v << "\n";
    }
  }
  if (failed == 0)
    os << "all " << reports.size() << " checks passed\n";
  else
    os << failed << " of " << reports.size() << " checks did not pass\n";
  return os.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
  f << content;
  f.close();
  if (!f) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
}

/// Writes report.jsonl and summary.txt into dir.
inline void emit_report(const std::filesystem::path& dir, const ReportContext& ctx,
                        const std::vector<VerificationReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("no results to report");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": " + ec.message());
  write_text(dir / "report.jsonl", structured_report(ctx, reports));
  write_text(dir / "summary.txt", render_summary(ctx, reports));
}

}  // namespace chowkit
