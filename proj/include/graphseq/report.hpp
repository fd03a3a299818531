#pragma once

// Report envelope (schema graphseq.report/v1) and the flattened CSV.

#include <graphseq/invariants.hpp>

#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#ifndef GRAPHSEQ_VERSION
#define GRAPHSEQ_VERSION "0.0.0"
#endif

namespace graphseq {

inline constexpr const char* kReportSchema = "graphseq.report/v1";

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

/// Keys left out of the determinism hash: wall-clock data and run-local
/// settings (thread count, output paths).
inline const std::vector<std::string>& unhashed_keys() {
  static const std::vector<std::string> keys{"timestamp", "timings", "execution", "determinism_hash"};
  return keys;
}

inline std::string determinism_hash(const nlohmann::json& report) {
  nlohmann::json copy = report;
  for (const auto& k : unhashed_keys()) copy.erase(k);
  return "sha256:" + sha256_hex(copy.dump());
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json execution = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json timings = nlohmann::json::object();
  std::string status = "ok";  // ok, partial, failed
  std::vector<std::string> errors;

  nlohmann::json to_json() const {
    nlohmann::json j{{"schema", kReportSchema},
                     {"tool", {{"name", "graphseq"}, {"version", GRAPHSEQ_VERSION}}},
                     {"command", command},
                     {"config", config},
                     {"status", status},
                     {"errors", errors},
                     {"results", results},
                     {"execution", execution},
                     {"timings", timings},
                     {"timestamp", utc_timestamp()}};
    j["determinism_hash"] = determinism_hash(j);
    return j;
  }
};

/// Recomputes the hash of a loaded report; false when it was altered.
inline bool verify_report_hash(const nlohmann::json& report) {
  return report.contains("determinism_hash") && report.at("determinism_hash") == determinism_hash(report);
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return nlohmann::json::parse(in);
}

inline const char* kCsvHeader = "family,n,q,field,status,vertices,edges,rank,s_q_num,s_q_den,s_q_approx,cycles_seen";

/// One row per (n, q, field) cell; timed-out cells keep their row with
/// empty value columns.
inline void write_beta_csv(std::ostream& out, const std::string& family, const BetaReport& r) {
  out << kCsvHeader << "\n";
  for (const auto& c : r.cells) {
    out << family << ',' << c.n << ',' << c.q << ',' << c.field.name() << ',' << (c.complete ? "ok" : "timeout")
        << ',' << c.vertices << ',' << c.edges << ',';
    if (c.s) {
      const auto j = rational_json(*c.s);
      out << c.rank << ',' << j["num"].get<std::string>() << ',' << j["den"].get<std::string>() << ','
          << std::setprecision(17) << to_double(*c.s);
    } else {
      out << ",,,";
    }
    out << ',' << c.cycles_seen << "\n";
  }
}

/// Same layout from the JSON cells of one or more reports.
inline void write_cells_csv(std::ostream& out, const std::vector<std::pair<std::string, nlohmann::json>>& cells) {
  out << kCsvHeader << "\n";
  for (const auto& [family, c] : cells) {
    out << family << ',' << c.at("n") << ',' << c.at("q") << ',' << c.at("field").get<std::string>() << ','
        << c.at("status").get<std::string>() << ',' << c.at("vertices") << ',' << c.at("edges") << ',';
    if (!c.at("s_q").is_null())
      out << c.at("rank") << ',' << c.at("s_q").at("num").get<std::string>() << ','
          << c.at("s_q").at("den").get<std::string>() << ',' << std::setprecision(17)
          << c.at("s_q").at("approx").get<double>();
    else
      out << ",,,";
    out << ',' << c.at("cycles_seen") << "\n";
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

}  // namespace graphseq
