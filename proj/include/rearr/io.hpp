#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "rearr/certify.hpp"
#include "rearr/linalg.hpp"
#include "rearr/search.hpp"

namespace rearr {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"dim": N, "entries": [row-major N*N numbers]}.
nlohmann::json matrix_to_json(const Matrix& m);

/// Parses the matrix format and symmetrizes. Writes a warning line to `warn`
/// (when given) if the input asymmetry exceeds 1e-9.
SymMatrix matrix_from_json(const nlohmann::json& j, std::ostream* warn = nullptr);

/// Provenance block embedded in every report. Timestamps are the only
/// run-dependent fields.
struct RunManifest {
  std::string subcommand;
  nlohmann::json config;
  std::optional<std::uint64_t> seed;
  std::string started_at;
  std::string finished_at;
  nlohmann::json input_digests = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// UTC, ISO 8601, second resolution.
std::string utc_timestamp();

nlohmann::json certify_to_json(const CertifyOutcome& c);
nlohmann::json search_config_to_json(const SearchConfig& c);

/// A found pair together with what is needed to re-check it.
struct CounterexampleArchive {
  Word word = Word::from_letters("AB");
  SymMatrix a, b;
  double float_gap = 0;
  bool certified = false;
  std::uint64_t seed = 0;
  nlohmann::json config;
  nlohmann::json certificate;  // null when not certified

  nlohmann::json to_json() const;
  static CounterexampleArchive from_json(const nlohmann::json& j, std::ostream* warn = nullptr);
};

CounterexampleArchive make_archive(const SearchConfig& config, const SearchResult& result);

/// Writes `j` pretty-printed with a trailing newline; throws std::runtime_error
/// on I/O failure.
void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace rearr
