#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rearr/batch.hpp"
#include "rearr/rng.hpp"
#include "rearr/word.hpp"

namespace rearr {

enum class Suite { theorem1, certificate, trace2x2, theorem2, lemma1, lemma2, classical, rechtre };

std::string to_string(Suite s);
/// Throws std::invalid_argument on an unknown name.
Suite parse_suite(const std::string& name);
const std::vector<Suite>& all_suites();

struct SuiteConfig {
  Suite suite = Suite::theorem1;
  std::size_t samples = 1000;
  std::size_t dim = 0;            // 0 picks the suite default
  std::optional<Word> word;       // fixed word; otherwise random per instance
  std::size_t max_length = 12;    // random word length bound
  unsigned rr_n = 2, rr_m = 2;    // Recht-Re sizes
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
};

/// One checked instance. `fields` holds the suite-specific numbers.
struct InstanceRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool pass = true;
  bool warning = false;
  nlohmann::json fields;

  nlohmann::json to_json() const;
};

struct SuiteReport {
  Suite suite = Suite::theorem1;
  std::vector<InstanceRecord> records;  // in instance order
  std::size_t failures = 0;
  std::size_t warnings = 0;
  std::vector<std::string> notes;

  bool pass() const { return failures == 0; }
  nlohmann::json summary_json() const;
};

/// Word with uniform length in [min_length, max_length] and uniform letters.
Word random_word(Rng& rng, std::size_t max_length, std::size_t min_length = 1);

/// Instance i draws everything from substream (config.seed, i). Throws
/// std::invalid_argument when the configuration does not fit the suite.
SuiteReport run_suite(const SuiteConfig& config, Execution exec = Execution::parallel);

/// The per-instance kernel of run_suite.
InstanceRecord run_instance(const SuiteConfig& config, std::size_t index);

}  // namespace rearr
