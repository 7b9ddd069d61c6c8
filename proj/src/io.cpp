#include "rearr/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

namespace rearr {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  if (!m.square()) throw DimensionError("matrix files hold square matrices");
  json entries = json::array();
  for (double x : m.data()) entries.push_back(x);
  return {{"dim", m.rows()}, {"entries", entries}};
}

SymMatrix matrix_from_json(const json& j, std::ostream* warn) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    throw FormatError("matrix must be an object with \"dim\" and \"entries\"");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0)
    throw FormatError("matrix \"dim\" must be a positive integer");
  const auto n = j["dim"].get<std::size_t>();
  const auto& e = j["entries"];
  if (!e.is_array() || e.size() != n * n)
    throw FormatError("matrix \"entries\" must hold dim*dim numbers");
  std::vector<double> v;
  v.reserve(n * n);
  for (const auto& x : e) {
    if (!x.is_number()) throw FormatError("matrix entries must be numbers");
    v.push_back(x.get<double>());
  }
  Matrix m(n, n, std::move(v));
  const double asym = m.asymmetry();
  if (warn && asym > 1e-9) *warn << "warning: input matrix asymmetry " << asym << " exceeds 1e-9; symmetrized\n";
  return SymMatrix(m);
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json RunManifest::to_json() const {
  return {{"tool", "rearr"},
          {"version", kToolVersion},
          {"subcommand", subcommand},
          {"config", config},
          {"seed", seed ? json(*seed) : json(nullptr)},
          {"started_at", started_at},
          {"finished_at", finished_at},
          {"input_digests", input_digests}};
}

json certify_to_json(const CertifyOutcome& c) {
  json j = {{"status", to_string(c.status)},
            {"k", c.k},
            {"rayleigh_lower", c.rayleigh_lower},
            {"power_trace_upper", c.power_trace_upper},
            {"reason", c.reason}};
  if (c.certificate) {
    j["certificate"] = {{"k", c.certificate->k},
                        {"rayleigh_lower", c.certificate->rayleigh_lower},
                        {"power_trace_upper", c.certificate->power_trace_upper},
                        {"rayleigh_exact", c.certificate->rayleigh_exact}};
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

json search_config_to_json(const SearchConfig& c) {
  return {{"word", c.word.letters()},
          {"dim", c.dim},
          {"restarts", c.restarts},
          {"max_iters", c.max_iters},
          {"rank", c.effective_rank()},
          {"seed", c.seed},
          {"method", to_string(c.method)},
          {"initial_step", c.initial_step},
          {"shrink", c.shrink},
          {"fd_step", c.fd_step}};
}

json CounterexampleArchive::to_json() const {
  return {{"schema", kSchemaVersion},
          {"word", word.letters()},
          {"dim", a.dim()},
          {"A", matrix_to_json(a.matrix())},
          {"B", matrix_to_json(b.matrix())},
          {"float_gap", float_gap},
          {"certified", certified},
          {"seed", seed},
          {"config", config},
          {"certificate", certificate}};
}

CounterexampleArchive CounterexampleArchive::from_json(const json& j, std::ostream* warn) {
  try {
    CounterexampleArchive ar;
    ar.word = parse_word(j.at("word").get<std::string>());
    ar.a = matrix_from_json(j.at("A"), warn);
    ar.b = matrix_from_json(j.at("B"), warn);
    if (ar.a.dim() != ar.b.dim() || ar.a.dim() != j.at("dim").get<std::size_t>())
      throw FormatError("archive dimensions disagree");
    ar.float_gap = j.at("float_gap").get<double>();
    ar.certified = j.at("certified").get<bool>();
    ar.seed = j.at("seed").get<std::uint64_t>();
    ar.config = j.value("config", json::object());
    ar.certificate = j.value("certificate", json(nullptr));
    return ar;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed archive: ") + e.what());
  }
}

CounterexampleArchive make_archive(const SearchConfig& config, const SearchResult& result) {
  CounterexampleArchive ar;
  ar.word = config.word;
  ar.a = result.a;
  ar.b = result.b;
  ar.float_gap = result.gap.gap;
  ar.certified = result.certified;
  ar.seed = config.seed;
  ar.config = search_config_to_json(config);
  ar.certificate = result.certification ? certify_to_json(*result.certification) : json(nullptr);
  return ar;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << j.dump(2) << '\n';
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace rearr
