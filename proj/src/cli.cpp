#include "rearr/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <optional>

#include "rearr/io.hpp"
#include "rearr/ncpoly.hpp"
#include "rearr/search.hpp"
#include "rearr/suites.hpp"
#include "rearr/verify.hpp"

namespace rearr {

using nlohmann::json;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
  int threads = 0;
  std::string json_path;
  bool quiet = false;
};

struct VerifyArgs {
  std::string suite = "theorem1";
  std::string word;
  std::size_t dim = 0;
  std::size_t samples = 1000;
  std::size_t max_length = 12;
  unsigned rr_n = 2, rr_m = 2;
  std::string archive;
};

struct SearchArgs {
  std::string word = "AABABB";
  std::size_t dim = 3;
  std::size_t restarts = 64;
  std::size_t iters = 3000;
  std::size_t rank = 0;
  std::string method = "nelder_mead";
  bool certify = false;
  unsigned k = kDefaultPowerTraceK;
  unsigned k_max = kMaxPowerTraceK;
  std::string archive;
};

struct ExpandArgs {
  std::string word;
  unsigned order = 3;
};

struct SweepArgs {
  std::size_t max_length = 6;
  std::size_t dim = 3;
  std::size_t restarts = 8;
  std::size_t iters = 1500;
  std::size_t max_searches = 100000;
  bool no_certify = false;
};

class Runner {
 public:
  Runner(const Globals& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {
    manifest_.started_at = utc_timestamp();
  }

  int verify(const VerifyArgs& a);
  int search(const SearchArgs& a);
  int expand(const ExpandArgs& a);
  int sweep(const SweepArgs& a);

 private:
  void need_seed() const {
    if (!g_.json_path.empty() && !g_.seed_given) throw UsageError("--seed is required with --json");
  }
  std::ostream& text() { return g_.quiet ? null_ : out_; }
  void emit(const std::string& subcommand, json config, json body) {
    manifest_.subcommand = subcommand;
    manifest_.config = std::move(config);
    manifest_.finished_at = utc_timestamp();
    if (g_.json_path.empty()) return;
    json report = {{"schema", kSchemaVersion}, {"manifest", manifest_.to_json()}};
    report.update(body);
    write_json_file(g_.json_path, report);
  }
  int verify_archive(const VerifyArgs& a);

  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
  std::ostream null_{nullptr};
  RunManifest manifest_;
};

int Runner::verify(const VerifyArgs& a) {
  if (!a.archive.empty()) return verify_archive(a);
  need_seed();
  SuiteConfig c;
  c.suite = parse_suite(a.suite);
  c.samples = a.samples;
  c.dim = a.dim;
  if (!a.word.empty()) c.word = parse_word(a.word);
  c.max_length = a.max_length;
  c.rr_n = a.rr_n;
  c.rr_m = a.rr_m;
  c.seed = g_.seed;
  manifest_.seed = c.seed;

  const SuiteReport rep = run_suite(c, Execution::parallel);
  json records = json::array();
  for (const auto& r : rep.records) records.push_back(r.to_json());
  emit("verify", c.to_json(), {{"summary", rep.summary_json()}, {"records", records}});

  text() << "suite " << to_string(rep.suite) << ": " << rep.records.size() << " instances, " << rep.failures
         << " failures, " << rep.warnings << " warnings\n";
  for (const auto& n : rep.notes) text() << "note: " << n << '\n';
  if (rep.warnings > 0) {
    for (const auto& r : rep.records)
      if (r.warning) err_ << "warning: " << r.to_json().dump() << '\n';
  }
  if (!rep.pass()) {
    for (const auto& r : rep.records)
      if (!r.pass) err_ << "failed: " << r.to_json().dump() << '\n';
    text() << "FAIL\n";
    return kExitAssertionFailed;
  }
  text() << "PASS\n";
  return kExitPass;
}

int Runner::verify_archive(const VerifyArgs& a) {
  const auto ar = CounterexampleArchive::from_json(read_json_file(a.archive), &err_);
  const auto gap = rearrangement_gap(ar.word, ar.a, ar.b);
  const bool violation = is_violation(gap);
  const bool gap_matches = std::abs(gap.gap - ar.float_gap) <= 1e-12 * std::max(1.0, std::abs(ar.float_gap));
  std::optional<CertifyOutcome> cert;
  if (ar.certified) {
    unsigned k = kDefaultPowerTraceK;
    if (ar.certificate.is_object() && ar.certificate.contains("k")) k = ar.certificate["k"].get<unsigned>();
    cert = certify_escalating(ar.word, ar.a, ar.b, k, std::max(k, kMaxPowerTraceK));
  }
  const bool pass = violation && gap_matches && (!cert || cert->certified());
  manifest_.seed = ar.seed;
  manifest_.input_digests = {{"archive", gap.inputs_digest}};
  emit("verify", {{"archive", a.archive}},
       {{"archive_check",
         {{"word", ar.word.letters()},
          {"dim", ar.a.dim()},
          {"gap", gap.gap},
          {"archived_gap", ar.float_gap},
          {"gap_matches", gap_matches},
          {"violation", violation},
          {"certification", cert ? certify_to_json(*cert) : json(nullptr)},
          {"pass", pass}}}});
  text() << "archive " << a.archive << ": word " << ar.word.letters() << ", dim " << ar.a.dim() << ", gap "
         << num(gap.gap) << (gap_matches ? " (matches archive)" : " (differs from archive)") << '\n';
  if (cert) text() << "certification: " << to_string(cert->status) << " at k = " << cert->k << '\n';
  if (!pass) {
    err_ << "failed: archived counterexample did not re-verify\n";
    text() << "FAIL\n";
    return kExitAssertionFailed;
  }
  text() << "PASS\n";
  return kExitPass;
}

json search_result_json(const SearchResult& r) {
  return {{"best_violation", r.best_violation},
          {"norm_word", r.gap.norm_word},
          {"norm_ordered", r.gap.norm_ordered},
          {"gap", r.gap.gap},
          {"violation", is_violation(r.gap)},
          {"restart_index", r.restart_index},
          {"iterations_used", r.iterations_used},
          {"certified", r.certified},
          {"certification", r.certification ? certify_to_json(*r.certification) : json(nullptr)},
          {"inputs_digest", r.gap.inputs_digest},
          {"A", matrix_to_json(r.a.matrix())},
          {"B", matrix_to_json(r.b.matrix())}};
}

int Runner::search(const SearchArgs& a) {
  need_seed();
  SearchConfig c;
  c.word = parse_word(a.word);
  c.dim = a.dim;
  c.restarts = a.restarts;
  c.max_iters = a.iters;
  c.rank = a.rank;
  c.method = parse_search_method(a.method);
  c.seed = g_.seed;
  c.validate();
  if (a.k < 1 || a.k > a.k_max || a.k_max > 12) throw UsageError("need 1 <= --k <= --k-max <= 12");
  manifest_.seed = c.seed;

  SearchResult r = run_search(c, Execution::parallel);
  const bool violation = is_violation(r.gap);
  std::string archive_path;
  if (a.certify && violation) {
    r.certification = certify_escalating(c.word, r.a, r.b, a.k, a.k_max);
    r.certified = r.certification->certified();
    if (r.certified) {
      archive_path = !a.archive.empty() ? a.archive
                                        : "counterexample_" + c.word.letters() + "_dim" + std::to_string(c.dim) + ".json";
      write_json_file(archive_path, make_archive(c, r).to_json());
    }
  }
  json cfg = search_config_to_json(c);
  cfg["certify"] = a.certify;
  cfg["k"] = a.k;
  cfg["k_max"] = a.k_max;
  emit("search", cfg, {{"result", search_result_json(r)}});

  auto& t = text();
  t << "word " << c.word.letters() << ", dim " << c.dim << ", " << c.restarts << " restarts\n";
  t << "best_violation " << num(r.best_violation) << " (restart " << r.restart_index << ", "
    << r.iterations_used << " iterations)\n";
  t << "||W|| = " << num(r.gap.norm_word) << ", ||A^m B^n|| = " << num(r.gap.norm_ordered) << '\n';
  t << (violation ? "violation found (float)\n" : "no violation found\n");
  if (r.certification) {
    t << "certification: " << to_string(r.certification->status) << " at k = " << r.certification->k << " (lower "
      << num(r.certification->rayleigh_lower) << ", upper " << num(r.certification->power_trace_upper) << ")\n";
    if (!r.certified) t << "reason: " << r.certification->reason << '\n';
  }
  if (!archive_path.empty()) t << "archive written to " << archive_path << '\n';
  return kExitPass;
}

int Runner::expand(const ExpandArgs& a) {
  const Word w = parse_word(a.word);
  const NcPolynomial p = expand_word(w, a.order);
  json terms = json::array();
  for (const auto& [mono, coeff] : p.terms()) terms.push_back({{"monomial", mono}, {"coeff", coeff.get_str()}});
  json body = {{"word", w.to_string()}, {"order", a.order}, {"terms", terms}};

  auto& t = text();
  t << "word " << w.to_string() << '\n';
  for (unsigned k = 0; k <= a.order; ++k) t << "degree " << k << ": " << p.degree_part(k).to_string() << '\n';
  if (a.order >= 3) {
    const auto c = extract_coeffs(w);
    json coeffs = json::object();
    for (int i = 1; i <= 12; ++i) {
      coeffs["a" + std::to_string(i)] = c(i).get_str();
      t << "a" << i << " = " << c(i).get_str() << (i == 12 ? "\n" : (i % 4 == 0 ? "\n" : ", "));
    }
    body["coefficients"] = coeffs;
  }
  t << terms.dump() << '\n';
  emit("expand", {{"word", w.letters()}, {"order", a.order}}, body);
  return kExitPass;
}

int Runner::sweep(const SweepArgs& a) {
  need_seed();
  if (a.dim < 2) throw UsageError("--dim must be at least 2");
  if (a.restarts < 1 || a.iters < 1) throw UsageError("--restarts and --iters must be positive");
  SweepBudget budget;
  budget.restarts = a.restarts;
  budget.max_iters = a.iters;
  budget.max_searches = a.max_searches;
  budget.certify = !a.no_certify;
  manifest_.seed = g_.seed;
  const auto rows = sweep_words(a.max_length, a.dim, budget, g_.seed, Execution::parallel);

  json jrows = json::array();
  auto& t = text();
  for (const auto& r : rows) {
    jrows.push_back({{"word", r.word.letters()}, {"label", to_string(r.label)}, {"best_violation", r.best_violation}});
    t << r.word.letters() << ' ' << to_string(r.label) << ' ' << num(r.best_violation) << '\n';
  }
  emit("sweep",
       {{"max_length", a.max_length},
        {"dim", a.dim},
        {"restarts", a.restarts},
        {"max_iters", a.iters},
        {"max_searches", a.max_searches},
        {"certify", budget.certify},
        {"seed", g_.seed}},
       {{"rows", jrows}});
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-word rearrangement inequalities: verification suites, expansions and counterexample search",
               "rearr"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "master seed for all randomness");
  app.add_option("--threads", g.threads, "OpenMP worker count (output does not depend on it)")->check(CLI::NonNegativeNumber);
  app.add_option("--json", g.json_path, "write a JSON report to this path");
  app.add_flag("--quiet", g.quiet, "suppress text output on stdout");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification suite, or re-check a counterexample archive");
  verify->add_option("--suite", va.suite,
                     "theorem1|certificate|trace2x2|theorem2|lemma1|lemma2|classical|rechtre");
  verify->add_option("--word", va.word, "fixed word instead of random words");
  verify->add_option("--dim", va.dim, "matrix dimension (default depends on the suite)");
  verify->add_option("--samples", va.samples, "number of random instances");
  verify->add_option("--max-length", va.max_length, "maximum random word length");
  verify->add_option("--rr-n", va.rr_n, "Recht-Re: number of matrices");
  verify->add_option("--rr-m", va.rr_m, "Recht-Re: product length");
  verify->add_option("--archive", va.archive, "re-verify a counterexample archive instead of running a suite");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "search for PSD pairs violating the rearrangement inequality");
  search->add_option("--word", sa.word, "word in letters or blocks, e.g. AABABB or A^2BAB^2")->capture_default_str();
  search->add_option("--dim", sa.dim, "matrix dimension")->capture_default_str();
  search->add_option("--restarts", sa.restarts, "independent restarts")->capture_default_str();
  search->add_option("--iters", sa.iters, "iteration budget per restart")->capture_default_str();
  search->add_option("--rank", sa.rank, "factor rank (default: dim)");
  search->add_option("--method", sa.method, "nelder_mead|finite_diff_ascent");
  search->add_flag("--certify", sa.certify, "attempt exact-rational certification of a violation");
  search->add_option("--k", sa.k, "first power-trace exponent 2^k");
  search->add_option("--k-max", sa.k_max, "last power-trace exponent tried");
  search->add_option("--archive", sa.archive, "archive path (default counterexample_<word>_dim<d>.json)");

  ExpandArgs ea;
  auto* expand = app.add_subcommand("expand", "expand W(1 + eA, 1 + eB) as a noncommutative polynomial");
  expand->add_option("--word", ea.word, "word to expand")->required();
  expand->add_option("--order", ea.order, "truncation degree")->capture_default_str();

  SweepArgs wa;
  auto* sweep = app.add_subcommand("sweep", "search every word up to a length");
  sweep->add_option("--max-length", wa.max_length, "longest word searched")->capture_default_str();
  sweep->add_option("--dim", wa.dim, "matrix dimension")->capture_default_str();
  sweep->add_option("--restarts", wa.restarts, "restarts per word")->capture_default_str();
  sweep->add_option("--iters", wa.iters, "iteration budget per restart")->capture_default_str();
  sweep->add_option("--max-searches", wa.max_searches, "words beyond this count are skipped");
  sweep->add_flag("--no-certify", wa.no_certify, "label violations without attempting certification");

  std::vector<const char*> argv{"rearr"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "rearr: " << e.what() << '\n';
    return kExitUsage;
  }
  g.seed_given = seed_opt->count() > 0;
  batch::set_threads(g.threads);

  Runner run(g, out, err);
  try {
    if (verify->parsed()) return run.verify(va);
    if (search->parsed()) return run.search(sa);
    if (expand->parsed()) return run.expand(ea);
    return run.sweep(wa);
  } catch (const NumericalError& e) {
    err << "rearr: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "rearr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "rearr: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace rearr
