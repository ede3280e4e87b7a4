// Command-line front end: generate, reduce, solve, verify-reduction, analyze
// and bench. Exit codes: 0 success, 2 usage, 3 I/O, 4 invariant violation.
// Failures print one JSON object {"error": ..., "message": ...} to stderr.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "linsat/linsat.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace linsat;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInvariant = 4;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << body;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

// Writes to `path`, or stdout when empty or "-".
void emit(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    std::cout.flush();
  } else {
    write_file(path, body);
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string decimal(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", to_double(value));
  return buf;
}

std::string format_scalar(double v) { return format_double(v); }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Instance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

// ---------------------------------------------------------------- solve

enum class Algo { Brute, Random, Ce, Prange };

Algo parse_algo(const std::string& name) {
  if (name == "brute") return Algo::Brute;
  if (name == "random") return Algo::Random;
  if (name == "ce") return Algo::Ce;
  if (name == "prange") return Algo::Prange;
  throw UsageError("unknown algorithm '" + name + "'");
}

SolveResult run_solver(const Instance& inst, Algo algo, std::uint64_t seed,
                       std::uint64_t iters, std::uint64_t cap) {
  switch (algo) {
    case Algo::Brute: return brute_force(inst, cap);
    case Algo::Random: return random_assignment(inst, seed);
    case Algo::Ce: return conditional_expectations(inst);
    case Algo::Prange: return prange_isd(inst, seed, iters);
  }
  throw UsageError("unknown algorithm");
}

json solve_record(const SolveResult& res, std::size_t m) {
  json rec;
  rec["algorithm"] = res.algorithm;
  rec["seed"] = res.seed ? json(*res.seed) : json(nullptr);
  rec["iterations"] = res.iterations;
  rec["s"] = res.eval.satisfied;
  rec["m"] = m;
  rec["ratio"] = decimal(res.eval.ratio);
  rec["ratio_exact"] = to_string(res.eval.ratio);
  rec["assignment"] = serialize_assignment(res.assignment);
  return rec;
}

// ---------------------------------------------------------------- bench

struct BenchPlan {
  std::vector<GenKind> kinds;
  std::vector<std::string> algos;
  GenConfig base;
  std::size_t instances = 1;
  std::uint64_t iters = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
};

BenchPlan bench_plan(const Manifest& manifest, std::optional<std::uint64_t> seed) {
  BenchPlan plan;
  plan.base = gen_config_from_manifest(manifest);
  if (seed) plan.base.seed = *seed;
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = manifest.find(key);
    return it == manifest.end() ? fallback : it->second;
  };
  for (const auto& k : split_list(get("kinds", get("kind", "random"))))
    plan.kinds.push_back(parse_gen_kind(k));
  plan.algos = split_list(get("algos", "random,ce"));
  for (const auto& a : plan.algos) parse_algo(a);
  try {
    plan.instances = std::stoull(get("instances", "1"));
    plan.iters = std::stoull(get("iters", "1"));
    plan.cap = std::stoull(get("cap", std::to_string(kDefaultEnumerationCap)));
  } catch (const std::exception&) {
    throw UsageError("manifest keys instances/iters/cap need integers");
  }
  if (plan.kinds.empty() || plan.algos.empty() || plan.instances == 0)
    throw UsageError("bench needs at least one kind, algorithm and instance");
  return plan;
}

struct CellResult {
  std::size_t cell = 0;
  json record;
  double wall = 0.0;
};

int run_bench(const std::string& manifest_path, std::string out_dir,
              std::optional<std::uint64_t> seed) {
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  const auto manifest_text = read_file(manifest_path);
  const auto manifest = parse_manifest(manifest_text);
  const auto plan = bench_plan(manifest, seed);
  const fs::path root(out_dir);

  std::vector<CellResult> cells;
  std::map<std::string, Instance> instances;  // file name -> instance
  const auto bench_tag = fnv1a64("bench");
  const auto solve_tag = fnv1a64("bench-solve");

  std::size_t cell = 0;
  for (std::size_t k = 0; k < plan.kinds.size(); ++k) {
    for (std::size_t t = 0; t < plan.instances; ++t) {
      GenConfig cfg = plan.base;
      cfg.kind = plan.kinds[k];
      cfg.seed = derive_seed(plan.base.seed, {bench_tag, k, t});
      const auto inst = generate(cfg);
      const std::string name =
          std::string(to_string(cfg.kind)) + "_" + std::to_string(t) + ".txt";
      write_file(root / "instances" / name, serialize_instance(inst));
      for (std::size_t a = 0; a < plan.algos.size(); ++a, ++cell) {
        const auto algo = parse_algo(plan.algos[a]);
        const auto solver_seed = derive_seed(plan.base.seed, {solve_tag, k, t, a});
        const auto c0 = std::chrono::steady_clock::now();
        const auto res = run_solver(inst, algo, solver_seed, plan.iters, plan.cap);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
        json rec;
        rec["cell"] = cell;
        rec["kind"] = to_string(cfg.kind);
        rec["q"] = cfg.q;
        rec["r"] = cfg.r;
        rec["n"] = cfg.n;
        rec["m"] = cfg.m;
        rec["instance_seed"] = cfg.seed;
        rec["instance"] = "instances/" + name;
        const auto solved = solve_record(res, inst.num_constraints());
        for (const auto& [key, value] : solved.items()) rec[key] = value;
        cells.push_back({cell, rec, wall});
      }
      instances.emplace("instances/" + name, inst);
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const CellResult& a, const CellResult& b) { return a.cell < b.cell; });

  // Aggregate, re-validating every ratio against a fresh evaluation.
  struct Stats {
    std::vector<double> ratios;
    json first;
  };
  std::map<std::pair<std::string, std::string>, Stats> groups;
  std::vector<std::pair<std::string, std::string>> order;
  std::string records, timings;
  for (const auto& c : cells) {
    const auto& rec = c.record;
    const auto& inst = instances.at(rec["instance"].get<std::string>());
    const auto x = parse_assignment(rec["assignment"].get<std::string>(),
                                    inst.field().order());
    const auto check = evaluate(inst, x);
    if (check.satisfied != rec["s"].get<std::size_t>() ||
        to_string(check.ratio) != rec["ratio_exact"].get<std::string>())
      throw Error(ErrorKind::InvariantViolation,
                  "bench cell " + std::to_string(c.cell) + " failed re-evaluation");
    const auto key = std::make_pair(rec["kind"].get<std::string>(),
                                    rec["algorithm"].get<std::string>());
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) {
      it->second.first = rec;
      order.push_back(key);
    }
    it->second.ratios.push_back(to_double(check.ratio));
    records += rec.dump() + "\n";
    json timing;
    timing["cell"] = c.cell;
    timing["wall_time_s"] = c.wall;
    timings += timing.dump() + "\n";
  }

  std::string summary = "kind,algorithm,q,r,n,m,count,mean_ratio,stddev_ratio,baseline\n";
  for (const auto& key : order) {
    const auto& st = groups.at(key);
    const double n = static_cast<double>(st.ratios.size());
    double mean = 0;
    for (double v : st.ratios) mean += v;
    mean /= n;
    double var = 0;
    for (double v : st.ratios) var += (v - mean) * (v - mean);
    const double sd = st.ratios.size() > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    char line[256];
    std::snprintf(line, sizeof line, "%s,%s,%u,%zu,%zu,%zu,%zu,%.10f,%.10f,%.10f\n",
                  key.first.c_str(), key.second.c_str(), plan.base.q, plan.base.r,
                  plan.base.n, plan.base.m, st.ratios.size(), mean, sd,
                  static_cast<double>(plan.base.r) / plan.base.q);
    summary += line;
  }

  write_file(root / "records.jsonl", records);
  write_file(root / "timings.jsonl", timings);
  write_file(root / "summary.csv", summary);

  json run;
  run["command"] = "bench";
  json config;
  for (const auto& [key, value] : manifest) config[key] = value;
  config["seed"] = plan.base.seed;
  run["config"] = config;
  run["input_hashes"] = {{manifest_path, "sha256:" + sha256_hex(manifest_text)}};
  run["tool_version"] = LINSAT_VERSION;
  run["started_at"] = started;
  run["duration_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(root / "manifest.json", run.dump(2) + "\n");
  std::cout << summary;
  return 0;
}

int report_error(const std::string& kind, const std::string& message, int code) {
  json err;
  err["error"] = kind;
  err["message"] = message;
  std::cerr << err.dump() << "\n";
  return code;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::RangeError:
      return kExitUsage;
    default:
      return kExitInvariant;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linsat: max-LINSAT(q, r) toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", LINSAT_VERSION);

  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Master seed for all randomness");

  // generate
  auto* gen = app.add_subcommand("generate", "Generate an instance");
  std::string gen_manifest, gen_out, gen_planted_out, gen_kind, gen_fraction;
  std::optional<std::uint32_t> gen_q;
  std::optional<std::size_t> gen_n, gen_m, gen_r;
  gen->add_option("--manifest", gen_manifest, "key = value config file");
  gen->add_option("--kind", gen_kind, "random | e3lin | opi | planted");
  gen->add_option("--q", gen_q, "Field order");
  gen->add_option("--n", gen_n, "Variables");
  gen->add_option("--m", gen_m, "Constraints");
  gen->add_option("--r", gen_r, "Acceptance-set size");
  gen->add_option("--planted-fraction", gen_fraction, "Fraction for planted, e.g. 9/10");
  gen->add_option("--out,-o", gen_out, "Output file (default stdout)");
  gen->add_option("--planted-out", gen_planted_out, "Write the planted assignment here");

  // reduce
  auto* red = app.add_subcommand("reduce", "Gadget reduction from r = 1 to r");
  std::string red_in, red_out;
  std::size_t red_r = 1;
  red->add_option("--in,-i", red_in, "Input instance (r = 1)")->required();
  red->add_option("--r", red_r, "Target acceptance-set size")->required();
  red->add_option("--out,-o", red_out, "Output file (default stdout)");

  // solve
  auto* sol = app.add_subcommand("solve", "Run a solver on an instance");
  std::string sol_in, sol_algo = "ce", sol_out, sol_format = "jsonl";
  std::uint64_t sol_iters = 1, sol_cap = kDefaultEnumerationCap;
  sol->add_option("--in,-i", sol_in, "Instance file")->required();
  sol->add_option("--algo", sol_algo, "brute | random | ce | prange")
      ->check(CLI::IsMember({"brute", "random", "ce", "prange"}));
  sol->add_option("--iters", sol_iters, "Prange iterations");
  sol->add_option("--cap", sol_cap, "Brute-force enumeration cap");
  sol->add_option("--format", sol_format)->check(CLI::IsMember({"jsonl", "csv"}));
  sol->add_option("--out,-o", sol_out, "Output file (default stdout)");

  // verify-reduction
  auto* ver = app.add_subcommand("verify-reduction",
                                 "Check the satisfaction law of a reduction");
  std::string ver_orig, ver_reduced, ver_assignments, ver_out, ver_format = "csv";
  std::optional<std::size_t> ver_r;
  std::uint64_t ver_cap = kDefaultEnumerationCap;
  ver->add_option("--original", ver_orig, "Original r = 1 instance")->required();
  ver->add_option("--reduced", ver_reduced, "Reduced instance");
  ver->add_option("--r", ver_r, "Reduce the original with this r instead");
  ver->add_option("--assignments", ver_assignments,
                  "Assignments, one per line (default: all q^n)");
  ver->add_option("--cap", ver_cap, "Cap on q^n for exhaustive checks");
  ver->add_option("--format", ver_format)->check(CLI::IsMember({"jsonl", "csv"}));
  ver->add_option("--out,-o", ver_out, "Output file (default stdout)");

  // analyze
  auto* ana = app.add_subcommand("analyze", "Closed-form ratio curves");
  ana->require_subcommand(1);
  auto* semi = ana->add_subcommand("semicircle", "Semicircle-law landscape");
  std::string semi_rq, semi_out, semi_format = "csv";
  std::size_t semi_steps = 11;
  semi->add_option("--r-over-q", semi_rq, "r/q, e.g. 1/2 or 0.5")->required();
  semi->add_option("--steps", semi_steps, "Grid points on [0, 1]");
  semi->add_option("--format", semi_format)->check(CLI::IsMember({"jsonl", "csv"}));
  semi->add_option("--out,-o", semi_out, "Output file (default stdout)");
  auto* pra = ana->add_subcommand("prange", "Prange expected ratio");
  std::string pra_nm, pra_rq;
  pra->add_option("--n-over-m", pra_nm, "n/m")->required();
  pra->add_option("--r-over-q", pra_rq, "r/q")->required();

  // bench
  auto* ben = app.add_subcommand("bench", "Generators x solvers benchmark");
  std::string ben_manifest, ben_out;
  ben->add_option("--manifest", ben_manifest, "Bench manifest")->required();
  ben->add_option("--out-dir", ben_out,
                  "Output directory (default $LINSAT_OUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", e.what(), kExitUsage);
  }

  try {
    if (gen->parsed()) {
      GenConfig cfg;
      if (!gen_manifest.empty())
        cfg = gen_config_from_manifest(parse_manifest(read_file(gen_manifest)));
      if (!gen_kind.empty()) cfg.kind = parse_gen_kind(gen_kind);
      if (gen_q) cfg.q = *gen_q;
      if (gen_n) cfg.n = *gen_n;
      if (gen_m) cfg.m = *gen_m;
      if (gen_r) cfg.r = *gen_r;
      if (!gen_fraction.empty()) cfg.planted_fraction = parse_rational(gen_fraction);
      if (seed) cfg.seed = *seed;
      if (cfg.kind == GenKind::Planted) {
        const auto planted = generate_planted(cfg);
        emit(gen_out, serialize_instance(planted.instance));
        if (!gen_planted_out.empty())
          write_file(gen_planted_out, serialize_assignment(planted.planted) + "\n");
      } else {
        emit(gen_out, serialize_instance(generate(cfg)));
      }
      return 0;
    }

    if (red->parsed()) {
      emit(red_out, serialize_instance(reduce(load_instance(red_in), red_r)));
      return 0;
    }

    if (sol->parsed()) {
      const auto inst = load_instance(sol_in);
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = run_solver(inst, parse_algo(sol_algo), seed.value_or(0),
                                  sol_iters, sol_cap);
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      auto rec = solve_record(res, inst.num_constraints());
      rec["wall_time_s"] = wall;
      if (sol_format == "jsonl") {
        emit(sol_out, rec.dump() + "\n");
      } else {
        std::string body = "algorithm,seed,iterations,s,m,ratio,ratio_exact,wall_time_s\n";
        body += res.algorithm + "," + (res.seed ? std::to_string(*res.seed) : "") + "," +
                std::to_string(res.iterations) + "," +
                std::to_string(res.eval.satisfied) + "," +
                std::to_string(inst.num_constraints()) + "," + decimal(res.eval.ratio) +
                "," + to_string(res.eval.ratio) + "," + format_scalar(wall) + "\n";
        emit(sol_out, body);
      }
      return 0;
    }

    if (ver->parsed()) {
      const auto original = load_instance(ver_orig);
      std::optional<Instance> reduced;
      if (!ver_reduced.empty())
        reduced = load_instance(ver_reduced);
      else if (ver_r)
        reduced = reduce(original, *ver_r);
      else
        throw UsageError("verify-reduction needs --reduced or --r");
      const ReductionVerifier verifier(original, *reduced);

      std::string body = ver_format == "csv" ? "index,mu,predicted,actual,equal\n" : "";
      std::size_t index = 0, mismatches = 0;
      auto add = [&](const ReductionReport& rep) {
        mismatches += !rep.consistent();
        if (ver_format == "csv") {
          body += std::to_string(index) + "," + to_string(rep.mu) + "," +
                  std::to_string(rep.predicted_satisfied) + "," +
                  std::to_string(rep.actual_satisfied) + "," +
                  (rep.consistent() ? "true" : "false") + "\n";
        } else {
          json row;
          row["index"] = index;
          row["mu"] = to_string(rep.mu);
          row["predicted"] = rep.predicted_satisfied;
          row["actual"] = rep.actual_satisfied;
          row["equal"] = rep.consistent();
          body += row.dump() + "\n";
        }
        ++index;
      };
      if (!ver_assignments.empty()) {
        for (const auto& x : parse_assignments(read_file(ver_assignments),
                                               original.field().order()))
          add(verifier.verify(x));
      } else {
        if (!assignment_count(original, ver_cap))
          throw Error(ErrorKind::TooLarge, "q^n exceeds the cap; pass --assignments");
        verifier.verify_all([&](const Assignment&, const ReductionReport& rep) { add(rep); });
      }
      emit(ver_out, body);
      if (mismatches > 0)
        return report_error("InvariantViolation",
                            std::to_string(mismatches) + " assignments break the law",
                            kExitInvariant);
      return 0;
    }

    if (semi->parsed()) {
      const auto curve = landscape_curve(parse_rational(semi_rq), semi_steps);
      if (semi_format == "csv") {
        emit(semi_out, landscape_csv(curve));
      } else {
        std::string body;
        for (const auto& pt : curve) {
          json row;
          row["ell_over_m"] = to_double(pt.ell_over_m);
          row["alpha_dqi"] = pt.alpha_dqi;
          row["hardness_wall"] = to_double(pt.hardness_wall);
          row["saturated"] = pt.saturated;
          body += row.dump() + "\n";
        }
        emit(semi_out, body);
      }
      return 0;
    }

    if (pra->parsed()) {
      const auto value =
          prange_expected_ratio(parse_rational(pra_nm), parse_rational(pra_rq));
      std::cout << format_scalar(to_double(value)) << "\n";
      return 0;
    }

    if (ben->parsed()) {
      if (ben_out.empty()) {
        const char* env = std::getenv("LINSAT_OUT_DIR");
        ben_out = env && *env ? env : ".";
      }
      return run_bench(ben_manifest, ben_out, seed);
    }
  } catch (const UsageError& e) {
    return report_error("UsageError", e.what(), kExitUsage);
  } catch (const IoError& e) {
    return report_error("IoError", e.what(), kExitIo);
  } catch (const fs::filesystem_error& e) {
    return report_error("IoError", e.what(), kExitIo);
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what(), exit_code_for(e.kind()));
  } catch (const std::invalid_argument& e) {
    return report_error("UsageError", e.what(), kExitUsage);
  } catch (const std::out_of_range& e) {
    return report_error("UsageError", e.what(), kExitUsage);
  }
  return 0;
}
