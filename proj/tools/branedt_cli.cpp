#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "branedt/dimer.hpp"
#include "branedt/series.hpp"
#include "branedt/verify.hpp"
#include "branedt/workspace.hpp"

namespace {

using namespace branedt;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNotCertified = 2;
constexpr int kExitResource = 3;
constexpr int kExitUsage = 4;

struct Source {
  std::string file;
  std::string builtin;
  int param = -1;
};

void add_source_flags(CLI::App* cmd, Source& src) {
  auto* f = cmd->add_option("--tiling", src.file, "tiling file to load");
  auto* b = cmd->add_option("--builtin", src.builtin, "builtin tiling name");
  cmd->add_option("--param", src.param, "parameter for parametric builtins (c3-zn)");
  f->excludes(b);
}

TilingSpec load_tiling(const Source& src) {
  if (!src.builtin.empty()) {
    std::optional<int> param;
    if (src.param >= 0) param = src.param;
    return builtin_tiling(src.builtin, param);
  }
  if (src.file.empty()) throw CLI::ValidationError("--tiling or --builtin is required");
  std::ifstream in(src.file);
  if (!in) throw CLI::ValidationError("cannot open " + src.file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tiling(buf.str());
}

struct RunFlags {
  int vertex = 0;
  int max_size = 12;
  int radius = -1;
  bool force = false;
  std::string format = "human";
  int threads = 1;
  long long max_ideals = -1;
  double time_budget = -1;
};

void add_run_flags(CLI::App* cmd, RunFlags& rf, bool with_size = true) {
  cmd->add_option("--vertex", rf.vertex, "base quiver vertex")->check(CLI::NonNegativeNumber);
  if (with_size)
    cmd->add_option("--max-size", rf.max_size, "largest ideal size to enumerate")
        ->check(CLI::NonNegativeNumber);
  cmd->add_option("--radius", rf.radius, "window radius override");
  cmd->add_flag("--force", rf.force, "compute even without a consistency certificate");
  cmd->add_option("--format", rf.format, "output format")
      ->check(CLI::IsMember({"human", "tsv"}));
  cmd->add_option("--threads", rf.threads, "worker threads for the enumeration")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-ideals", rf.max_ideals, "abort after this many ideals");
  cmd->add_option("--time-budget", rf.time_budget, "abort after this many seconds");
}

PipelineOptions pipeline_options(const RunFlags& rf) {
  PipelineOptions opts;
  opts.radius_override = rf.radius;
  opts.force = rf.force;
  opts.threads = rf.threads;
  opts.limits.max_ideals = rf.max_ideals;
  opts.limits.wall_seconds = rf.time_budget;
  return opts;
}

void check_vertex(const TilingSpec& t, int vertex) {
  if (vertex < 0 || vertex >= t.vertex_count)
    throw CLI::ValidationError("--vertex must be below " + std::to_string(t.vertex_count));
}

void dump_mu(Workspace& ws, const RunFlags& rf) {
  int radius = rf.radius > 0 ? rf.radius : ws.default_radius(rf.max_size);
  const MuTable& mt = ws.mu(rf.vertex, radius);
  std::cout << "# mu table: vertex dx dy mu\n";
  for (int id = 0; id < mt.window.size(); ++id)
    if (mt.mu[id] >= 0)
      std::cout << mt.window.vertex_of(id) << " " << mt.window.dx_of(id) << " "
                << mt.window.dy_of(id) << " " << mt.mu[id] << "\n";
}

void warn_if_forced(const Workspace& ws, const RunFlags& rf) {
  if (rf.force && !ws.consistency.certified)
    std::cout << "# WARNING: consistency not certified; computing anyway under --force\n";
}

int run_partition(const Source& src, const RunFlags& rf, bool dt, bool with_mu_dump) {
  TilingSpec t = load_tiling(src);
  check_vertex(t, rf.vertex);
  Workspace ws(std::move(t));
  warn_if_forced(ws, rf);
  if (with_mu_dump) dump_mu(ws, rf);
  PipelineOptions opts = pipeline_options(rf);
  SeriesByDim s = dt ? dt_partition_function(ws, rf.vertex, rf.max_size, opts)
                     : partition_function(ws, rf.vertex, rf.max_size, opts);
  if (!s.complete) std::cout << "# RESOURCE LIMIT HIT: partial counts, not authoritative\n";
  std::cout << series_by_dim_to_string(s, rf.format == "tsv");
  return s.complete ? kExitOk : kExitResource;
}

int run_logz(const Source& src, const RunFlags& rf, int trunc, bool rational,
             const std::string& golden) {
  TilingSpec t = load_tiling(src);
  check_vertex(t, rf.vertex);
  int D = trunc > 0 ? trunc : rf.max_size;
  if (D > rf.max_size)
    throw CLI::ValidationError("--trunc cannot exceed --max-size (coefficients incomplete)");
  Workspace ws(std::move(t));
  warn_if_forced(ws, rf);
  PipelineOptions opts = pipeline_options(rf);
  SeriesByDim z = partition_function(ws, rf.vertex, rf.max_size, opts);
  if (!z.complete) {
    std::cout << "# RESOURCE LIMIT HIT: partial counts, not authoritative\n";
    return kExitResource;
  }
  TruncatedSeries zs = series_from_counts(z, D);
  TruncatedSeries lg = specialize(plethystic_log(zs));
  std::cout << "# Log Z^" << rf.vertex << " specialized to one variable, degree <= " << D
            << "\n";
  std::cout << series_to_string(lg) << "\n";
  std::vector<Rat> coeffs = series_coeffs(lg);
  if (rational) {
    RationalFunctionGuess g = detect_recurrence(coeffs);
    if (g.found)
      std::cout << "rational guess: (" << poly_to_string(g.numerator) << ") / ("
                << poly_to_string(g.denominator) << ") valid through degree "
                << g.valid_through << "\n";
    else
      std::cout << "rational guess: none (not enough terms for a confident recurrence)\n";
  }
  if (!golden.empty()) {
    auto [num, den] = parse_rational_function(golden);
    TruncatedSeries expect = expand_rational(num, den, D);
    std::vector<Rat> want = series_coeffs(expect);
    for (int k = 0; k <= D; ++k)
      if (coeffs[k] != want[k]) {
        std::cout << "MISMATCH at degree " << k << ": got " << rat_to_string(coeffs[k])
                  << ", want " << rat_to_string(want[k]) << "\n";
        return kExitValidation;
      }
    std::cout << "MATCH through degree " << D << "\n";
  }
  return kExitOk;
}

int run_correspond(const Source& src, const RunFlags& rf) {
  TilingSpec t = load_tiling(src);
  check_vertex(t, rf.vertex);
  Workspace ws(std::move(t));
  warn_if_forced(ws, rf);
  ws.require_certified(rf.force);
  PipelineOptions opts = pipeline_options(rf);

  int radius = rf.radius > 0 ? rf.radius : ws.default_radius(rf.max_size);
  const MuTable& mt = ws.mu(rf.vertex, radius);
  IdealEnumerator en(mt, ws.arrow_rdeg(), radius - 2);
  long long total = 0, ok = 0;
  en.enumerate_all(rf.max_size, [&](const Ideal& om) {
    ++total;
    try {
      MatchingDiff d = ideal_to_matching(mt, om);
      HeightField h = height_field(mt, d);
      Ideal back = matching_to_ideal(mt, d);
      auto key = [](const Ideal& i) {
        std::vector<std::pair<int, int>> k;
        for (const PathClass& pc : i.elements) k.push_back({pc.cover_id, pc.k});
        std::sort(k.begin(), k.end());
        return k;
      };
      if (h.total == (long long)om.elements.size() && key(back) == key(om)) ++ok;
    } catch (const DimerError&) {
    }
  });

  SeriesByDim za = partition_function(ws, rf.vertex, rf.max_size, opts);
  ZViaMatchings zb = z_via_matchings(ws, rf.vertex, rf.max_size, opts);
  bool agree = za.coeff == zb.series.coeff;

  std::cout << "roundtrips: " << ok << "/" << total << " ok; z-routes agree: "
            << (agree ? "yes" : "no") << "\n";
  if (zb.negative_branches)
    std::cout << "# negative-height branches discarded: " << zb.negative_branches << "\n";
  return (ok == total && agree) ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncommutative Donaldson-Thomas partition functions of brane tilings"};
  app.require_subcommand(1);

  Source src;
  RunFlags rf;
  bool dt_flag = false, mu_flag = false, cond_c = false, rational = false;
  int cycle_bound = -1, trunc = -1;
  std::string golden;

  auto* validate = app.add_subcommand("validate", "check the structural tiling invariants");
  add_source_flags(validate, src);

  auto* consistency = app.add_subcommand("consistency", "report the consistency certificate");
  add_source_flags(consistency, src);
  consistency->add_flag("--condition-c", cond_c, "also run the direct shortest-path search");
  consistency->add_option("--cycle-bound", cycle_bound,
                          "bound for the condition-C search (default: number of matchings)");

  auto* matchings_cmd = app.add_subcommand("matchings", "list all perfect matchings");
  add_source_flags(matchings_cmd, src);

  auto* partition = app.add_subcommand("partition", "partition function Z by dimension vector");
  add_source_flags(partition, src);
  add_run_flags(partition, rf);
  partition->add_flag("--dt", dt_flag, "apply the Donaldson-Thomas signs");
  partition->add_flag("--dump-mu", mu_flag, "dump the shortest-path table first");

  auto* dt = app.add_subcommand("dt", "signed partition function Z_DT");
  add_source_flags(dt, src);
  add_run_flags(dt, rf);

  auto* logz = app.add_subcommand("logz", "specialized plethystic log of Z");
  add_source_flags(logz, src);
  add_run_flags(logz, rf);
  logz->add_option("--trunc", trunc, "truncation degree (default: max-size)");
  logz->add_flag("--rational", rational, "guess a rational function by linear recurrence");
  logz->add_option("--golden", golden, "compare against this rational function of x");

  auto* correspond = app.add_subcommand("correspond", "ideal <-> matching roundtrip suite");
  add_source_flags(correspond, src);
  add_run_flags(correspond, rf);

  auto* builtins = app.add_subcommand("builtins", "list builtin tilings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) {
      TilingSpec t = load_tiling(src);
      ValidationReport rep = validate_tiling(t);
      std::cout << "ok: " << (rep.ok ? "yes" : "no") << "\n";
      for (const auto& issue : rep.issues)
        std::cout << "violation: " << issue.invariant << " (" << issue.witness << ")\n";
      return rep.ok ? kExitOk : kExitValidation;
    }
    if (consistency->parsed()) {
      Workspace ws(load_tiling(src));
      ConsistencyReport rep = consistency_report(ws, cond_c, cycle_bound);
      std::cout << consistency_report_to_string(rep);
      if (!rep.valid) return kExitValidation;
      return rep.certified ? kExitOk : kExitNotCertified;
    }
    if (matchings_cmd->parsed()) {
      TilingSpec t = load_tiling(src);
      ValidationReport rep = validate_tiling(t);
      if (!rep.ok) {
        std::cout << "invalid tiling\n";
        return kExitValidation;
      }
      auto ms = perfect_matchings(t);
      for (const auto& m : ms) std::cout << matching_to_string(t, m) << "\n";
      std::cout << "count: " << ms.size() << "\n";
      return kExitOk;
    }
    if (partition->parsed()) return run_partition(src, rf, dt_flag, mu_flag);
    if (dt->parsed()) return run_partition(src, rf, true, false);
    if (logz->parsed()) return run_logz(src, rf, trunc, rational, golden);
    if (correspond->parsed()) return run_correspond(src, rf);
    if (builtins->parsed()) {
      for (const auto& name : builtin_names()) {
        if (name == "c3-zn") {
          std::cout << name << " (needs --param n >= 2)\n";
          continue;
        }
        TilingSpec t = builtin_tiling(name);
        std::cout << name << " (" << t.vertex_count << " vertices, " << t.arrows.size()
                  << " arrows, " << t.faces.size() << " faces)\n";
      }
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CertificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotCertified;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const WindowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
