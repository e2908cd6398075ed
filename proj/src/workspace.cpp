#include "branedt/workspace.hpp"

#include <algorithm>
#include <thread>

namespace branedt {

Workspace::Workspace(TilingSpec t) : tiling(std::move(t)) {
  validation = validate_tiling(tiling);
  consistency.valid = validation.ok;
  if (!validation.ok) {
    for (const auto& issue : validation.issues)
      consistency.violations.push_back(issue.invariant + " (" + issue.witness + ")");
    return;
  }

  matchings = perfect_matchings(tiling);
  nondegeneracy = is_non_degenerate(tiling, matchings);
  consistency.non_degenerate = nondegeneracy.non_degenerate;
  if (!nondegeneracy.non_degenerate) {
    std::string names;
    for (int a : nondegeneracy.uncovered) {
      if (!names.empty()) names += ",";
      names += tiling.arrows[a].name;
    }
    consistency.violations.push_back("arrows in no perfect matching: " + names);
  }
  if (!matchings.empty()) m0 = reference_matching(tiling, matchings);

  try {
    lattice = weight_lattice(tiling);
    lattice_ok = true;
    consistency.lattice_free = true;
  } catch (const LatticeError& e) {
    consistency.violations.push_back(e.what());
  }

  rcharge = r_charge(tiling);
  consistency.r_charge_feasible = rcharge.feasible;
  if (!rcharge.feasible) consistency.violations.push_back("no R-charge: the margin LP gives slack <= 0");

  if (lattice_ok) {
    positivity = positivity_certificate(tiling, lattice);
    if (!positivity.feasible) {
      std::string names;
      for (const auto& n : positivity.tight_arrows) {
        if (!names.empty()) names += ",";
        names += n;
      }
      consistency.violations.push_back("no positive functional; tight arrows: " + names);
    }
  }

  consistency.certified = consistency.non_degenerate && consistency.lattice_free &&
                          consistency.r_charge_feasible;
}

const MuTable& Workspace::mu(int base_vertex, int radius) {
  auto key = std::make_pair(base_vertex, radius);
  auto it = mu_cache_.find(key);
  if (it == mu_cache_.end()) {
    if (matchings.empty()) throw MatchingError("tiling has no perfect matching");
    auto mt = std::make_unique<MuTable>(mu_table(tiling, m0, base_vertex, radius));
    it = mu_cache_.emplace(key, std::move(mt)).first;
  }
  return *it->second;
}

int Workspace::default_radius(int max_size) const {
  return (max_size + 1) * tiling.max_shift() + tiling.max_face_excursion() + 2;
}

std::vector<Rat> Workspace::arrow_rdeg() const {
  if (!positivity.feasible)
    throw CertificationError("no positivity certificate; cannot order path classes");
  return positivity.arrow_value;
}

void Workspace::require_certified(bool force) const {
  if (!consistency.valid) {
    std::string msg = "tiling failed validation";
    for (const auto& v : consistency.violations) msg += "; " + v;
    throw ValidationFailure(msg);
  }
  if (consistency.certified || force) return;
  std::string msg = "tiling is not certified consistent";
  for (const auto& v : consistency.violations) msg += "; " + v;
  msg += " (use --force to compute anyway)";
  throw CertificationError(msg);
}

namespace {

SeriesByDim count_ideals(Workspace& ws, int base_vertex, int max_size,
                         const PipelineOptions& opts) {
  ws.require_certified(opts.force);
  if (base_vertex < 0 || base_vertex >= ws.tiling.vertex_count)
    throw std::invalid_argument("base vertex out of range");
  int radius = opts.radius_override > 0 ? opts.radius_override : ws.default_radius(max_size);
  const MuTable& mt = ws.mu(base_vertex, radius);
  std::vector<Rat> rdeg = ws.arrow_rdeg();

  SeriesByDim out;
  out.num_vertices = ws.tiling.vertex_count;
  out.base_vertex = base_vertex;
  out.max_size = max_size;

  int threads = std::max(1, opts.threads);
  if (threads == 1) {
    IdealEnumerator en(mt, rdeg, radius - 2);
    try {
      en.enumerate_all(max_size, [&](const Ideal& om) { ++out.coeff[om.dim_vector]; },
                       opts.limits);
    } catch (const ResourceLimitError&) {
      out.complete = false;
    }
    return out;
  }

  // Split the canonical DFS at a fixed prefix depth; every ideal larger than
  // the prefix lands in exactly one subtree, so per-task counts add up
  // independently of the schedule.
  const int split = std::min(3, max_size);
  std::vector<std::vector<PathClass>> tasks;
  std::atomic<long long> counter{0};
  {
    IdealEnumerator en(mt, rdeg, radius - 2);
    try {
      en.enumerate({}, true, split,
                   [&](const Ideal& om) {
                     ++out.coeff[om.dim_vector];
                     if ((int)om.elements.size() == split) tasks.push_back(om.elements);
                   },
                   opts.limits, &counter);
    } catch (const ResourceLimitError&) {
      out.complete = false;
      return out;
    }
  }
  if (max_size <= split) return out;

  std::vector<std::map<DimVector, long long>> partial(threads);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int tid = 0; tid < threads; ++tid) {
    pool.emplace_back([&, tid] {
      try {
        for (size_t i = tid; i < tasks.size(); i += threads) {
          IdealEnumerator en(mt, rdeg, radius - 2);
          en.enumerate(tasks[i], false, max_size,
                       [&](const Ideal& om) { ++partial[tid][om.dim_vector]; }, opts.limits,
                       &counter);
        }
      } catch (...) {
        errors[tid] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const ResourceLimitError&) {
      out.complete = false;
    }
  }
  for (const auto& p : partial)
    for (const auto& [alpha, c] : p) out.coeff[alpha] += c;
  return out;
}

}  // namespace

SeriesByDim partition_function(Workspace& ws, int base_vertex, int max_size,
                               const PipelineOptions& opts) {
  return count_ideals(ws, base_vertex, max_size, opts);
}

SeriesByDim dt_partition_function(Workspace& ws, int base_vertex, int max_size,
                                  const PipelineOptions& opts) {
  return apply_dt_signs(ws.tiling, count_ideals(ws, base_vertex, max_size, opts));
}

SeriesByDim partition_function(const TilingSpec& t, int base_vertex, int max_size) {
  Workspace ws(t);
  return partition_function(ws, base_vertex, max_size);
}

SeriesByDim dt_partition_function(const TilingSpec& t, int base_vertex, int max_size) {
  Workspace ws(t);
  return dt_partition_function(ws, base_vertex, max_size);
}

}  // namespace branedt
