#pragma once

#include <map>
#include <memory>

#include "branedt/ideals.hpp"
#include "branedt/matching.hpp"
#include "branedt/verify.hpp"

namespace branedt {

struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PipelineOptions {
  int radius_override = -1;  // <= 0 picks the size-derived default
  bool force = false;        // run without a consistency certificate
  int threads = 1;
  ResourceLimit limits;
};

// Shared computation context: one tiling plus everything derived from it,
// with mu tables cached per (base, radius).
struct Workspace {
  explicit Workspace(TilingSpec t);
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  TilingSpec tiling;
  ValidationReport validation;
  bool lattice_ok = false;
  WeightLattice lattice;  // meaningful when lattice_ok
  std::vector<Matching> matchings;
  NonDegeneracy nondegeneracy;
  RCharge rcharge;
  PositivityCertificate positivity;
  Matching m0;  // reference matching, when one exists
  ConsistencyReport consistency;

  const MuTable& mu(int base_vertex, int radius);
  int default_radius(int max_size) const;
  // strictly positive R-values per arrow; requires the positivity certificate
  std::vector<Rat> arrow_rdeg() const;
  // throws CertificationError unless certified (or force)
  void require_certified(bool force) const;

 private:
  std::map<std::pair<int, int>, std::unique_ptr<MuTable>> mu_cache_;
};

SeriesByDim partition_function(Workspace& ws, int base_vertex, int max_size,
                               const PipelineOptions& opts = {});
SeriesByDim dt_partition_function(Workspace& ws, int base_vertex, int max_size,
                                  const PipelineOptions& opts = {});

SeriesByDim partition_function(const TilingSpec& t, int base_vertex, int max_size);
SeriesByDim dt_partition_function(const TilingSpec& t, int base_vertex, int max_size);

}  // namespace branedt
