#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "branedt/cover.hpp"
#include "branedt/series.hpp"

namespace branedt {

// A finite order ideal of the path poset, elements listed in canonical order.
struct Ideal {
  std::vector<PathClass> elements;
  DimVector dim_vector;
};

struct SeriesByDim {
  int num_vertices = 0;
  int base_vertex = 0;
  int max_size = 0;
  bool dt_signed = false;
  bool complete = true;  // false when a resource limit cut the run short
  std::map<DimVector, long long> coeff;
};

std::string series_by_dim_to_string(const SeriesByDim& s, bool tsv = false);

struct ResourceLimit {
  long long max_ideals = -1;  // < 0 means unlimited
  double wall_seconds = -1;
};

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Duplicate-free DFS over finite ideals. Classes are totally ordered by
// R-degree (strictly increasing along arrows, so a genuine linear extension
// of the poset), with (vertex, dx, dy, k) breaking ties between incomparable
// classes. Each ideal is produced exactly once, by adding its elements in
// increasing order.
class IdealEnumerator {
 public:
  IdealEnumerator(const MuTable& mt, std::vector<Rat> arrow_rdeg, int safe_chebyshev);

  using Sink = std::function<void(const Ideal&)>;

  // Streams every ideal that extends `seed` (a canonical prefix; pass the
  // empty list for all ideals). The seed itself is emitted iff emit_seed.
  void enumerate(const std::vector<PathClass>& seed, bool emit_seed, int max_size,
                 const Sink& sink, const ResourceLimit& limits = {},
                 std::atomic<long long>* shared_count = nullptr);

  void enumerate_all(int max_size, const Sink& sink, const ResourceLimit& limits = {}) {
    enumerate({}, true, max_size, sink, limits);
  }

  const MuTable& mu() const { return mt_; }

 private:
  struct Node {
    PathClass pc;
    Rat rdeg;
    int vertex, dx, dy;
  };

  int intern(const PathClass& pc);
  bool less(int a, int b) const;
  Rat rdeg0(int cover_id);

  const MuTable& mt_;
  std::vector<Rat> arrow_rdeg_;
  Rat omega_rdeg_;
  int safe_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<Rat> rdeg0_cache_;
  std::vector<char> rdeg0_known_;
};

// (-1)^{a_{base} + <a,a>}
int dt_sign(const TilingSpec& t, int base_vertex, const DimVector& a);

SeriesByDim apply_dt_signs(const TilingSpec& t, const SeriesByDim& z);

// the partition function as a multivariate series (one variable per vertex)
TruncatedSeries series_from_counts(const SeriesByDim& s, int trunc_degree);

}  // namespace branedt
