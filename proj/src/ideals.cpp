#include "branedt/ideals.hpp"

#include <algorithm>
#include <sstream>

namespace branedt {

namespace {

std::uint64_t pack(const PathClass& pc) {
  return (std::uint64_t)(std::uint32_t)pc.cover_id << 32 | (std::uint32_t)pc.k;
}

}  // namespace

IdealEnumerator::IdealEnumerator(const MuTable& mt, std::vector<Rat> arrow_rdeg,
                                 int safe_chebyshev)
    : mt_(mt), arrow_rdeg_(std::move(arrow_rdeg)), safe_(safe_chebyshev) {
  if ((int)arrow_rdeg_.size() != (int)mt.tiling->arrows.size())
    throw std::invalid_argument("one R-value per arrow required");
  for (const Rat& r : arrow_rdeg_)
    if (r <= 0) throw std::invalid_argument("R-degrees must be strictly positive");
  // R(omega) = R-degree of any face cycle
  omega_rdeg_ = Rat(0);
  for (int ai : mt.tiling->faces.front().arrows) omega_rdeg_ += arrow_rdeg_[ai];
  rdeg0_cache_.assign(mt.window.size(), Rat(0));
  rdeg0_known_.assign(mt.window.size(), 0);
}

Rat IdealEnumerator::rdeg0(int cover_id) {
  if (rdeg0_known_[cover_id]) return rdeg0_cache_[cover_id];
  std::vector<int> chain;
  int id = cover_id;
  while (!rdeg0_known_[id] && id != mt_.base_id) {
    chain.push_back(id);
    id = mt_.parent_id[id];
    if (id < 0) throw WindowError("no witness path for cover vertex");
  }
  if (id == mt_.base_id && !rdeg0_known_[id]) {
    rdeg0_cache_[id] = Rat(0);
    rdeg0_known_[id] = 1;
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    rdeg0_cache_[*it] = rdeg0_cache_[mt_.parent_id[*it]] + arrow_rdeg_[mt_.parent_arrow[*it]];
    rdeg0_known_[*it] = 1;
  }
  return rdeg0_cache_[cover_id];
}

int IdealEnumerator::intern(const PathClass& pc) {
  auto it = index_.find(pack(pc));
  if (it != index_.end()) return it->second;
  if (mt_.window.chebyshev(pc.cover_id) > safe_)
    throw WindowError("ideal enumeration touched the window boundary; enlarge the radius");
  Node n;
  n.pc = pc;
  n.rdeg = rdeg0(pc.cover_id) + omega_rdeg_ * pc.k;
  n.vertex = mt_.window.vertex_of(pc.cover_id);
  n.dx = mt_.window.dx_of(pc.cover_id);
  n.dy = mt_.window.dy_of(pc.cover_id);
  nodes_.push_back(std::move(n));
  int idx = (int)nodes_.size() - 1;
  index_.emplace(pack(pc), idx);
  return idx;
}

bool IdealEnumerator::less(int a, int b) const {
  const Node& x = nodes_[a];
  const Node& y = nodes_[b];
  int c = cmp(x.rdeg, y.rdeg);
  if (c != 0) return c < 0;
  if (x.vertex != y.vertex) return x.vertex < y.vertex;
  if (x.dx != y.dx) return x.dx < y.dx;
  if (x.dy != y.dy) return x.dy < y.dy;
  return x.pc.k < y.pc.k;
}

void IdealEnumerator::enumerate(const std::vector<PathClass>& seed, bool emit_seed,
                                int max_size, const Sink& sink, const ResourceLimit& limits,
                                std::atomic<long long>* shared_count) {
  if (!mt_.stabilized)
    throw WindowError("mu table not stabilized; enlarge the radius");

  struct State {
    std::vector<int> members;
    std::unordered_set<int> in_set;
    DimVector dim;
  } st;
  st.dim.assign(mt_.tiling->vertex_count, 0);

  auto is_addable = [&](int idx) {
    for (const auto& [arrow, pred] : class_predecessors(mt_, nodes_[idx].pc)) {
      (void)arrow;
      auto it = index_.find(pack(pred));
      if (it == index_.end() || !st.in_set.count(it->second)) return false;
    }
    return true;
  };

  auto push_member = [&](int idx) {
    st.members.push_back(idx);
    st.in_set.insert(idx);
    ++st.dim[nodes_[idx].vertex];
  };

  // Addable set for the seed state, computed from scratch.
  std::vector<int> addable;
  for (const PathClass& pc : seed) push_member(intern(pc));
  {
    std::vector<int> candidates;
    if (st.members.empty()) {
      candidates.push_back(intern(PathClass{mt_.base_id, 0}));
    } else {
      for (int m : st.members)
        for (const auto& [arrow, child] : class_children(mt_, nodes_[m].pc)) {
          (void)arrow;
          int idx = intern(child);
          if (!st.in_set.count(idx) &&
              std::find(candidates.begin(), candidates.end(), idx) == candidates.end())
            candidates.push_back(idx);
        }
    }
    for (int idx : candidates)
      if (is_addable(idx)) addable.push_back(idx);
    std::sort(addable.begin(), addable.end(), [&](int a, int b) { return less(a, b); });
  }

  long long local_count = 0;
  auto deadline = std::chrono::steady_clock::time_point::max();
  if (limits.wall_seconds > 0)
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(limits.wall_seconds));

  Ideal scratch;
  auto emit = [&]() {
    ++local_count;
    if (shared_count) {
      long long total = shared_count->fetch_add(1) + 1;
      if (limits.max_ideals >= 0 && total > limits.max_ideals)
        throw ResourceLimitError("ideal budget exceeded");
    } else if (limits.max_ideals >= 0 && local_count > limits.max_ideals) {
      throw ResourceLimitError("ideal budget exceeded");
    }
    if (limits.wall_seconds > 0 && (local_count & 1023) == 0 &&
        std::chrono::steady_clock::now() > deadline)
      throw ResourceLimitError("wall-clock budget exceeded");
    scratch.elements.clear();
    for (int m : st.members) scratch.elements.push_back(nodes_[m].pc);
    scratch.dim_vector = st.dim;
    sink(scratch);
  };

  int last = st.members.empty() ? -1 : st.members.back();

  std::function<void(const std::vector<int>&, int)> rec = [&](const std::vector<int>& add,
                                                              int last_idx) {
    if ((int)st.members.size() >= max_size) return;
    for (size_t i = 0; i < add.size(); ++i) {
      int c = add[i];
      if (last_idx >= 0 && !less(last_idx, c)) continue;
      push_member(c);
      emit();

      std::vector<int> next;
      next.reserve(add.size());
      for (size_t j = 0; j < add.size(); ++j)
        if (j != i) next.push_back(add[j]);
      for (const auto& [arrow, child] : class_children(mt_, nodes_[c].pc)) {
        (void)arrow;
        int idx = intern(child);
        if (st.in_set.count(idx)) continue;
        if (std::find(next.begin(), next.end(), idx) != next.end()) continue;
        if (!is_addable(idx)) continue;
        next.insert(std::upper_bound(next.begin(), next.end(), idx,
                                     [&](int a, int b) { return less(a, b); }),
                    idx);
      }
      rec(next, c);

      st.members.pop_back();
      st.in_set.erase(c);
      --st.dim[nodes_[c].vertex];
    }
  };

  if (emit_seed) emit();
  rec(addable, last);
}

int dt_sign(const TilingSpec& t, int base_vertex, const DimVector& a) {
  std::int64_t e = a.at(base_vertex) + ringel_form(t, a, a);
  return (e % 2 + 2) % 2 == 0 ? +1 : -1;
}

SeriesByDim apply_dt_signs(const TilingSpec& t, const SeriesByDim& z) {
  SeriesByDim out = z;
  out.dt_signed = true;
  for (auto& [alpha, c] : out.coeff) c *= dt_sign(t, z.base_vertex, alpha);
  return out;
}

std::string series_by_dim_to_string(const SeriesByDim& s, bool tsv) {
  std::vector<std::pair<DimVector, long long>> rows(s.coeff.begin(), s.coeff.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    long long da = 0, db = 0;
    for (auto v : a.first) da += v;
    for (auto v : b.first) db += v;
    if (da != db) return da < db;
    return a.first < b.first;
  });
  std::ostringstream out;
  const char* True = "true";
  const char* False = "false";
  if (tsv) {
    out << "# vertex=" << s.base_vertex << "\tmax_size=" << s.max_size
        << "\tsigned=" << (s.dt_signed ? True : False) << "\n";
    out << "# alpha\tcount\n";
  } else {
    out << "# vertex=" << s.base_vertex << " max_size=" << s.max_size
        << " signed=" << (s.dt_signed ? True : False) << "\n";
  }
  for (const auto& [alpha, c] : rows) {
    std::string a;
    for (size_t i = 0; i < alpha.size(); ++i) {
      if (i) a += ",";
      a += std::to_string(alpha[i]);
    }
    if (tsv)
      out << a << "\t" << c << "\n";
    else
      out << "alpha=" << a << " count=" << c << "\n";
  }
  return out.str();
}

TruncatedSeries series_from_counts(const SeriesByDim& s, int trunc_degree) {
  TruncatedSeries f(s.num_vertices, trunc_degree);
  for (const auto& [alpha, c] : s.coeff) {
    Mono m(alpha.begin(), alpha.end());
    f.add(m, rat(c));
  }
  return f;
}

}  // namespace branedt
