#include "branedt/cover.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace branedt {

int MuTable::arc_head(int tail_id, int arrow) const {
  const Arrow& a = tiling->arrows[arrow];
  return window.id(a.dst, window.dx_of(tail_id) + a.dx, window.dy_of(tail_id) + a.dy);
}

int MuTable::arc_tail(int head_id, int arrow) const {
  const Arrow& a = tiling->arrows[arrow];
  return window.id(a.src, window.dx_of(head_id) - a.dx, window.dy_of(head_id) - a.dy);
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 2;

struct Search {
  std::vector<int> dist, parent_id, parent_arrow;
};

Search zero_one_bfs(const TilingSpec& t, const Matching& m0, const Window& win, int base_id) {
  Search s;
  s.dist.assign(win.size(), kInf);
  s.parent_id.assign(win.size(), -1);
  s.parent_arrow.assign(win.size(), -1);
  std::vector<std::vector<int>> out(t.vertex_count);
  for (int a = 0; a < (int)t.arrows.size(); ++a) out[t.arrows[a].src].push_back(a);

  std::deque<int> dq{base_id};
  s.dist[base_id] = 0;
  while (!dq.empty()) {
    int u = dq.front();
    dq.pop_front();
    int du = s.dist[u];
    for (int a : out[win.vertex_of(u)]) {
      const Arrow& ar = t.arrows[a];
      int v = win.id(ar.dst, win.dx_of(u) + ar.dx, win.dy_of(u) + ar.dy);
      if (v < 0) continue;
      int w = m0.contains(a) ? 1 : 0;
      if (du + w < s.dist[v]) {
        s.dist[v] = du + w;
        s.parent_id[v] = u;
        s.parent_arrow[v] = a;
        if (w == 0)
          dq.push_front(v);
        else
          dq.push_back(v);
      }
    }
  }
  return s;
}

// Zero-weight arcs must be acyclic: a strict cycle is a power of the face
// cycle and has M0-degree >= 1. A violation means the tiling is inconsistent.
void check_zero_acyclic(const TilingSpec& t, const Matching& m0, const Window& win) {
  std::vector<int> indeg(win.size(), 0);
  std::vector<std::vector<int>> out(t.vertex_count);
  for (int a = 0; a < (int)t.arrows.size(); ++a)
    if (!m0.contains(a)) out[t.arrows[a].src].push_back(a);
  auto heads = [&](int u, auto&& fn) {
    for (int a : out[win.vertex_of(u)]) {
      const Arrow& ar = t.arrows[a];
      int v = win.id(ar.dst, win.dx_of(u) + ar.dx, win.dy_of(u) + ar.dy);
      if (v >= 0) fn(v);
    }
  };
  for (int u = 0; u < win.size(); ++u) heads(u, [&](int v) { ++indeg[v]; });
  std::vector<int> stack;
  int processed = 0;
  for (int u = 0; u < win.size(); ++u)
    if (indeg[u] == 0) stack.push_back(u);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++processed;
    heads(u, [&](int v) {
      if (--indeg[v] == 0) stack.push_back(v);
    });
  }
  if (processed != win.size())
    throw ConsistencyError("zero-weight arcs form a cycle: tiling is inconsistent");
}

}  // namespace

MuTable mu_table(const TilingSpec& t, const Matching& m0, int base_vertex, int radius) {
  if (radius < 1) throw std::invalid_argument("window radius must be >= 1");
  if (base_vertex < 0 || base_vertex >= t.vertex_count)
    throw std::invalid_argument("base vertex out of range");

  MuTable mt;
  mt.tiling = &t;
  mt.m0 = m0;
  mt.window = Window(t.vertex_count, radius);
  mt.base_vertex = base_vertex;
  mt.base_id = mt.window.id(base_vertex, 0, 0);

  check_zero_acyclic(t, m0, mt.window);

  Search primary = zero_one_bfs(t, m0, mt.window, mt.base_id);
  Window bigger(t.vertex_count, radius + 1);
  Search check = zero_one_bfs(t, m0, bigger, bigger.id(base_vertex, 0, 0));

  mt.stabilized = true;
  for (int id = 0; id < mt.window.size(); ++id) {
    if (mt.window.chebyshev(id) > radius - 1) continue;
    int v = mt.window.vertex_of(id);
    int big = bigger.id(v, mt.window.dx_of(id), mt.window.dy_of(id));
    int a = primary.dist[id] == kInf ? -1 : primary.dist[id];
    int b = check.dist[big] == kInf ? -1 : check.dist[big];
    if (a != b) mt.stabilized = false;
  }

  mt.mu.assign(mt.window.size(), -1);
  mt.parent_id.assign(mt.window.size(), -1);
  mt.parent_arrow.assign(mt.window.size(), -1);
  for (int id = 0; id < mt.window.size(); ++id) {
    if (primary.dist[id] == kInf) {
      if (mt.window.chebyshev(id) <= radius - 2)
        throw WindowError("interior cover vertex unreachable; tiling disconnected or window too small");
      continue;
    }
    mt.mu[id] = primary.dist[id];
    mt.parent_id[id] = primary.parent_id[id];
    mt.parent_arrow[id] = primary.parent_arrow[id];
  }

  mt.out_arrows.assign(t.vertex_count, {});
  mt.in_arrows.assign(t.vertex_count, {});
  for (int a = 0; a < (int)t.arrows.size(); ++a) {
    mt.out_arrows[t.arrows[a].src].push_back(a);
    mt.in_arrows[t.arrows[a].dst].push_back(a);
  }
  return mt;
}

std::vector<std::pair<int, PathClass>> class_children(const MuTable& mt, const PathClass& c) {
  std::vector<std::pair<int, PathClass>> out;
  int tail = c.cover_id;
  for (int a : mt.out_arrows[mt.window.vertex_of(tail)]) {
    int head = mt.arc_head(tail, a);
    if (head < 0 || mt.mu[head] < 0)
      throw WindowError("window exhausted while listing class children");
    int k = c.k + mt.mu[tail] + mt.arc_weight(a) - mt.mu[head];
    out.push_back({a, PathClass{head, k}});
  }
  return out;
}

std::vector<std::pair<int, PathClass>> class_predecessors(const MuTable& mt, const PathClass& c) {
  std::vector<std::pair<int, PathClass>> out;
  int head = c.cover_id;
  for (int a : mt.in_arrows[mt.window.vertex_of(head)]) {
    int tail = mt.arc_tail(head, a);
    if (tail < 0 || mt.mu[tail] < 0)
      throw WindowError("window exhausted while listing class predecessors");
    int k = c.k + mt.mu[head] - mt.arc_weight(a) - mt.mu[tail];
    if (k >= 0) out.push_back({a, PathClass{tail, k}});
  }
  return out;
}

std::vector<int> witness_content(const MuTable& mt, int cover_id) {
  std::vector<int> content(mt.tiling->arrows.size(), 0);
  int id = cover_id;
  while (id != mt.base_id) {
    int a = mt.parent_arrow[id];
    if (a < 0) throw WindowError("no witness path recorded");
    ++content[a];
    id = mt.parent_id[id];
  }
  return content;
}

std::vector<std::int64_t> class_weight(const MuTable& mt, const WeightLattice& w,
                                       const PathClass& c) {
  std::vector<int> content = witness_content(mt, c.cover_id);
  std::vector<std::int64_t> out(w.lattice_rank, 0);
  for (int a = 0; a < (int)content.size(); ++a)
    if (content[a])
      for (int j = 0; j < w.lattice_rank; ++j) out[j] += (std::int64_t)content[a] * w.arrow_weight[a][j];
  for (int j = 0; j < w.lattice_rank; ++j) out[j] += (std::int64_t)c.k * w.omega_bar[j];
  return out;
}

bool in_canonical_matching(const MuTable& mt, int tail_id, int arrow) {
  int head = mt.arc_head(tail_id, arrow);
  if (head < 0 || mt.mu[head] < 0 || mt.mu[tail_id] < 0)
    throw WindowError("canonical matching queried outside the window");
  return mt.mu[tail_id] + mt.arc_weight(arrow) - mt.mu[head] >= 1;
}

std::vector<CoverArc> canonical_matching_arcs(const MuTable& mt, int max_chebyshev) {
  if (!mt.stabilized) throw WindowError("mu table not stabilized");
  std::vector<CoverArc> out;
  for (int id = 0; id < mt.window.size(); ++id) {
    if (mt.window.chebyshev(id) > max_chebyshev || mt.mu[id] < 0) continue;
    for (int a : mt.out_arrows[mt.window.vertex_of(id)]) {
      int head = mt.arc_head(id, a);
      if (head < 0 || mt.window.chebyshev(head) > max_chebyshev || mt.mu[head] < 0) continue;
      if (mt.mu[id] + mt.arc_weight(a) - mt.mu[head] >= 1) out.push_back({id, a});
    }
  }
  return out;
}

std::vector<FaceInstance> face_instances(const MuTable& mt, int max_chebyshev) {
  const TilingSpec& t = *mt.tiling;
  std::vector<FaceInstance> out;
  int r = std::min(max_chebyshev, mt.window.radius());
  for (int f = 0; f < (int)t.faces.size(); ++f) {
    const Face& face = t.faces[f];
    for (int cx = -r; cx <= r; ++cx)
      for (int cy = -r; cy <= r; ++cy) {
        FaceInstance inst;
        inst.face = f;
        int x = cx, y = cy;
        bool ok = true;
        for (int ai : face.arrows) {
          int tail = mt.window.id(t.arrows[ai].src, x, y);
          x += t.arrows[ai].dx;
          y += t.arrows[ai].dy;
          if (tail < 0 || std::max(std::abs(x), std::abs(y)) > max_chebyshev ||
              mt.window.chebyshev(tail) > max_chebyshev) {
            ok = false;
            break;
          }
          inst.arcs.push_back({tail, ai});
        }
        if (ok) out.push_back(std::move(inst));
      }
  }
  return out;
}

}  // namespace branedt
