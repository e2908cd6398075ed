#include "branedt/model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "branedt/simplex.hpp"

namespace branedt {

int TilingSpec::arrow_index(std::string_view name) const {
  for (int i = 0; i < (int)arrows.size(); ++i)
    if (arrows[i].name == name) return i;
  return -1;
}

int TilingSpec::max_shift() const {
  int m = 1;
  for (const auto& a : arrows) m = std::max({m, std::abs(a.dx), std::abs(a.dy)});
  return m;
}

int TilingSpec::max_face_excursion() const {
  int m = 0;
  for (const auto& f : faces) {
    int dx = 0, dy = 0;
    for (int ai : f.arrows) {
      dx += arrows[ai].dx;
      dy += arrows[ai].dy;
      m = std::max({m, std::abs(dx), std::abs(dy)});
    }
  }
  return m;
}

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum((unsigned char)c) && c != '_') return false;
  return true;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

TilingSpec parse_tiling(const std::string& text) {
  TilingSpec t;
  std::map<std::string, int> by_name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int stage = 0;  // 0: expect vertices, 1: arrows, 2: faces
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "vertices") {
      if (stage != 0) fail(lineno, "duplicate or misplaced 'vertices' line");
      if (!(ls >> t.vertex_count) || t.vertex_count <= 0)
        fail(lineno, "expected a positive vertex count");
      stage = 1;
    } else if (kw == "arrow") {
      if (stage == 0) fail(lineno, "'vertices' must come first");
      if (stage == 2) fail(lineno, "arrows must precede faces");
      Arrow a;
      if (!(ls >> a.name >> a.src >> a.dst >> a.dx >> a.dy))
        fail(lineno, "expected: arrow <name> <src> <dst> <dx> <dy>");
      if (!valid_name(a.name)) fail(lineno, "bad arrow name '" + a.name + "'");
      if (by_name.count(a.name)) fail(lineno, "duplicate arrow name '" + a.name + "'");
      if (a.src < 0 || a.src >= t.vertex_count || a.dst < 0 || a.dst >= t.vertex_count)
        fail(lineno, "vertex index out of range");
      by_name[a.name] = (int)t.arrows.size();
      t.arrows.push_back(a);
    } else if (kw == "face") {
      if (stage == 0) fail(lineno, "'vertices' must come first");
      stage = 2;
      Face f;
      std::string sign;
      if (!(ls >> sign) || (sign != "+" && sign != "-"))
        fail(lineno, "expected face sign '+' or '-'");
      f.sign = sign == "+" ? +1 : -1;
      std::string name;
      while (ls >> name) {
        auto it = by_name.find(name);
        if (it == by_name.end()) fail(lineno, "unknown arrow '" + name + "'");
        f.arrows.push_back(it->second);
      }
      if (f.arrows.empty()) fail(lineno, "empty face");
      t.faces.push_back(f);
    } else {
      fail(lineno, "unknown keyword '" + kw + "'");
    }
    std::string extra;
    if (kw != "face" && (ls >> extra)) fail(lineno, "trailing tokens");
  }
  if (stage == 0) throw ParseError("missing 'vertices' line");
  return t;
}

std::string tiling_to_text(const TilingSpec& t) {
  std::ostringstream out;
  out << "vertices " << t.vertex_count << "\n";
  for (const auto& a : t.arrows)
    out << "arrow " << a.name << " " << a.src << " " << a.dst << " " << a.dx << " " << a.dy
        << "\n";
  for (const auto& f : t.faces) {
    out << "face " << (f.sign > 0 ? "+" : "-");
    for (int ai : f.arrows) out << " " << t.arrows[ai].name;
    out << "\n";
  }
  return out.str();
}

ValidationReport validate_tiling(const TilingSpec& t) {
  ValidationReport rep;
  auto issue = [&rep](std::string inv, std::string wit) {
    rep.issues.push_back({std::move(inv), std::move(wit)});
  };

  std::vector<int> plus_count(t.arrows.size(), 0), minus_count(t.arrows.size(), 0);
  for (const auto& f : t.faces)
    for (int ai : f.arrows) (f.sign > 0 ? plus_count[ai] : minus_count[ai])++;
  for (int i = 0; i < (int)t.arrows.size(); ++i) {
    if (plus_count[i] != 1)
      issue("arrow in exactly one +1 face",
            "arrow " + t.arrows[i].name + " appears in " + std::to_string(plus_count[i]) +
                " +1 faces");
    if (minus_count[i] != 1)
      issue("arrow in exactly one -1 face",
            "arrow " + t.arrows[i].name + " appears in " + std::to_string(minus_count[i]) +
                " -1 faces");
  }

  for (int fi = 0; fi < (int)t.faces.size(); ++fi) {
    const auto& f = t.faces[fi];
    int dx = 0, dy = 0;
    bool chained = true;
    for (size_t k = 0; k < f.arrows.size(); ++k) {
      const Arrow& a = t.arrows[f.arrows[k]];
      const Arrow& b = t.arrows[f.arrows[(k + 1) % f.arrows.size()]];
      if (a.dst != b.src) chained = false;
      dx += a.dx;
      dy += a.dy;
    }
    if (!chained)
      issue("face cycle composes head-to-tail", "face #" + std::to_string(fi));
    if (dx != 0 || dy != 0)
      issue("face cycle has zero total shift",
            "face #" + std::to_string(fi) + " shifts to (" + std::to_string(dx) + "," +
                std::to_string(dy) + ")");
  }

  long long euler = (long long)t.vertex_count - (long long)t.arrows.size() + (long long)t.faces.size();
  if (euler != 0)
    issue("Euler characteristic |Q0|-|Q1|+|Q2| = 0", "got " + std::to_string(euler));

  if (t.vertex_count > 0) {
    std::vector<char> seen(t.vertex_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& a : t.arrows) {
        int o = -1;
        if (a.src == v) o = a.dst;
        else if (a.dst == v) o = a.src;
        if (o >= 0 && !seen[o]) {
          seen[o] = 1;
          stack.push_back(o);
        }
      }
    }
    for (int v = 0; v < t.vertex_count; ++v)
      if (!seen[v]) {
        issue("quiver is connected", "vertex " + std::to_string(v) + " unreachable");
        break;
      }
  }

  rep.ok = rep.issues.empty();
  return rep;
}

namespace {

TilingSpec make_c3() {
  return parse_tiling(
      "vertices 1\n"
      "arrow x 0 0 1 0\n"
      "arrow y 0 0 0 1\n"
      "arrow z 0 0 -1 -1\n"
      "face + x y z\n"
      "face - x z y\n");
}

TilingSpec make_conifold() {
  return parse_tiling(
      "vertices 2\n"
      "arrow x0 0 1 0 0\n"
      "arrow x1 1 0 1 0\n"
      "arrow y0 1 0 0 1\n"
      "arrow y1 0 1 -1 -1\n"
      "face + y0 y1 x1 x0\n"
      "face - y1 y0 x0 x1\n");
}

TilingSpec make_c3_zn(int n) {
  std::ostringstream s;
  s << "vertices " << n << "\n";
  for (int i = 0; i < n; ++i) {
    int xdx = 0, xdy = (i == n - 1) ? 1 : 0;
    s << "arrow x" << i << " " << i << " " << (i + 1) % n << " " << xdx << " " << xdy << "\n";
  }
  for (int i = 0; i < n; ++i) {
    int ydy = (i == n - 1) ? -1 : 0;
    s << "arrow y" << i << " " << (i + 1) % n << " " << i << " 1 " << ydy << "\n";
  }
  for (int i = 0; i < n; ++i) s << "arrow z" << i << " " << i << " " << i << " -1 0\n";
  for (int i = 0; i < n; ++i)
    s << "face + x" << i << " z" << (i + 1) % n << " y" << i << "\n"
      << "face - x" << i << " y" << i << " z" << i << "\n";
  return parse_tiling(s.str());
}

// Suspended pinch point. Quiver vertices keep their customary labels
// 1, 2 and the third one becomes 0, so that vertex 1 carries the loop.
TilingSpec make_spp() {
  return parse_tiling(
      "vertices 3\n"
      "arrow x11 1 1 1 0\n"
      "arrow x12 1 2 0 0\n"
      "arrow x21 2 1 -1 0\n"
      "arrow x23 2 0 1 1\n"
      "arrow x32 0 2 0 -1\n"
      "arrow x13 1 0 0 0\n"
      "arrow x31 0 1 -1 0\n"
      "face + x21 x12 x23 x32\n"
      "face - x32 x23 x31 x13\n"
      "face + x13 x31 x11\n"
      "face - x12 x21 x11\n");
}

// dP3, model I. Labels 1..5 kept, 6 becomes 0.
TilingSpec make_dp3() {
  return parse_tiling(
      "vertices 6\n"
      "arrow x12 1 2 0 0\n"
      "arrow x23 2 3 0 0\n"
      "arrow x34 3 4 0 0\n"
      "arrow x45 4 5 0 0\n"
      "arrow x56 5 0 0 0\n"
      "arrow x61 0 1 0 0\n"
      "arrow x13 1 3 1 0\n"
      "arrow x35 3 5 0 1\n"
      "arrow x51 5 1 -1 -1\n"
      "arrow x24 2 4 1 1\n"
      "arrow x46 4 0 -1 0\n"
      "arrow x62 0 2 0 -1\n"
      "face + x12 x23 x34 x45 x56 x61\n"
      "face + x13 x35 x51\n"
      "face + x24 x46 x62\n"
      "face - x23 x35 x56 x62\n"
      "face - x13 x34 x46 x61\n"
      "face - x12 x24 x45 x51\n");
}

}  // namespace

std::vector<std::string> builtin_names() { return {"c3", "conifold", "c3-zn", "spp", "dp3"}; }

TilingSpec builtin_tiling(const std::string& name, std::optional<int> param) {
  if (name == "c3") return make_c3();
  if (name == "conifold") return make_conifold();
  if (name == "c3-zn") {
    if (!param) throw std::invalid_argument("c3-zn needs a parameter n >= 2");
    if (*param < 2) throw std::invalid_argument("c3-zn parameter must be >= 2");
    return make_c3_zn(*param);
  }
  if (name == "spp") return make_spp();
  if (name == "dp3") return make_dp3();
  throw std::invalid_argument("unknown builtin tiling '" + name + "'");
}

std::vector<PotentialTerm> potential_terms(const TilingSpec& t) {
  std::vector<PotentialTerm> terms;
  for (const auto& f : t.faces) {
    std::vector<std::string> names;
    for (int ai : f.arrows) names.push_back(t.arrows[ai].name);
    // rotate so the smallest word starts the necklace
    size_t n = names.size();
    size_t best = 0;
    for (size_t r = 1; r < n; ++r) {
      for (size_t k = 0; k < n; ++k) {
        int c = names[(r + k) % n].compare(names[(best + k) % n]);
        if (c < 0) best = r;
        if (c != 0) break;
      }
    }
    std::vector<std::string> rotated;
    for (size_t k = 0; k < n; ++k) rotated.push_back(names[(best + k) % n]);
    terms.push_back({f.sign, std::move(rotated)});
  }
  return terms;
}

std::int64_t ringel_form(const TilingSpec& t, const DimVector& a, const DimVector& b) {
  if ((int)a.size() != t.vertex_count || (int)b.size() != t.vertex_count)
    throw std::invalid_argument("dimension vector size mismatch");
  std::int64_t s = 0;
  for (int i = 0; i < t.vertex_count; ++i) s += a[i] * b[i];
  for (const auto& ar : t.arrows) s -= a[ar.src] * b[ar.dst];
  return s;
}

std::vector<std::int64_t> WeightLattice::coord(const std::vector<Int>& content) const {
  std::vector<std::int64_t> out(lattice_rank, 0);
  for (int j = 0; j < lattice_rank; ++j) {
    Int acc = 0;
    for (int i = 0; i < ambient_rank; ++i)
      if (content[i] != 0) acc += content[i] * coord_basis[i][j];
    out[j] = to_int64(acc);
  }
  return out;
}

WeightLattice weight_lattice(const TilingSpec& t) {
  int n = (int)t.arrows.size();
  WeightLattice w;
  w.ambient_rank = n;

  std::vector<std::vector<Int>> d2;
  for (const auto& f : t.faces) {
    std::vector<Int> row(n, 0);
    for (int ai : f.arrows) row[ai] += 1;
    d2.push_back(std::move(row));
  }
  for (size_t f = 1; f < d2.size(); ++f) {
    std::vector<Int> rel(n);
    for (int i = 0; i < n; ++i) rel[i] = d2[f][i] - d2[0][i];
    w.relation_basis.push_back(std::move(rel));
  }

  IntMatrix rel = w.relation_basis;
  if (rel.empty()) rel.push_back(std::vector<Int>(n, 0));
  SmithResult snf = smith_normal_form(rel);
  w.invariant_factors = snf.invariants;
  for (const Int& s : snf.invariants)
    if (s != 1)
      throw LatticeError("weight lattice has torsion: invariant factor " + s.get_str());

  int r = snf.rank;
  w.lattice_rank = n - r;
  w.coord_basis.assign(n, std::vector<Int>(w.lattice_rank, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < w.lattice_rank; ++j) w.coord_basis[i][j] = snf.v[i][r + j];

  for (int a = 0; a < n; ++a) {
    std::vector<Int> e(n, 0);
    e[a] = 1;
    w.arrow_weight.push_back(w.coord(e));
  }
  w.omega_bar = w.coord(d2[0]);
  return w;
}

PositivityCertificate positivity_certificate(const TilingSpec& t, const WeightLattice& w) {
  // variables: lattice coordinates of R split into +/- parts, then t+/t-
  int L = w.lattice_rank;
  int nv = 2 * L + 2;
  LinearProgram lp(nv);
  auto term = [&](const std::vector<std::int64_t>& wt, std::vector<Rat>& row) {
    for (int j = 0; j < L; ++j) {
      row[2 * j] += rat(wt[j]);
      row[2 * j + 1] -= rat(wt[j]);
    }
  };
  for (const auto& aw : w.arrow_weight) {
    std::vector<Rat> row(nv, Rat(0));
    term(aw, row);
    row[2 * L] = rat(-1);
    row[2 * L + 1] = rat(1);
    lp.add_ge(std::move(row), Rat(0));  // R(a) - t >= 0
  }
  {
    std::vector<Rat> row(nv, Rat(0));
    term(w.omega_bar, row);
    lp.add_eq(std::move(row), rat(2));  // R(omega_bar) = 2
  }
  std::vector<Rat> obj(nv, Rat(0));
  obj[2 * L] = rat(1);
  obj[2 * L + 1] = rat(-1);
  LPResult sol = lp.maximize(obj);

  PositivityCertificate cert;
  if (sol.status != LPStatus::Optimal) {
    cert.feasible = false;  // the equality R(omega)=2 was unsatisfiable
    return cert;
  }
  cert.min_slack = sol.objective;
  cert.functional.resize(L);
  for (int j = 0; j < L; ++j) cert.functional[j] = sol.x[2 * j] - sol.x[2 * j + 1];
  for (int a = 0; a < (int)t.arrows.size(); ++a) {
    Rat v(0);
    for (int j = 0; j < L; ++j) v += cert.functional[j] * rat(w.arrow_weight[a][j]);
    cert.arrow_value.push_back(v);
  }
  cert.feasible = cert.min_slack > 0;
  if (!cert.feasible) {
    for (int a = 0; a < (int)t.arrows.size(); ++a)
      if (cert.arrow_value[a] <= 0) cert.tight_arrows.push_back(t.arrows[a].name);
  }
  return cert;
}

}  // namespace branedt
