#include "branedt/series.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace branedt {

namespace {

int total_degree(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }

}  // namespace

TruncatedSeries TruncatedSeries::constant(int num_vars, int trunc_degree, const Rat& c) {
  TruncatedSeries s(num_vars, trunc_degree);
  if (c != 0) s.coef_[Mono(num_vars, 0)] = c;
  return s;
}

TruncatedSeries TruncatedSeries::variable(int num_vars, int trunc_degree, int which) {
  TruncatedSeries s(num_vars, trunc_degree);
  if (trunc_degree >= 1) {
    Mono m(num_vars, 0);
    m[which] = 1;
    s.coef_[m] = Rat(1);
  }
  return s;
}

Rat TruncatedSeries::coefficient(const Mono& m) const {
  auto it = coef_.find(m);
  return it == coef_.end() ? Rat(0) : it->second;
}

void TruncatedSeries::set(const Mono& m, Rat c) {
  if ((int)m.size() != num_vars_) throw SeriesError("monomial width mismatch");
  if (total_degree(m) > trunc_) return;
  if (c == 0)
    coef_.erase(m);
  else
    coef_[m] = std::move(c);
}

void TruncatedSeries::add(const Mono& m, const Rat& c) {
  if (total_degree(m) > trunc_ || c == 0) return;
  auto [it, fresh] = coef_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) coef_.erase(it);
  }
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (num_vars_ != o.num_vars_ || trunc_ != o.trunc_)
    throw SeriesError("series shape mismatch");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries r = *this;
  for (const auto& [m, c] : o.coef_) r.add(m, c);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries r = *this;
  for (const auto& [m, c] : o.coef_) r.add(m, -c);
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries r(num_vars_, trunc_);
  Mono sum(num_vars_);
  for (const auto& [ma, ca] : coef_) {
    int da = total_degree(ma);
    for (const auto& [mb, cb] : o.coef_) {
      if (da + total_degree(mb) > trunc_) continue;
      for (int i = 0; i < num_vars_; ++i) sum[i] = ma[i] + mb[i];
      r.add(sum, ca * cb);
    }
  }
  return r;
}

TruncatedSeries TruncatedSeries::scaled(const Rat& c) const {
  TruncatedSeries r(num_vars_, trunc_);
  if (c == 0) return r;
  for (const auto& [m, v] : coef_) r.coef_[m] = v * c;
  return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return num_vars_ == o.num_vars_ && trunc_ == o.trunc_ && coef_ == o.coef_;
}

TruncatedSeries log_series(const TruncatedSeries& f) {
  Mono zero(f.num_vars(), 0);
  if (f.coefficient(zero) != 1) throw SeriesError("log needs constant term 1");
  TruncatedSeries g = f - TruncatedSeries::constant(f.num_vars(), f.trunc_degree(), Rat(1));
  TruncatedSeries acc(f.num_vars(), f.trunc_degree());
  TruncatedSeries power = g;
  for (int k = 1; k <= f.trunc_degree(); ++k) {
    Rat c = rat(k % 2 ? 1 : -1, k);
    acc = acc + power.scaled(c);
    if (k < f.trunc_degree()) power = power * g;
  }
  return acc;
}

TruncatedSeries exp_series(const TruncatedSeries& f) {
  Mono zero(f.num_vars(), 0);
  if (f.coefficient(zero) != 0) throw SeriesError("exp needs constant term 0");
  TruncatedSeries acc = TruncatedSeries::constant(f.num_vars(), f.trunc_degree(), Rat(1));
  TruncatedSeries power = f;
  Rat factorial(1);
  for (int k = 1; k <= f.trunc_degree(); ++k) {
    factorial *= k;
    acc = acc + power.scaled(Rat(1) / factorial);
    if (k < f.trunc_degree()) power = power * f;
  }
  return acc;
}

TruncatedSeries adams(int n, const TruncatedSeries& f) {
  if (n < 1) throw SeriesError("adams operation needs n >= 1");
  TruncatedSeries r(f.num_vars(), f.trunc_degree());
  Mono scaled(f.num_vars());
  for (const auto& [m, c] : f.terms()) {
    for (int i = 0; i < f.num_vars(); ++i) scaled[i] = m[i] * n;
    r.add(scaled, c);
  }
  return r;
}

TruncatedSeries plethystic_exp(const TruncatedSeries& f) {
  Mono zero(f.num_vars(), 0);
  if (f.coefficient(zero) != 0) throw SeriesError("Exp needs zero constant term");
  TruncatedSeries acc(f.num_vars(), f.trunc_degree());
  for (int n = 1; n <= f.trunc_degree(); ++n) acc = acc + adams(n, f).scaled(rat(1, n));
  return exp_series(acc);
}

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

TruncatedSeries plethystic_log(const TruncatedSeries& f) {
  Mono zero(f.num_vars(), 0);
  if (f.coefficient(zero) != 1) throw SeriesError("Log needs constant term 1");
  TruncatedSeries lg = log_series(f);
  TruncatedSeries acc(f.num_vars(), f.trunc_degree());
  for (int n = 1; n <= f.trunc_degree(); ++n) {
    int mu = moebius(n);
    if (mu == 0) continue;
    acc = acc + adams(n, lg).scaled(rat(mu, n));
  }
  return acc;
}

TruncatedSeries specialize(const TruncatedSeries& f) {
  TruncatedSeries r(1, f.trunc_degree());
  for (const auto& [m, c] : f.terms()) r.add(Mono{total_degree(m)}, c);
  return r;
}

int Polynomial::degree() const {
  for (int k = (int)c.size() - 1; k >= 0; --k)
    if (c[k] != 0) return k;
  return -1;
}

void Polynomial::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

bool Polynomial::is_zero() const { return degree() < 0; }

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at((int)i) + b.at((int)i);
  r.trim();
  return r;
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at((int)i) - b.at((int)i);
  r.trim();
  return r;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

std::string poly_to_string(const Polynomial& p) {
  std::ostringstream out;
  bool first = true;
  for (int k = 0; k < (int)p.c.size(); ++k) {
    if (p.c[k] == 0) continue;
    if (!first) out << " + ";
    out << rat_to_string(p.c[k]) << " * x^" << k;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

RationalFunctionGuess detect_recurrence(const std::vector<Rat>& seq) {
  RationalFunctionGuess guess;
  int n = (int)seq.size();
  if (n < 4) return guess;

  // Berlekamp-Massey over Q: connection polynomial c with c[0] = 1
  std::vector<Rat> c{Rat(1)}, b{Rat(1)};
  int L = 0, m = 1;
  Rat bd(1);
  for (int i = 0; i < n; ++i) {
    Rat d(0);
    for (int j = 0; j <= L && j < (int)c.size(); ++j) d += c[j] * seq[i - j];
    if (d == 0) {
      ++m;
    } else if (2 * L <= i) {
      std::vector<Rat> tmp = c;
      Rat coef = d / bd;
      if ((int)c.size() < (int)b.size() + m) c.resize(b.size() + m, Rat(0));
      for (size_t j = 0; j < b.size(); ++j) c[j + m] -= coef * b[j];
      L = i + 1 - L;
      b = tmp;
      bd = d;
      m = 1;
    } else {
      Rat coef = d / bd;
      if ((int)c.size() < (int)b.size() + m) c.resize(b.size() + m, Rat(0));
      for (size_t j = 0; j < b.size(); ++j) c[j + m] -= coef * b[j];
      ++m;
    }
  }

  if (L > n / 2 - 1) return guess;  // not enough evidence

  guess.denominator.c = c;
  guess.denominator.trim();
  Polynomial series;
  series.c = seq;
  Polynomial prod = poly_mul(series, guess.denominator);
  prod.c.resize(std::max<size_t>(1, (size_t)L), Rat(0));
  prod.trim();
  guess.numerator = prod;
  guess.valid_through = n - 1;
  guess.found = true;
  return guess;
}

TruncatedSeries expand_rational(const Polynomial& num, const Polynomial& den, int D) {
  if (den.at(0) == 0) throw SeriesError("denominator vanishes at 0");
  TruncatedSeries r(1, D);
  std::vector<Rat> s(D + 1, Rat(0));
  for (int k = 0; k <= D; ++k) {
    Rat acc = num.at(k);
    for (int j = 1; j <= k; ++j) acc -= den.at(j) * s[k - j];
    s[k] = acc / den.at(0);
    r.add(Mono{k}, s[k]);
  }
  return r;
}

namespace {

struct RationalFn {
  Polynomial num, den;  // den nonzero
};

RationalFn rf_const(Rat c) {
  RationalFn f;
  f.num.c = {std::move(c)};
  f.den.c = {Rat(1)};
  return f;
}

RationalFn rf_mul(const RationalFn& a, const RationalFn& b) {
  return {poly_mul(a.num, b.num), poly_mul(a.den, b.den)};
}

RationalFn rf_div(const RationalFn& a, const RationalFn& b) {
  if (b.num.is_zero()) throw SeriesError("division by zero in rational expression");
  return {poly_mul(a.num, b.den), poly_mul(a.den, b.num)};
}

RationalFn rf_add(const RationalFn& a, const RationalFn& b, bool subtract) {
  Polynomial l = poly_mul(a.num, b.den), r = poly_mul(b.num, a.den);
  return {subtract ? poly_sub(l, r) : poly_add(l, r), poly_mul(a.den, b.den)};
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  RationalFn parse() {
    RationalFn f = expr();
    skip();
    if (pos_ != s_.size()) throw SeriesError("trailing characters in expression");
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  RationalFn expr() {
    bool neg = false;
    skip();
    if (eat('-')) neg = true;
    else eat('+');
    RationalFn acc = term();
    if (neg) acc = rf_mul(rf_const(rat(-1)), acc);
    for (;;) {
      if (eat('+'))
        acc = rf_add(acc, term(), false);
      else if (eat('-'))
        acc = rf_add(acc, term(), true);
      else
        return acc;
    }
  }

  // implicit multiplication binds factors: "2x^2", "x(1-x)"
  RationalFn term() {
    RationalFn acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = rf_mul(acc, factor());
        continue;
      }
      if (eat('/')) {
        acc = rf_div(acc, factor());
        continue;
      }
      skip();
      if (pos_ < s_.size() && (std::isdigit((unsigned char)s_[pos_]) || s_[pos_] == 'x' || s_[pos_] == '(')) {
        acc = rf_mul(acc, factor());
        continue;
      }
      return acc;
    }
  }

  RationalFn factor() {
    RationalFn base = atom();
    if (eat('^')) {
      int e = integer();
      RationalFn acc = rf_const(rat(1));
      for (int i = 0; i < e; ++i) acc = rf_mul(acc, base);
      return acc;
    }
    return base;
  }

  RationalFn atom() {
    skip();
    if (eat('(')) {
      RationalFn f = expr();
      if (!eat(')')) throw SeriesError("missing ')'");
      return f;
    }
    if (pos_ < s_.size() && s_[pos_] == 'x') {
      ++pos_;
      RationalFn f;
      f.num.c = {Rat(0), Rat(1)};
      f.den.c = {Rat(1)};
      return f;
    }
    if (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) return rf_const(rat(integer()));
    throw SeriesError("expected number, 'x' or '(' in expression");
  }

  int integer() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_]))
      throw SeriesError("expected an integer");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return (int)v;
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

std::pair<Polynomial, Polynomial> parse_rational_function(const std::string& text) {
  ExprParser p(text);
  RationalFn f = p.parse();
  if (f.den.is_zero()) throw SeriesError("zero denominator");
  return {f.num, f.den};
}

std::string series_to_string(const TruncatedSeries& f) {
  std::vector<std::pair<Mono, Rat>> sorted(f.terms().begin(), f.terms().end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return total_degree(a.first) < total_degree(b.first);
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    if (!first) out << " + ";
    out << rat_to_string(c);
    for (int i = 0; i < f.num_vars(); ++i)
      if (m[i]) out << " * x" << (f.num_vars() > 1 ? std::to_string(i) : std::string()) << "^" << m[i];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::vector<Rat> series_coeffs(const TruncatedSeries& f) {
  if (f.num_vars() != 1) throw SeriesError("series_coeffs needs a single variable");
  std::vector<Rat> out(f.trunc_degree() + 1, Rat(0));
  for (const auto& [m, c] : f.terms()) out[m[0]] = c;
  return out;
}

}  // namespace branedt
