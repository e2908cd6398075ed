#pragma once

#include <map>
#include <string>
#include <vector>

#include "branedt/rational.hpp"

namespace branedt {

using Mono = std::vector<int>;  // exponent vector

struct SeriesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact multivariate power series truncated by total degree.
class TruncatedSeries {
 public:
  TruncatedSeries(int num_vars, int trunc_degree)
      : num_vars_(num_vars), trunc_(trunc_degree) {}

  static TruncatedSeries constant(int num_vars, int trunc_degree, const Rat& c);
  static TruncatedSeries variable(int num_vars, int trunc_degree, int which);

  int num_vars() const { return num_vars_; }
  int trunc_degree() const { return trunc_; }
  const std::map<Mono, Rat>& terms() const { return coef_; }

  Rat coefficient(const Mono& m) const;
  void set(const Mono& m, Rat c);
  void add(const Mono& m, const Rat& c);

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries scaled(const Rat& c) const;

  bool operator==(const TruncatedSeries& o) const;

 private:
  void check_compatible(const TruncatedSeries& o) const;
  int num_vars_;
  int trunc_;
  std::map<Mono, Rat> coef_;  // nonzero coefficients only
};

// classical log: requires constant term 1
TruncatedSeries log_series(const TruncatedSeries& f);
// classical exp: requires constant term 0
TruncatedSeries exp_series(const TruncatedSeries& f);

// Adams operation: substitute x_i -> x_i^n
TruncatedSeries adams(int n, const TruncatedSeries& f);

// Exp(f) = exp(sum_{n>=1} psi_n(f)/n), f with zero constant term
TruncatedSeries plethystic_exp(const TruncatedSeries& f);
// Log(f) = sum_{n>=1} mu(n)/n psi_n(log f), f with constant term 1
TruncatedSeries plethystic_log(const TruncatedSeries& f);

int moebius(int n);

// collapse all variables onto a single one
TruncatedSeries specialize(const TruncatedSeries& f);

struct Polynomial {
  std::vector<Rat> c;  // c[k] is the x^k coefficient

  int degree() const;
  void trim();
  bool is_zero() const;
  Rat at(int k) const { return k >= 0 && k < (int)c.size() ? c[k] : Rat(0); }
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
std::string poly_to_string(const Polynomial& p);

// minimal linear recurrence by exact Berlekamp-Massey; found=false when the
// evidence is too thin (order > len/2 - 1)
struct RationalFunctionGuess {
  bool found = false;
  Polynomial numerator;
  Polynomial denominator;  // denominator(0) = 1
  int valid_through = 0;
};

RationalFunctionGuess detect_recurrence(const std::vector<Rat>& seq);

// power series of numerator/denominator through degree D; denominator(0) != 0
TruncatedSeries expand_rational(const Polynomial& num, const Polynomial& den, int D);

// "(x+2x^2)/(1-x^6)^2" style expressions over one variable x
std::pair<Polynomial, Polynomial> parse_rational_function(const std::string& text);

std::string series_to_string(const TruncatedSeries& f);

// coefficients of a single-variable series as a vector indexed by degree
std::vector<Rat> series_coeffs(const TruncatedSeries& f);

}  // namespace branedt
