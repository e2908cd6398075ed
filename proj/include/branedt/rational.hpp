#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace branedt {

// Exact arithmetic everywhere: unbounded integers and canonical rationals.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Prints "p" for integers and "p/q" otherwise.
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::int64_t to_int64(const Int& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer out of int64 range");
  return static_cast<std::int64_t>(v.get_si());
}

struct VectorHash {
  template <typename T>
  std::size_t operator()(const std::vector<T>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (const T& x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace branedt
