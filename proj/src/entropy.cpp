#include "bsym/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace bsym::entropy {

double dyadic::value() const {
  return num.convert_to<double>() / std::ldexp(1.0, static_cast<int>(log2_den));
}

double binary_entropy(const big_uint& ones, const big_uint& space) {
  if (ones == 0 || ones == space) return 0.0;
  // log2(N) - (a*log2(a) + b*log2(b))/N with a + b = N; commutative in a, b
  const double a = ones.convert_to<double>();
  const double b = big_uint(space - ones).convert_to<double>();
  const double n = space.convert_to<double>();
  return std::log2(n) - (a * std::log2(a) + b * std::log2(b)) / n;
}

bool counts_entropy_equal(const big_uint& a, const big_uint& b, const big_uint& space) {
  return a == b || a + b == space;
}

dyadic prob_one(const func& f) {
  manager& m = f.owner();
  return dyadic{m.sat_count(f), m.var_count()};
}

double entropy(const func& f) {
  manager& m = f.owner();
  return binary_entropy(m.sat_count(f), big_uint(1) << m.var_count());
}

double cofactor_entropy(const func& f, var_id i, bool value) {
  manager& m = f.owner();
  return entropy(m.cofactor(f, i, value));
}

double cond_entropy(const func& f, var_id i) {
  return 0.5 * (cofactor_entropy(f, i, false) + cofactor_entropy(f, i, true));
}

double cond_entropy_set(const func& f, const std::vector<var_id>& vars) {
  manager& m = f.owner();
  if (vars.size() > 20)
    throw limit_error("conditioning set of " + std::to_string(vars.size()) +
                      " variables exceeds the limit of 20");
  std::vector<var_id> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("conditioning set contains a duplicate variable");
  for (var_id v : sorted)
    if (v < 1 || v > m.var_count())
      throw std::invalid_argument("conditioning variable x" + std::to_string(v) +
                                  " out of range");
  const std::size_t k = sorted.size();
  double sum = 0.0;
  for (std::size_t a = 0; a < (std::size_t{1} << k); ++a) {
    func g = f;
    for (std::size_t b = 0; b < k; ++b)
      g = m.cofactor(g, sorted[b], (a >> b) & 1);
    sum += entropy(g);
  }
  return sum / std::ldexp(1.0, static_cast<int>(k));
}

entropy_profile profile(const func& f) {
  manager& m = f.owner();
  const std::uint32_t n = m.var_count();
  entropy_profile p;
  p.n = n;
  p.ones = m.sat_count(f);
  p.h = binary_entropy(p.ones, big_uint(1) << n);
  if (n == 0) return p;
  const big_uint half_space = big_uint(1) << (n - 1);
  p.rows.reserve(n);
  for (var_id v = 1; v <= n; ++v) {
    profile_row row;
    row.var = v;
    // cofactor counts over the full space are even; halve to the 2^(n-1) subspace
    row.ones0 = m.sat_count(m.cofactor(f, v, false)) >> 1;
    row.ones1 = m.sat_count(m.cofactor(f, v, true)) >> 1;
    row.h0 = binary_entropy(row.ones0, half_space);
    row.h1 = binary_entropy(row.ones1, half_space);
    row.hcond = 0.5 * (row.h0 + row.h1);
    p.rows.push_back(std::move(row));
  }
  return p;
}

} // namespace bsym::entropy
