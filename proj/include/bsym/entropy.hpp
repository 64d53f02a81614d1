#pragma once

#include <cstdint>
#include <vector>

#include "bsym/bdd.hpp"

namespace bsym::entropy {

/// Exact probability num / 2^log2_den under the uniform input distribution.
struct dyadic {
  big_uint num;
  std::uint32_t log2_den = 0;

  big_uint den() const { return big_uint(1) << log2_den; }
  double value() const;
};

/// Binary entropy of ones/space in bits. Exactly symmetric in
/// ones <-> space - ones, so complementing a function cannot move the result
/// by even one ulp.
double binary_entropy(const big_uint& ones, const big_uint& space);

/// Decides H(a/space) == H(b/space) exactly: true iff a == b or a + b == space.
bool counts_entropy_equal(const big_uint& a, const big_uint& b, const big_uint& space);

dyadic prob_one(const func& f);

/// Output entropy H(f) in bits.
double entropy(const func& f);

/// H(f restricted to x_i = value).
double cofactor_entropy(const func& f, var_id i, bool value);

/// Conditional output entropy H(f | x_i), the equal-weight average of the two
/// cofactor entropies.
double cond_entropy(const func& f, var_id i);

/// H(f | all variables in vars). Enumerates all 2^|vars| restrictions;
/// throws limit_error for |vars| > 20.
double cond_entropy_set(const func& f, const std::vector<var_id>& vars);

struct profile_row {
  var_id var = 0;
  big_uint ones0; ///< ON-set size of f|x=0 over the 2^(n-1) remaining inputs
  big_uint ones1;
  double h0 = 0.0;
  double h1 = 0.0;
  double hcond = 0.0;
};

/// Per-variable cofactor entropies plus the global measures, the raw
/// material for the symmetry filter and for reports.
struct entropy_profile {
  std::uint32_t n = 0;
  big_uint ones; ///< ON-set size of f over 2^n
  double h = 0.0;
  std::vector<profile_row> rows; ///< rows[i-1] describes x_i
};

entropy_profile profile(const func& f);

} // namespace bsym::entropy
