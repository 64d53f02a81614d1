#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bsym/bdd.hpp"
#include "bsym/symmetry.hpp"

/// Brute-force truth-table reference implementations. Everything here is
/// computed by direct enumeration over all 2^n rows, deliberately sharing no
/// code with the BDD-based modules, so the two can be tested against each
/// other. Entropies use the textbook -p*log2(p) definition; conditional
/// entropies use joint-probability sums rather than cofactor averaging.
/// All entries are guarded to n <= 20.
namespace bsym::oracle {

inline constexpr std::uint32_t max_oracle_vars = 20;

/// Restriction of t with the given variables fixed; the result ranges over
/// the remaining variables in their original order.
truth_table tt_cofactor(const truth_table& t,
                        const std::vector<std::pair<var_id, bool>>& fixed);

std::uint64_t tt_count_ones(const truth_table& t);
double tt_entropy(const truth_table& t);
double tt_cond_entropy(const truth_table& t, var_id i);
double tt_cond_entropy_set(const truth_table& t, const std::vector<var_id>& vars);
std::vector<var_id> tt_support(const truth_table& t);

symmetry::pair_kind tt_classify_pair(const truth_table& t, var_id i, var_id j);

/// Same contract as symmetry::detect (minus timing fidelity): verdicts,
/// filter flags and the entropy profile all come from table enumeration;
/// only the group/summary aggregation plumbing is shared.
symmetry::symmetry_report tt_detect(const truth_table& t);

} // namespace bsym::oracle
