#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bsym/bdd.hpp"
#include "bsym/entropy.hpp"

namespace bsym::symmetry {

/// Exact verdict for an unordered variable pair.
///  ne: f invariant under swapping x_i, x_j
///  e:  f invariant under swapping x_i with the complement of x_j
///  m:  both at once
enum class pair_kind { none, ne, e, m };

struct pair_classification {
  var_id i = 0; ///< always i < j
  var_id j = 0;
  pair_kind kind = pair_kind::none;
  bool vacuous = false;   ///< neither variable is in the support
  bool filter_ne = false; ///< entropy filter admitted the NE check
  bool filter_e = false;  ///< entropy filter admitted the E check
};

struct literal {
  var_id var = 0;
  bool negated = false;
  bool operator==(const literal&) const = default;
};

/// ne: all internal pairs NE. e_mixed: NE/E mix, members carry a consistent
/// polarity assignment. m: at least one internal pair is M, polarities void.
enum class group_kind { ne, e_mixed, m };

struct symmetry_group {
  std::vector<literal> members; ///< ascending variable index
  group_kind kind = group_kind::ne;
  bool vacuous = false;
};

/// One (size, count) entry of the symmetry-group size multiset.
struct summary_entry {
  std::uint32_t size = 0;
  std::uint32_t count = 0;
  bool operator==(const summary_entry&) const = default;
};

enum class total_symmetry { no, yes_ne, yes_mixed_polarity };

struct detect_options {
  /// Skip the exact cofactor comparison for pairs whose cofactor-entropy
  /// equalities fail. Never changes verdicts, only work done.
  bool use_filter = true;
};

struct symmetry_report {
  std::uint32_t n = 0;
  entropy::entropy_profile profile;
  std::vector<pair_classification> pairs; ///< all i < j, including kind none
  std::vector<symmetry_group> groups;     ///< size >= 2 only
  std::vector<summary_entry> summary;     ///< sorted by size, descending
  total_symmetry total = total_symmetry::no;
  double seconds = 0.0;
};

/// Flattened index of pair (i, j), i < j, into an n*(n-1)/2 vector.
std::size_t pair_index(var_id i, var_id j, std::uint32_t n);

/// Exact non-equivalence symmetry test: f|{x_i=0,x_j=1} == f|{x_i=1,x_j=0}.
bool check_ne(const func& f, var_id i, var_id j);
/// Exact equivalence symmetry test: f|{x_i=0,x_j=0} == f|{x_i=1,x_j=1}.
bool check_e(const func& f, var_id i, var_id j);

/// Full exact classification of one pair, with filter flags filled in for
/// diagnostics (the verdict itself never consults the filter).
pair_classification classify_pair(const func& f, var_id i, var_id j);

struct filter_entry {
  bool ne = false;
  bool e = false;
};

/// Entropy-based candidate filter, decided on exact cofactor counts: the NE
/// check is admitted iff H(f|x_i=0) == H(f|x_j=0) and H(f|x_i=1) == H(f|x_j=1);
/// the E check iff the crossed equalities hold. Sound: a pair that is NE (E)
/// always passes its filter, so filtering never loses a symmetry.
std::vector<filter_entry> entropy_filter(const entropy::entropy_profile& p);

/// Classifies every pair (filter-gated unless disabled), aggregates groups,
/// and summarizes. The returned groups include vacuous ones, flagged.
symmetry_report detect(const func& f, const detect_options& opt = {});

/// Aggregates pair verdicts into disjoint symmetry groups plus the (size,
/// count) summary. Symmetric pairs connect variables; each connected
/// component is grown greedily (ascending variable index) into maximal
/// subgroups whose internal pairs are all symmetric with a consistent
/// polarity assignment, which splits deterministically any component that an
/// inconsistent classification list fails to make a clique. Exact
/// classifications always yield one group per component.
std::pair<std::vector<symmetry_group>, std::vector<summary_entry>>
group_summary(std::uint32_t n, const std::vector<pair_classification>& pairs);

/// yes_ne when every pair is NE or M; yes_mixed_polarity when every pair is
/// symmetric and some polarity assignment satisfies all NE/E constraints;
/// otherwise no. n < 2 is trivially yes_ne.
total_symmetry is_totally_symmetric(std::uint32_t n, const std::vector<pair_classification>& pairs);

struct circuit_report {
  std::vector<symmetry_report> outputs;
  std::vector<pair_classification> pairs; ///< circuit-level verdicts
  std::vector<symmetry_group> groups;
  std::vector<summary_entry> summary;
  total_symmetry total = total_symmetry::no;
  double seconds = 0.0;
};

/// Circuit-level symmetry over a multi-output function: a pair is
/// circuit-NE (circuit-E) iff it is NE (E) in every output, with M counting
/// as both; vacuous iff vacuous in every output. All outputs must live in
/// the same manager.
circuit_report detect_circuit(const std::vector<func>& outputs, const detect_options& opt = {});

} // namespace bsym::symmetry
