#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bsym/errors.hpp"

namespace bsym {

/// Variable index, 1-based: x1 .. xn. x1 is the most significant bit of a
/// truth-table row index, so bits[0] = f(0,...,0).
using var_id = std::uint32_t;

/// Index into the manager's node pool. 0 and 1 are the terminals.
using node_ref = std::uint32_t;

/// Exact unbounded integer for satisfying-assignment counts.
using big_uint = boost::multiprecision::cpp_int;

enum class bool_op : std::uint32_t { op_and, op_or, op_xor };

/// Explicit truth vector of a function over n variables. bits has size 2^n;
/// bits[m] is the value at the assignment whose i-th most significant bit is
/// x_i. Intended for tests, parsers and the oracle, not for large n.
struct truth_table {
  std::uint32_t n = 0;
  std::vector<std::uint8_t> bits{0};

  truth_table() = default;
  truth_table(std::uint32_t n_, std::vector<std::uint8_t> bits_);

  /// Parses a bare 01-string, most significant assignment last ("0110" is
  /// XOR). Length must be a power of two.
  static truth_table from_string(std::string_view s);
  std::string to_string() const;

  std::size_t size() const { return bits.size(); }
  bool operator==(const truth_table&) const = default;
};

class manager;

/// Handle to a function rooted in some manager. Cheap to copy; valid as long
/// as its manager lives. Default-constructed handles are invalid.
class func {
public:
  func() = default;

  bool valid() const noexcept { return mgr_ != nullptr; }
  manager& owner() const;
  node_ref root() const noexcept { return root_; }
  bool is_zero() const noexcept { return mgr_ != nullptr && root_ == 0; }
  bool is_one() const noexcept { return mgr_ != nullptr && root_ == 1; }

  friend bool operator==(const func& a, const func& b);
  friend bool operator!=(const func& a, const func& b) { return !(a == b); }

private:
  friend class manager;
  func(manager* m, node_ref r) : mgr_(m), root_(r) {}

  manager* mgr_ = nullptr;
  node_ref root_ = 0;
};

func operator~(const func& f);
func operator&(const func& a, const func& b);
func operator|(const func& a, const func& b);
func operator^(const func& a, const func& b);

/// Shared-node ROBDD manager with a fixed identity variable order x1 < x2 <
/// ... < xn. Reduction is maintained structurally: mk() never creates a node
/// with lo == hi and never duplicates a (var, lo, hi) triple, so two
/// functions are equal iff their roots are the same index. No complement
/// edges, no reordering. Operation and cofactor caches are unbounded.
class manager {
public:
  /// Throws limit_error if var_count > max_vars.
  explicit manager(var_id var_count, var_id max_vars = 64);

  manager(const manager&) = delete;
  manager& operator=(const manager&) = delete;

  var_id var_count() const noexcept { return n_; }
  var_id max_vars() const noexcept { return max_vars_; }
  /// Total pool size including the two terminals.
  std::size_t node_count() const noexcept { return nodes_.size(); }

  func zero() { return func(this, 0); }
  func one() { return func(this, 1); }
  func var(var_id i);

  func apply(bool_op op, const func& f, const func& g);
  func complement(const func& f);

  /// Restriction f|_{x_i = value}. The result no longer depends on x_i but
  /// still lives in the full n-variable space.
  func cofactor(const func& f, var_id i, bool value);

  /// Exact number of satisfying assignments over all 2^n inputs.
  big_uint sat_count(const func& f);

  /// Ascending list of variables f structurally depends on.
  std::vector<var_id> support(const func& f);

  func from_truth_table(const truth_table& t);
  /// Throws limit_error for n > 24.
  truth_table to_truth_table(const func& f);

  /// Canonicity makes this a root comparison. Throws if f and g live in
  /// different managers.
  bool equal(const func& f, const func& g) const;

  /// Audits orderedness, reducedness and unique-table consistency over the
  /// whole pool. Throws internal_error on any violation.
  void check_invariants() const;

private:
  struct node {
    var_id var;
    node_ref lo;
    node_ref hi;
  };

  struct triple {
    std::uint32_t a, b, c;
    bool operator==(const triple&) const = default;
  };
  struct triple_hash {
    std::size_t operator()(const triple& t) const noexcept {
      std::uint64_t h = t.a;
      h = (h * 0x9e3779b97f4a7c15ull) ^ t.b;
      h = (h * 0x9e3779b97f4a7c15ull) ^ t.c;
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
      return static_cast<std::size_t>(h);
    }
  };

  var_id terminal_level() const noexcept { return n_ + 1; }
  const func& require_owned(const func& f) const;
  node_ref mk(var_id v, node_ref lo, node_ref hi);
  node_ref apply_rec(bool_op op, node_ref f, node_ref g);
  node_ref cofactor_rec(node_ref f, var_id v, bool value);
  const big_uint& count_rec(node_ref f);
  node_ref build_rec(const std::vector<std::uint8_t>& bits, var_id level,
                     std::size_t lo, std::size_t hi);
  void fill_rec(node_ref f, var_id level, std::uint8_t* out, std::size_t len);

  var_id n_;
  var_id max_vars_;
  std::vector<node> nodes_;
  std::unordered_map<triple, node_ref, triple_hash> unique_;
  std::unordered_map<triple, node_ref, triple_hash> op_cache_;
  std::unordered_map<triple, node_ref, triple_hash> cof_cache_;
  std::unordered_map<node_ref, big_uint> count_cache_;
};

} // namespace bsym
