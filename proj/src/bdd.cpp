#include "bsym/bdd.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>
#include <utility>

namespace bsym {

namespace {

// op-cache tag space: bool_op values plus nothing else so far
constexpr std::uint32_t op_tag(bool_op op) { return static_cast<std::uint32_t>(op); }

} // namespace

truth_table::truth_table(std::uint32_t n_, std::vector<std::uint8_t> bits_)
    : n(n_), bits(std::move(bits_)) {
  if (n > 32 || bits.size() != (std::size_t{1} << n))
    throw std::invalid_argument("truth table has wrong size for its arity");
  for (std::uint8_t b : bits)
    if (b > 1) throw std::invalid_argument("truth table entries must be 0 or 1");
}

truth_table truth_table::from_string(std::string_view s) {
  if (s.empty() || !std::has_single_bit(s.size()))
    throw parse_error("truth vector length must be a nonzero power of two, got " +
                      std::to_string(s.size()));
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1')
      throw parse_error(std::string("illegal character '") + c + "' in truth vector");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return truth_table(static_cast<std::uint32_t>(std::countr_zero(s.size())), std::move(bits));
}

std::string truth_table::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (std::uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

manager& func::owner() const {
  if (!mgr_) throw std::logic_error("operation on an invalid func handle");
  return *mgr_;
}

bool operator==(const func& a, const func& b) {
  if (a.mgr_ == b.mgr_) return a.root_ == b.root_;
  if (a.mgr_ == nullptr || b.mgr_ == nullptr) return false;
  throw std::invalid_argument("comparing funcs from different managers");
}

func operator~(const func& f) { return f.owner().complement(f); }
func operator&(const func& a, const func& b) { return a.owner().apply(bool_op::op_and, a, b); }
func operator|(const func& a, const func& b) { return a.owner().apply(bool_op::op_or, a, b); }
func operator^(const func& a, const func& b) { return a.owner().apply(bool_op::op_xor, a, b); }

manager::manager(var_id var_count, var_id max_vars) : n_(var_count), max_vars_(max_vars) {
  if (var_count > max_vars)
    throw limit_error("variable count " + std::to_string(var_count) +
                      " exceeds the configured limit of " + std::to_string(max_vars));
  nodes_.push_back({terminal_level(), 0, 0});
  nodes_.push_back({terminal_level(), 1, 1});
  count_cache_.emplace(0, big_uint(0));
  count_cache_.emplace(1, big_uint(1));
  unique_.reserve(1 << 12);
  op_cache_.reserve(1 << 12);
}

const func& manager::require_owned(const func& f) const {
  if (!f.valid() || &f.owner() != this)
    throw std::invalid_argument("func does not belong to this manager");
  return f;
}

node_ref manager::mk(var_id v, node_ref lo, node_ref hi) {
  if (lo == hi) return lo;
  auto [it, inserted] = unique_.try_emplace(triple{v, lo, hi}, 0);
  if (inserted) {
    it->second = static_cast<node_ref>(nodes_.size());
    nodes_.push_back({v, lo, hi});
  }
  return it->second;
}

func manager::var(var_id i) {
  if (i < 1 || i > n_)
    throw std::invalid_argument("variable index " + std::to_string(i) +
                                " out of range 1.." + std::to_string(n_));
  return func(this, mk(i, 0, 1));
}

node_ref manager::apply_rec(bool_op op, node_ref f, node_ref g) {
  switch (op) {
    case bool_op::op_and:
      if (f == g) return f;
      if (f == 0 || g == 0) return 0;
      if (f == 1) return g;
      if (g == 1) return f;
      break;
    case bool_op::op_or:
      if (f == g) return f;
      if (f == 1 || g == 1) return 1;
      if (f == 0) return g;
      if (g == 0) return f;
      break;
    case bool_op::op_xor:
      if (f == g) return 0;
      if (f == 0) return g;
      if (g == 0) return f;
      break;
  }
  if (f > g) std::swap(f, g); // all three ops are commutative
  const triple key{op_tag(op), f, g};
  if (auto it = op_cache_.find(key); it != op_cache_.end()) return it->second;

  // copy: nodes_ may reallocate in the recursive mk calls
  const node nf = nodes_[f];
  const node ng = nodes_[g];
  const var_id top = std::min(nf.var, ng.var);
  const node_ref f0 = nf.var == top ? nf.lo : f;
  const node_ref f1 = nf.var == top ? nf.hi : f;
  const node_ref g0 = ng.var == top ? ng.lo : g;
  const node_ref g1 = ng.var == top ? ng.hi : g;
  const node_ref lo = apply_rec(op, f0, g0);
  const node_ref hi = apply_rec(op, f1, g1);
  const node_ref r = mk(top, lo, hi);
  op_cache_.emplace(key, r);
  return r;
}

func manager::apply(bool_op op, const func& f, const func& g) {
  require_owned(f);
  require_owned(g);
  return func(this, apply_rec(op, f.root_, g.root_));
}

func manager::complement(const func& f) {
  require_owned(f);
  return func(this, apply_rec(bool_op::op_xor, f.root_, 1));
}

node_ref manager::cofactor_rec(node_ref f, var_id v, bool value) {
  const node nd = nodes_[f];
  if (nd.var > v) return f; // also covers terminals
  if (nd.var == v) return value ? nd.hi : nd.lo;
  const triple key{f, v, static_cast<std::uint32_t>(value)};
  if (auto it = cof_cache_.find(key); it != cof_cache_.end()) return it->second;
  const node_ref lo = cofactor_rec(nd.lo, v, value);
  const node_ref hi = cofactor_rec(nd.hi, v, value);
  const node_ref r = mk(nd.var, lo, hi);
  cof_cache_.emplace(key, r);
  return r;
}

func manager::cofactor(const func& f, var_id i, bool value) {
  require_owned(f);
  if (i < 1 || i > n_)
    throw std::invalid_argument("cofactor variable index " + std::to_string(i) +
                                " out of range 1.." + std::to_string(n_));
  return func(this, cofactor_rec(f.root_, i, value));
}

const big_uint& manager::count_rec(node_ref f) {
  if (auto it = count_cache_.find(f); it != count_cache_.end()) return it->second;
  const node nd = nodes_[f];
  big_uint sum = count_rec(nd.lo) << (nodes_[nd.lo].var - nd.var - 1);
  sum += count_rec(nd.hi) << (nodes_[nd.hi].var - nd.var - 1);
  return count_cache_.emplace(f, std::move(sum)).first->second;
}

big_uint manager::sat_count(const func& f) {
  require_owned(f);
  return count_rec(f.root_) << (nodes_[f.root_].var - 1);
}

std::vector<var_id> manager::support(const func& f) {
  require_owned(f);
  std::vector<bool> seen(n_ + 1, false);
  std::unordered_set<node_ref> visited;
  std::vector<node_ref> stack{f.root_};
  while (!stack.empty()) {
    const node_ref r = stack.back();
    stack.pop_back();
    if (r <= 1 || !visited.insert(r).second) continue;
    const node& nd = nodes_[r];
    seen[nd.var] = true;
    stack.push_back(nd.lo);
    stack.push_back(nd.hi);
  }
  std::vector<var_id> out;
  for (var_id v = 1; v <= n_; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

node_ref manager::build_rec(const std::vector<std::uint8_t>& bits, var_id level,
                            std::size_t lo, std::size_t hi) {
  if (level == terminal_level()) return bits[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  const node_ref l = build_rec(bits, level + 1, lo, mid);
  const node_ref h = build_rec(bits, level + 1, mid, hi);
  return mk(level, l, h);
}

func manager::from_truth_table(const truth_table& t) {
  if (t.n != n_)
    throw std::invalid_argument("truth table has " + std::to_string(t.n) +
                                " variables, manager has " + std::to_string(n_));
  return func(this, build_rec(t.bits, 1, 0, t.bits.size()));
}

void manager::fill_rec(node_ref f, var_id level, std::uint8_t* out, std::size_t len) {
  if (level == terminal_level()) {
    *out = static_cast<std::uint8_t>(f == 1);
    return;
  }
  const node nd = nodes_[f];
  const std::size_t half = len / 2;
  if (nd.var == level) {
    fill_rec(nd.lo, level + 1, out, half);
    fill_rec(nd.hi, level + 1, out + half, half);
  } else {
    fill_rec(f, level + 1, out, half);
    fill_rec(f, level + 1, out + half, half);
  }
}

truth_table manager::to_truth_table(const func& f) {
  require_owned(f);
  if (n_ > 24)
    throw limit_error("truth-table export is limited to 24 variables, manager has " +
                      std::to_string(n_));
  std::vector<std::uint8_t> bits(std::size_t{1} << n_);
  fill_rec(f.root_, 1, bits.data(), bits.size());
  return truth_table(n_, std::move(bits));
}

bool manager::equal(const func& f, const func& g) const {
  require_owned(f);
  require_owned(g);
  return f.root_ == g.root_;
}

void manager::check_invariants() const {
  auto fail = [](const std::string& what) { throw internal_error("bdd audit: " + what); };
  if (nodes_.size() < 2) fail("terminal nodes missing");
  for (node_ref t = 0; t <= 1; ++t) {
    const node& nd = nodes_[t];
    if (nd.var != terminal_level() || nd.lo != t || nd.hi != t)
      fail("terminal node " + std::to_string(t) + " corrupted");
  }
  std::unordered_set<triple, triple_hash> seen;
  for (node_ref r = 2; r < nodes_.size(); ++r) {
    const node& nd = nodes_[r];
    if (nd.var < 1 || nd.var > n_)
      fail("node " + std::to_string(r) + " has out-of-range variable");
    if (nd.lo >= nodes_.size() || nd.hi >= nodes_.size())
      fail("node " + std::to_string(r) + " has a dangling child");
    if (nd.lo == nd.hi) fail("node " + std::to_string(r) + " is redundant");
    if (nodes_[nd.lo].var <= nd.var || nodes_[nd.hi].var <= nd.var)
      fail("node " + std::to_string(r) + " violates the variable order");
    if (!seen.insert(triple{nd.var, nd.lo, nd.hi}).second)
      fail("node " + std::to_string(r) + " duplicates an existing node");
    const auto it = unique_.find(triple{nd.var, nd.lo, nd.hi});
    if (it == unique_.end() || it->second != r)
      fail("node " + std::to_string(r) + " missing from the unique table");
  }
  if (unique_.size() != nodes_.size() - 2) fail("unique table size mismatch");
}

} // namespace bsym
