#include "bsym/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace bsym::oracle {

namespace {

void guard(const truth_table& t) {
  if (t.n > max_oracle_vars)
    throw limit_error("oracle is limited to " + std::to_string(max_oracle_vars) +
                      " variables, got " + std::to_string(t.n));
}

void check_var(const truth_table& t, var_id i) {
  if (i < 1 || i > t.n)
    throw std::invalid_argument("oracle variable x" + std::to_string(i) + " out of range");
}

// x_i is the i-th most significant bit of a row index
bool bit_of(const truth_table& t, std::size_t m, var_id i) {
  return (m >> (t.n - i)) & 1;
}

double plogp_term(std::uint64_t count, double joint_den, double cond_den) {
  if (count == 0) return 0.0;
  const double joint = static_cast<double>(count) / joint_den;
  const double cond = static_cast<double>(count) / cond_den;
  return -joint * std::log2(cond);
}

} // namespace

truth_table tt_cofactor(const truth_table& t,
                        const std::vector<std::pair<var_id, bool>>& fixed) {
  guard(t);
  for (std::size_t a = 0; a < fixed.size(); ++a) {
    check_var(t, fixed[a].first);
    for (std::size_t b = a + 1; b < fixed.size(); ++b)
      if (fixed[a].first == fixed[b].first)
        throw std::invalid_argument("oracle restriction fixes a variable twice");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(t.bits.size() >> fixed.size());
  for (std::size_t m = 0; m < t.bits.size(); ++m) {
    bool match = true;
    for (const auto& [v, val] : fixed)
      if (bit_of(t, m, v) != val) {
        match = false;
        break;
      }
    if (match) bits.push_back(t.bits[m]);
  }
  return truth_table(t.n - static_cast<std::uint32_t>(fixed.size()), std::move(bits));
}

std::uint64_t tt_count_ones(const truth_table& t) {
  guard(t);
  std::uint64_t c = 0;
  for (std::uint8_t b : t.bits) c += b;
  return c;
}

double tt_entropy(const truth_table& t) {
  guard(t);
  const double total = static_cast<double>(t.bits.size());
  const double p = static_cast<double>(tt_count_ones(t)) / total;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double tt_cond_entropy(const truth_table& t, var_id i) {
  guard(t);
  check_var(t, i);
  // joint-sum definition: H(f|x) = -sum_{b,v} P(x=b, f=v) log2 P(f=v | x=b)
  std::uint64_t cnt[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t m = 0; m < t.bits.size(); ++m)
    ++cnt[bit_of(t, m, i)][t.bits[m]];
  const double joint_den = static_cast<double>(t.bits.size());
  const double cond_den = joint_den / 2.0;
  double h = 0.0;
  for (int b = 0; b < 2; ++b)
    for (int v = 0; v < 2; ++v) h += plogp_term(cnt[b][v], joint_den, cond_den);
  return h;
}

double tt_cond_entropy_set(const truth_table& t, const std::vector<var_id>& vars) {
  guard(t);
  std::vector<var_id> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("oracle conditioning set contains a duplicate");
  for (var_id v : sorted) check_var(t, v);
  const std::size_t k = sorted.size();
  std::vector<std::uint64_t> cnt(std::size_t{2} << k, 0); // [block][value]
  for (std::size_t m = 0; m < t.bits.size(); ++m) {
    std::size_t block = 0;
    for (var_id v : sorted) block = (block << 1) | (bit_of(t, m, v) ? 1 : 0);
    ++cnt[(block << 1) | t.bits[m]];
  }
  const double joint_den = static_cast<double>(t.bits.size());
  const double cond_den = joint_den / static_cast<double>(std::size_t{1} << k);
  double h = 0.0;
  for (std::uint64_t c : cnt) h += plogp_term(c, joint_den, cond_den);
  return h;
}

std::vector<var_id> tt_support(const truth_table& t) {
  guard(t);
  std::vector<var_id> out;
  for (var_id i = 1; i <= t.n; ++i) {
    const std::size_t mask = std::size_t{1} << (t.n - i);
    bool essential = false;
    for (std::size_t m = 0; m < t.bits.size() && !essential; ++m)
      if (!(m & mask) && t.bits[m] != t.bits[m | mask]) essential = true;
    if (essential) out.push_back(i);
  }
  return out;
}

symmetry::pair_kind tt_classify_pair(const truth_table& t, var_id i, var_id j) {
  guard(t);
  check_var(t, i);
  check_var(t, j);
  if (i == j) throw std::invalid_argument("oracle pair variables must be distinct");
  const bool ne = tt_cofactor(t, {{i, false}, {j, true}}) ==
                  tt_cofactor(t, {{i, true}, {j, false}});
  const bool e = tt_cofactor(t, {{i, false}, {j, false}}) ==
                 tt_cofactor(t, {{i, true}, {j, true}});
  if (ne && e) return symmetry::pair_kind::m;
  if (ne) return symmetry::pair_kind::ne;
  if (e) return symmetry::pair_kind::e;
  return symmetry::pair_kind::none;
}

symmetry::symmetry_report tt_detect(const truth_table& t) {
  guard(t);
  const std::uint32_t n = t.n;
  symmetry::symmetry_report rep;
  rep.n = n;

  rep.profile.n = n;
  rep.profile.ones = tt_count_ones(t);
  rep.profile.h = tt_entropy(t);
  std::vector<truth_table> cof0(n + 1), cof1(n + 1);
  for (var_id v = 1; v <= n; ++v) {
    cof0[v] = tt_cofactor(t, {{v, false}});
    cof1[v] = tt_cofactor(t, {{v, true}});
    entropy::profile_row row;
    row.var = v;
    row.ones0 = tt_count_ones(cof0[v]);
    row.ones1 = tt_count_ones(cof1[v]);
    row.h0 = tt_entropy(cof0[v]);
    row.h1 = tt_entropy(cof1[v]);
    row.hcond = tt_cond_entropy(t, v);
    rep.profile.rows.push_back(std::move(row));
  }

  const auto supp = tt_support(t);
  const big_uint half = big_uint(1) << (n > 0 ? n - 1 : 0);
  for (var_id i = 1; i <= n; ++i) {
    for (var_id j = i + 1; j <= n; ++j) {
      symmetry::pair_classification pc;
      pc.i = i;
      pc.j = j;
      pc.kind = tt_classify_pair(t, i, j);
      pc.vacuous = !std::binary_search(supp.begin(), supp.end(), i) &&
                   !std::binary_search(supp.begin(), supp.end(), j);
      const auto& ri = rep.profile.rows[i - 1];
      const auto& rj = rep.profile.rows[j - 1];
      pc.filter_ne = entropy::counts_entropy_equal(ri.ones0, rj.ones0, half) &&
                     entropy::counts_entropy_equal(ri.ones1, rj.ones1, half);
      pc.filter_e = entropy::counts_entropy_equal(ri.ones0, rj.ones1, half) &&
                    entropy::counts_entropy_equal(ri.ones1, rj.ones0, half);
      rep.pairs.push_back(pc);
    }
  }

  auto [groups, summary] = symmetry::group_summary(n, rep.pairs);
  rep.groups = std::move(groups);
  rep.summary = std::move(summary);
  rep.total = symmetry::is_totally_symmetric(n, rep.pairs);
  return rep;
}

} // namespace bsym::oracle
