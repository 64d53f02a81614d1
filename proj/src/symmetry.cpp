#include "bsym/symmetry.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

namespace bsym::symmetry {

namespace {

using clock = std::chrono::steady_clock;

double seconds_since(clock::time_point t0) {
  return std::chrono::duration<double>(clock::now() - t0).count();
}

void validate_pair(const manager& m, var_id i, var_id j) {
  if (i < 1 || j < 1 || i > m.var_count() || j > m.var_count())
    throw std::invalid_argument("pair variable out of range 1.." +
                                std::to_string(m.var_count()));
  if (i == j) throw std::invalid_argument("pair variables must be distinct");
}

pair_kind kind_of(bool ne, bool e) {
  if (ne && e) return pair_kind::m;
  if (ne) return pair_kind::ne;
  if (e) return pair_kind::e;
  return pair_kind::none;
}

} // namespace

std::size_t pair_index(var_id i, var_id j, std::uint32_t n) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i - 1) * (2 * n - i) / 2 + (j - i - 1);
}

bool check_ne(const func& f, var_id i, var_id j) {
  manager& m = f.owner();
  validate_pair(m, i, j);
  return m.equal(m.cofactor(m.cofactor(f, i, false), j, true),
                 m.cofactor(m.cofactor(f, i, true), j, false));
}

bool check_e(const func& f, var_id i, var_id j) {
  manager& m = f.owner();
  validate_pair(m, i, j);
  return m.equal(m.cofactor(m.cofactor(f, i, false), j, false),
                 m.cofactor(m.cofactor(f, i, true), j, true));
}

std::vector<filter_entry> entropy_filter(const entropy::entropy_profile& p) {
  const std::uint32_t n = p.n;
  std::vector<filter_entry> out(n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2);
  if (n < 2) return out;
  const big_uint half = big_uint(1) << (n - 1);
  for (var_id i = 1; i <= n; ++i) {
    const auto& ri = p.rows[i - 1];
    for (var_id j = i + 1; j <= n; ++j) {
      const auto& rj = p.rows[j - 1];
      filter_entry fe;
      fe.ne = entropy::counts_entropy_equal(ri.ones0, rj.ones0, half) &&
              entropy::counts_entropy_equal(ri.ones1, rj.ones1, half);
      fe.e = entropy::counts_entropy_equal(ri.ones0, rj.ones1, half) &&
             entropy::counts_entropy_equal(ri.ones1, rj.ones0, half);
      out[pair_index(i, j, n)] = fe;
    }
  }
  return out;
}

pair_classification classify_pair(const func& f, var_id i, var_id j) {
  manager& m = f.owner();
  validate_pair(m, i, j);
  if (i > j) std::swap(i, j);
  pair_classification pc;
  pc.i = i;
  pc.j = j;

  const std::uint32_t n = m.var_count();
  const big_uint half = big_uint(1) << (n - 1);
  const big_uint c0i = m.sat_count(m.cofactor(f, i, false)) >> 1;
  const big_uint c1i = m.sat_count(m.cofactor(f, i, true)) >> 1;
  const big_uint c0j = m.sat_count(m.cofactor(f, j, false)) >> 1;
  const big_uint c1j = m.sat_count(m.cofactor(f, j, true)) >> 1;
  pc.filter_ne = entropy::counts_entropy_equal(c0i, c0j, half) &&
                 entropy::counts_entropy_equal(c1i, c1j, half);
  pc.filter_e = entropy::counts_entropy_equal(c0i, c1j, half) &&
                entropy::counts_entropy_equal(c1i, c0j, half);

  pc.kind = kind_of(check_ne(f, i, j), check_e(f, i, j));

  const auto supp = m.support(f);
  pc.vacuous = !std::binary_search(supp.begin(), supp.end(), i) &&
               !std::binary_search(supp.begin(), supp.end(), j);
  return pc;
}

symmetry_report detect(const func& f, const detect_options& opt) {
  const auto t0 = clock::now();
  manager& m = f.owner();
  const std::uint32_t n = m.var_count();

  symmetry_report rep;
  rep.n = n;
  rep.profile = entropy::profile(f);

  const auto filt = entropy_filter(rep.profile);
  const auto supp = m.support(f);
  std::vector<bool> in_supp(n + 1, false);
  for (var_id v : supp) in_supp[v] = true;

  if (n >= 2) rep.pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (var_id i = 1; i <= n; ++i) {
    for (var_id j = i + 1; j <= n; ++j) {
      pair_classification pc;
      pc.i = i;
      pc.j = j;
      const filter_entry fe = filt[pair_index(i, j, n)];
      pc.filter_ne = fe.ne;
      pc.filter_e = fe.e;
      const bool ne = (fe.ne || !opt.use_filter) && check_ne(f, i, j);
      const bool e = (fe.e || !opt.use_filter) && check_e(f, i, j);
      pc.kind = kind_of(ne, e);
      pc.vacuous = !in_supp[i] && !in_supp[j];
      rep.pairs.push_back(pc);
    }
  }

  auto [groups, summary] = group_summary(n, rep.pairs);
  rep.groups = std::move(groups);
  rep.summary = std::move(summary);
  rep.total = is_totally_symmetric(n, rep.pairs);
  rep.seconds = seconds_since(t0);
  return rep;
}

std::pair<std::vector<symmetry_group>, std::vector<summary_entry>>
group_summary(std::uint32_t n, const std::vector<pair_classification>& pairs) {
  const std::size_t npairs = n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2;
  std::vector<pair_kind> kind(npairs, pair_kind::none);
  std::vector<std::uint8_t> vac(npairs, 0);
  for (const auto& pc : pairs) {
    if (pc.i < 1 || pc.j <= pc.i || pc.j > n)
      throw std::invalid_argument("malformed pair classification list");
    const std::size_t idx = pair_index(pc.i, pc.j, n);
    kind[idx] = pc.kind;
    vac[idx] = pc.vacuous ? 1 : 0;
  }

  // union-find over variables, edges = symmetric pairs
  std::vector<var_id> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](var_id v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (var_id i = 1; i <= n; ++i)
    for (var_id j = i + 1; j <= n; ++j)
      if (kind[pair_index(i, j, n)] != pair_kind::none) parent[find(i)] = find(j);

  std::vector<std::vector<var_id>> components;
  std::vector<std::size_t> comp_of(n + 1, SIZE_MAX);
  for (var_id v = 1; v <= n; ++v) {
    const var_id r = find(v);
    if (comp_of[r] == SIZE_MAX) {
      comp_of[r] = components.size();
      components.emplace_back();
    }
    components[comp_of[r]].push_back(v); // ascending by construction
  }

  std::vector<symmetry_group> groups;
  for (const auto& comp : components) {
    if (comp.size() < 2) continue;
    // grow maximal consistent subgroups; each variable joins the first
    // subgroup it is symmetric to all members of, with a feasible polarity
    std::vector<std::vector<literal>> subs;
    for (var_id v : comp) {
      bool placed = false;
      for (auto& sub : subs) {
        bool compatible = true;
        bool ok_pos = true, ok_neg = true;
        for (const auto& mem : sub) {
          switch (kind[pair_index(mem.var, v, n)]) {
            case pair_kind::none:
              compatible = false;
              break;
            case pair_kind::ne: // same polarity
              ok_pos = ok_pos && !mem.negated;
              ok_neg = ok_neg && mem.negated;
              break;
            case pair_kind::e: // opposite polarity
              ok_pos = ok_pos && mem.negated;
              ok_neg = ok_neg && !mem.negated;
              break;
            case pair_kind::m:
              break;
          }
          if (!compatible) break;
        }
        if (compatible && (ok_pos || ok_neg)) {
          sub.push_back({v, !ok_pos});
          placed = true;
          break;
        }
      }
      if (!placed) subs.push_back({{v, false}});
    }
    for (auto& sub : subs) {
      if (sub.size() < 2) continue;
      symmetry_group g;
      bool any_m = false, any_e = false, all_vac = true;
      for (std::size_t a = 0; a < sub.size(); ++a)
        for (std::size_t b = a + 1; b < sub.size(); ++b) {
          const std::size_t idx = pair_index(sub[a].var, sub[b].var, n);
          any_m = any_m || kind[idx] == pair_kind::m;
          any_e = any_e || kind[idx] == pair_kind::e;
          all_vac = all_vac && vac[idx] != 0;
        }
      g.kind = any_m ? group_kind::m : any_e ? group_kind::e_mixed : group_kind::ne;
      g.vacuous = all_vac;
      if (g.kind == group_kind::m) // polarity constraints are void in an M group
        for (auto& mem : sub) mem.negated = false;
      g.members = std::move(sub);
      groups.push_back(std::move(g));
    }
  }

  std::map<std::uint32_t, std::uint32_t, std::greater<>> by_size;
  for (const auto& g : groups) ++by_size[static_cast<std::uint32_t>(g.members.size())];
  std::vector<summary_entry> summary;
  summary.reserve(by_size.size());
  for (const auto& [size, count] : by_size) summary.push_back({size, count});
  return {std::move(groups), std::move(summary)};
}

total_symmetry is_totally_symmetric(std::uint32_t n,
                                    const std::vector<pair_classification>& pairs) {
  if (n < 2) return total_symmetry::yes_ne;
  const std::size_t npairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::vector<pair_kind> kind(npairs, pair_kind::none);
  for (const auto& pc : pairs) {
    if (pc.i < 1 || pc.j <= pc.i || pc.j > n)
      throw std::invalid_argument("malformed pair classification list");
    kind[pair_index(pc.i, pc.j, n)] = pc.kind;
  }
  bool all_ne = true;
  for (pair_kind k : kind) {
    if (k == pair_kind::none) return total_symmetry::no;
    all_ne = all_ne && (k == pair_kind::ne || k == pair_kind::m);
  }
  if (all_ne) return total_symmetry::yes_ne;

  // 2-color the NE/E constraint graph; M edges constrain nothing
  std::vector<int> color(n + 1, -1);
  for (var_id seed = 1; seed <= n; ++seed) {
    if (color[seed] != -1) continue;
    color[seed] = 0;
    std::vector<var_id> queue{seed};
    while (!queue.empty()) {
      const var_id u = queue.back();
      queue.pop_back();
      for (var_id v = 1; v <= n; ++v) {
        if (v == u) continue;
        const pair_kind k = kind[pair_index(u, v, n)];
        if (k == pair_kind::m || k == pair_kind::none) continue;
        const int want = k == pair_kind::ne ? color[u] : 1 - color[u];
        if (color[v] == -1) {
          color[v] = want;
          queue.push_back(v);
        } else if (color[v] != want) {
          return total_symmetry::no;
        }
      }
    }
  }
  return total_symmetry::yes_mixed_polarity;
}

circuit_report detect_circuit(const std::vector<func>& outputs, const detect_options& opt) {
  const auto t0 = clock::now();
  if (outputs.empty())
    throw std::invalid_argument("detect_circuit needs at least one output");
  manager& m = outputs.front().owner();
  for (const auto& o : outputs)
    if (&o.owner() != &m)
      throw std::invalid_argument("all outputs must share one manager");

  circuit_report cr;
  cr.outputs.reserve(outputs.size());
  for (const auto& o : outputs) cr.outputs.push_back(detect(o, opt));

  const std::uint32_t n = m.var_count();
  if (n >= 2) cr.pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  std::size_t idx = 0;
  for (var_id i = 1; i <= n; ++i) {
    for (var_id j = i + 1; j <= n; ++j, ++idx) {
      pair_classification pc;
      pc.i = i;
      pc.j = j;
      bool ne = true, e = true, vacuous = true, fne = true, fe = true;
      for (const auto& rep : cr.outputs) {
        const auto& opc = rep.pairs[idx];
        ne = ne && (opc.kind == pair_kind::ne || opc.kind == pair_kind::m);
        e = e && (opc.kind == pair_kind::e || opc.kind == pair_kind::m);
        vacuous = vacuous && opc.vacuous;
        fne = fne && opc.filter_ne;
        fe = fe && opc.filter_e;
      }
      pc.kind = kind_of(ne, e);
      pc.vacuous = vacuous;
      pc.filter_ne = fne;
      pc.filter_e = fe;
      cr.pairs.push_back(pc);
    }
  }

  auto [groups, summary] = group_summary(n, cr.pairs);
  cr.groups = std::move(groups);
  cr.summary = std::move(summary);
  cr.total = is_totally_symmetric(n, cr.pairs);
  cr.seconds = seconds_since(t0);
  return cr;
}

} // namespace bsym::symmetry
