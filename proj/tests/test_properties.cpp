#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "bsym/io.hpp"
#include "bsym/oracle.hpp"
#include "bsym/symmetry.hpp"
#include "test_util.hpp"

using namespace bsym;
using symmetry::pair_kind;

namespace {

// g(x_1..x_n) with y_{perm(k)} = x_k plugged into f
truth_table permute_tt(const truth_table& t, const std::vector<var_id>& perm) {
  truth_table out = t;
  for (std::size_t m = 0; m < t.bits.size(); ++m) {
    std::size_t src = 0;
    for (var_id k = 1; k <= t.n; ++k)
      if (m & (std::size_t{1} << (t.n - k))) src |= std::size_t{1} << (t.n - perm[k - 1]);
    out.bits[m] = t.bits[src];
  }
  return out;
}

void check_reports_agree(const symmetry::symmetry_report& got,
                         const symmetry::symmetry_report& want) {
  REQUIRE(got.n == want.n);
  CHECK(got.profile.ones == want.profile.ones);
  CHECK(std::abs(got.profile.h - want.profile.h) <= 1e-12);
  REQUIRE(got.profile.rows.size() == want.profile.rows.size());
  for (std::size_t r = 0; r < got.profile.rows.size(); ++r) {
    CHECK(got.profile.rows[r].ones0 == want.profile.rows[r].ones0);
    CHECK(got.profile.rows[r].ones1 == want.profile.rows[r].ones1);
    CHECK(std::abs(got.profile.rows[r].hcond - want.profile.rows[r].hcond) <= 1e-12);
  }
  REQUIRE(got.pairs.size() == want.pairs.size());
  for (std::size_t p = 0; p < got.pairs.size(); ++p) {
    CHECK(got.pairs[p].i == want.pairs[p].i);
    CHECK(got.pairs[p].j == want.pairs[p].j);
    CHECK(got.pairs[p].kind == want.pairs[p].kind);
    CHECK(got.pairs[p].vacuous == want.pairs[p].vacuous);
    CHECK(got.pairs[p].filter_ne == want.pairs[p].filter_ne);
    CHECK(got.pairs[p].filter_e == want.pairs[p].filter_e);
  }
  REQUIRE(got.groups.size() == want.groups.size());
  for (std::size_t g = 0; g < got.groups.size(); ++g) {
    CHECK(got.groups[g].members == want.groups[g].members);
    CHECK(got.groups[g].kind == want.groups[g].kind);
    CHECK(got.groups[g].vacuous == want.groups[g].vacuous);
  }
  CHECK(got.summary == want.summary);
  CHECK(got.total == want.total);
}

void check_filter_sound(const symmetry::symmetry_report& rep) {
  for (const auto& pc : rep.pairs) {
    if (pc.kind == pair_kind::ne || pc.kind == pair_kind::m) CHECK(pc.filter_ne);
    if (pc.kind == pair_kind::e || pc.kind == pair_kind::m) CHECK(pc.filter_e);
  }
}

void check_groups_coherent(const symmetry::symmetry_report& rep) {
  // every reported group must be a clique of symmetric pairs whose kinds are
  // consistent with the polarity assignment on its members
  std::vector<pair_kind> kind(rep.pairs.size(), pair_kind::none);
  for (const auto& pc : rep.pairs) kind[symmetry::pair_index(pc.i, pc.j, rep.n)] = pc.kind;
  for (const auto& g : rep.groups) {
    REQUIRE(g.members.size() >= 2);
    for (std::size_t a = 0; a < g.members.size(); ++a) {
      for (std::size_t b = a + 1; b < g.members.size(); ++b) {
        const auto& ma = g.members[a];
        const auto& mb = g.members[b];
        const pair_kind k = kind[symmetry::pair_index(ma.var, mb.var, rep.n)];
        CHECK(k != pair_kind::none);
        if (g.kind == symmetry::group_kind::m) continue;
        if (k == pair_kind::ne) CHECK(ma.negated == mb.negated);
        if (k == pair_kind::e) CHECK(ma.negated != mb.negated);
      }
    }
  }
}

void run_function(manager& m, const truth_table& t) {
  const func f = m.from_truth_table(t);
  const auto rep = symmetry::detect(f);
  const auto want = oracle::tt_detect(t);
  check_reports_agree(rep, want);
  check_filter_sound(rep);
  check_groups_coherent(rep);

  const auto unfiltered = symmetry::detect(f, {.use_filter = false});
  check_reports_agree(unfiltered, want);
}

} // namespace

TEST_CASE("properties: detect matches the table oracle exhaustively for n <= 3") {
  for (std::uint32_t n = 0; n <= 3; ++n) {
    manager m(n);
    const std::size_t rows = std::size_t{1} << n;
    for (std::size_t v = 0; v < (std::size_t{1} << rows); ++v) {
      std::vector<std::uint8_t> bits(rows);
      for (std::size_t r = 0; r < rows; ++r) bits[r] = (v >> r) & 1;
      run_function(m, truth_table(n, std::move(bits)));
    }
  }
}

TEST_CASE("properties: detect matches the table oracle on random and planted functions") {
  std::mt19937_64 rng(0xb5d1);
  for (std::uint32_t n = 4; n <= 6; ++n) {
    manager m(n);
    const int iters = n == 4 ? 120 : n == 5 ? 80 : 50;
    for (int k = 0; k < iters; ++k) {
      run_function(m, test::random_tt(n, rng));

      const var_id i = static_cast<var_id>(1 + rng() % n);
      var_id j = static_cast<var_id>(1 + rng() % n);
      while (j == i) j = static_cast<var_id>(1 + rng() % n);
      run_function(m, test::plant_ne(test::random_tt(n, rng), i, j));
      run_function(m, test::plant_e(test::random_tt(n, rng), i, j));
    }
    run_function(m, test::threshold_tt(n, n / 2));
  }
}

TEST_CASE("properties: planted symmetries are found") {
  std::mt19937_64 rng(0x9e37);
  for (std::uint32_t n = 4; n <= 6; ++n) {
    manager m(n);
    for (int k = 0; k < 40; ++k) {
      const var_id i = static_cast<var_id>(1 + rng() % n);
      var_id j = static_cast<var_id>(1 + rng() % n);
      while (j == i) j = static_cast<var_id>(1 + rng() % n);

      const func fne = m.from_truth_table(test::plant_ne(test::random_tt(n, rng), i, j));
      CHECK(symmetry::check_ne(fne, i, j));
      const auto kne = symmetry::classify_pair(fne, i, j).kind;
      CHECK((kne == pair_kind::ne || kne == pair_kind::m));

      const func fe = m.from_truth_table(test::plant_e(test::random_tt(n, rng), i, j));
      CHECK(symmetry::check_e(fe, i, j));
      const auto ke = symmetry::classify_pair(fe, i, j).kind;
      CHECK((ke == pair_kind::e || ke == pair_kind::m));
    }

    const auto rep = symmetry::detect(m.from_truth_table(test::threshold_tt(n, n / 2)));
    CHECK(rep.total == symmetry::total_symmetry::yes_ne);
    CHECK(rep.summary == std::vector<symmetry::summary_entry>{{n, 1}});
  }
}

TEST_CASE("properties: pair checks match the index-transform definition") {
  std::mt19937_64 rng(0x51de);
  for (std::uint32_t n = 2; n <= 6; ++n) {
    manager m(n);
    for (int k = 0; k < 50; ++k) {
      const truth_table t = test::random_tt(n, rng);
      const func f = m.from_truth_table(t);
      for (var_id i = 1; i <= n; ++i) {
        for (var_id j = i + 1; j <= n; ++j) {
          truth_table swapped = t, negswapped = t;
          for (std::size_t idx = 0; idx < t.bits.size(); ++idx) {
            swapped.bits[idx] = t.bits[test::swap_bits(idx, n, i, j)];
            negswapped.bits[idx] = t.bits[test::swap_neg_bits(idx, n, i, j)];
          }
          CHECK(symmetry::check_ne(f, i, j) == (t == swapped));
          CHECK(symmetry::check_e(f, i, j) == (t == negswapped));
        }
      }
    }
  }
}

TEST_CASE("properties: relabeling variables relabels the verdicts") {
  std::mt19937_64 rng(0x7a11);
  for (std::uint32_t n = 3; n <= 6; ++n) {
    manager m(n);
    for (int k = 0; k < 25; ++k) {
      const truth_table t = test::random_tt(n, rng);
      std::vector<var_id> perm(n);
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng);

      const auto base = symmetry::detect(m.from_truth_table(t));
      const auto relab = symmetry::detect(m.from_truth_table(permute_tt(t, perm)));
      for (var_id i = 1; i <= n; ++i)
        for (var_id j = i + 1; j <= n; ++j)
          CHECK(relab.pairs[symmetry::pair_index(i, j, n)].kind ==
                base.pairs[symmetry::pair_index(perm[i - 1], perm[j - 1], n)].kind);
      CHECK(relab.summary == base.summary);
      CHECK(relab.total == base.total);
    }
  }
}

TEST_CASE("properties: complementing the function changes nothing") {
  std::mt19937_64 rng(0xc0fe);
  manager m(5);
  for (int k = 0; k < 60; ++k) {
    const func f = m.from_truth_table(test::random_tt(5, rng));
    const auto a = symmetry::detect(f);
    const auto b = symmetry::detect(~f);
    CHECK(a.profile.h == b.profile.h); // bitwise, not just approximately
    REQUIRE(a.pairs.size() == b.pairs.size());
    for (std::size_t p = 0; p < a.pairs.size(); ++p) {
      CHECK(a.pairs[p].kind == b.pairs[p].kind);
      CHECK(a.pairs[p].vacuous == b.pairs[p].vacuous);
      CHECK(a.pairs[p].filter_ne == b.pairs[p].filter_ne);
      CHECK(a.pairs[p].filter_e == b.pairs[p].filter_e);
    }
    REQUIRE(a.groups.size() == b.groups.size());
    for (std::size_t g = 0; g < a.groups.size(); ++g) {
      CHECK(a.groups[g].members == b.groups[g].members);
      CHECK(a.groups[g].kind == b.groups[g].kind);
    }
    CHECK(a.summary == b.summary);
    CHECK(a.total == b.total);
  }
}

TEST_CASE("properties: entropy measures match the oracle") {
  std::mt19937_64 rng(0xe27);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    manager m(n);
    for (int k = 0; k < 40; ++k) {
      const truth_table t = test::random_tt(n, rng);
      const func f = m.from_truth_table(t);
      CHECK(std::abs(entropy::entropy(f) - oracle::tt_entropy(t)) <= 1e-12);
      for (var_id v = 1; v <= n; ++v)
        CHECK(std::abs(entropy::cond_entropy(f, v) - oracle::tt_cond_entropy(t, v)) <= 1e-12);

      std::vector<var_id> set;
      for (var_id v = 1; v <= n; ++v)
        if (rng() & 1) set.push_back(v);
      CHECK(std::abs(entropy::cond_entropy_set(f, set) -
                     oracle::tt_cond_entropy_set(t, set)) <= 1e-12);
    }
  }
}

TEST_CASE("properties: conditioning never increases entropy") {
  std::mt19937_64 rng(0x5e7);
  manager m(5);
  for (int k = 0; k < 40; ++k) {
    const func f = m.from_truth_table(test::random_tt(5, rng));
    std::vector<var_id> set;
    double prev = entropy::entropy(f);
    std::vector<var_id> order{1, 2, 3, 4, 5};
    std::shuffle(order.begin(), order.end(), rng);
    for (var_id v : order) {
      set.push_back(v);
      const double h = entropy::cond_entropy_set(f, set);
      CHECK(h <= prev + 1e-12);
      prev = h;
    }
    CHECK(prev == 0.0); // fully conditioned
  }
}

TEST_CASE("properties: random PLA covers parse to the cube semantics") {
  std::mt19937_64 rng(0x91a);
  for (int iter = 0; iter < 50; ++iter) {
    const std::uint32_t ni = 1 + rng() % 10;
    const std::uint32_t no = 1 + rng() % 3;
    const std::uint32_t ncubes = rng() % 13;

    std::vector<std::string> ins, outs;
    std::string text = ".i " + std::to_string(ni) + "\n.o " + std::to_string(no) + "\n";
    for (std::uint32_t c = 0; c < ncubes; ++c) {
      std::string in, out;
      for (std::uint32_t b = 0; b < ni; ++b) in.push_back("01-"[rng() % 3]);
      for (std::uint32_t b = 0; b < no; ++b) out.push_back("01"[rng() % 2]);
      text += in + " " + out + "\n";
      ins.push_back(in);
      outs.push_back(out);
    }
    text += ".e\n";

    const auto c = io::parse_pla(text, "rand");
    REQUIRE(c.outputs.size() == no);
    REQUIRE(c.mgr->var_count() == ni);
    for (std::uint32_t k = 0; k < no; ++k) {
      const truth_table got = c.mgr->to_truth_table(c.outputs[k]);
      for (std::size_t m = 0; m < got.bits.size(); ++m) {
        bool on = false;
        for (std::uint32_t cc = 0; cc < ncubes && !on; ++cc) {
          if (outs[cc][k] != '1') continue;
          bool match = true;
          for (std::uint32_t b = 0; b < ni && match; ++b) {
            const bool bit = (m >> (ni - 1 - b)) & 1;
            if (ins[cc][b] == '1' && !bit) match = false;
            if (ins[cc][b] == '0' && bit) match = false;
          }
          on = match;
        }
        CHECK(got.bits[m] == (on ? 1 : 0));
      }
    }
  }
}

TEST_CASE("properties: or-composition with a swapped copy plants NE") {
  std::mt19937_64 rng(0x5eb);
  manager m(5);
  for (int k = 0; k < 40; ++k) {
    const truth_table t = test::random_tt(5, rng);
    truth_table swapped = t;
    for (std::size_t idx = 0; idx < t.bits.size(); ++idx)
      swapped.bits[idx] = t.bits[test::swap_bits(idx, 5, 2, 4)];
    const func f = m.from_truth_table(t) | m.from_truth_table(swapped);
    CHECK(symmetry::check_ne(f, 2, 4));
  }
}
