#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bsym/bdd.hpp"
#include "bsym/symmetry.hpp"

namespace bsym::io {

/// A parsed multi-output circuit. Owns its manager; variable x_i carries
/// input_names[i-1]. Warnings collect non-fatal oddities (e.g. output
/// don't-cares treated as 0).
struct circuit {
  std::string name;
  std::string format; ///< "tt", "pla" or "blif"
  std::shared_ptr<manager> mgr;
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;
  std::vector<func> outputs;
  std::vector<std::string> warnings;
};

/// Bare 01-vector of length 2^n, whitespace and brackets ignored. Single
/// output named f, inputs auto-named x1..xn.
circuit parse_truth_vector(std::string_view text, const std::string& name = "tt",
                           var_id max_vars = 64);

/// Espresso PLA, .type f/fd subset. Output k is the OR of the cubes whose
/// output field holds '1' there.
circuit parse_pla(std::string_view text, const std::string& name = "pla",
                  var_id max_vars = 64);

/// Combinational BLIF subset: .model/.inputs/.outputs/.names/.end, with
/// intermediate signals substituted into flat per-output BDDs.
circuit parse_blif(std::string_view text, const std::string& fallback_name = "blif",
                   var_id max_vars = 64);

enum class report_format { text, json, csv };

struct report_options {
  report_format format = report_format::text;
  bool include_vacuous = false; ///< keep vacuous pairs/groups in the output
  bool per_output = false;      ///< multi-output: add per-output sections
};

/// Renders a detection report. Byte-deterministic for a fixed report.
std::string emit_report(const circuit& c, const symmetry::circuit_report& r,
                        const report_options& opt);

// rendering helpers, shared with the CLI and handy in tests
std::string kind_token(symmetry::pair_kind k);
std::string group_kind_token(symmetry::group_kind k);
std::string total_token(symmetry::total_symmetry t);
std::string var_name(const circuit& c, var_id i);
std::string group_text(const circuit& c, const symmetry::symmetry_group& g);
std::string summary_text(const std::vector<symmetry::summary_entry>& entries);

std::string csv_header();
std::string csv_row(const std::string& name, std::uint32_t inputs, std::uint32_t outputs,
                    const std::vector<symmetry::summary_entry>& summary, double seconds);

/// Groups with vacuous ones dropped (unless included) and the matching
/// size-descending (size, count) summary.
std::vector<symmetry::symmetry_group>
filtered_groups(const std::vector<symmetry::symmetry_group>& groups, bool include_vacuous);
std::vector<symmetry::summary_entry>
summary_of(const std::vector<symmetry::symmetry_group>& groups);

} // namespace bsym::io
