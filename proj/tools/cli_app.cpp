#include "cli_app.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsym/entropy.hpp"
#include "bsym/io.hpp"
#include "bsym/symmetry.hpp"
#include "bsym/version.hpp"

namespace bsym::cli {

namespace {

namespace fs = std::filesystem;

struct options {
  std::string path;
  std::string format = "auto";
  std::string output = "text";
  bool no_filter = false;
  bool include_vacuous = false;
  bool per_output = false;
  std::uint32_t max_vars = 64;
  std::uint64_t seed = 0; // reserved; nothing randomized consumes it yet
  std::string set_vars;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_of(const std::string& path, const std::string& requested) {
  if (requested != "auto") return requested;
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".pla") return "pla";
  if (ext == ".blif") return "blif";
  return "tt";
}

io::circuit load(const std::string& path, const options& o) {
  const std::string text = read_file(path);
  const std::string name = fs::path(path).stem().string();
  const std::string fmt = format_of(path, o.format);
  if (fmt == "pla") return io::parse_pla(text, name, o.max_vars);
  if (fmt == "blif") return io::parse_blif(text, name, o.max_vars);
  return io::parse_truth_vector(text, name, o.max_vars);
}

void print_warnings(const io::circuit& c, std::ostream& err) {
  for (const auto& w : c.warnings) err << "warning: " << c.name << ": " << w << "\n";
}

io::report_format report_format_of(const std::string& output) {
  if (output == "json") return io::report_format::json;
  if (output == "csv") return io::report_format::csv;
  return io::report_format::text;
}

int run_analyze(const options& o, std::ostream& out, std::ostream& err) {
  const io::circuit c = load(o.path, o);
  print_warnings(c, err);
  const auto rep = symmetry::detect_circuit(c.outputs, {.use_filter = !o.no_filter});
  io::report_options ropt;
  ropt.format = report_format_of(o.output);
  ropt.include_vacuous = o.include_vacuous;
  ropt.per_output = o.per_output;
  out << io::emit_report(c, rep, ropt);
  return 0;
}

std::vector<var_id> parse_set(const io::circuit& c, const std::string& spec) {
  std::vector<var_id> vars;
  std::string tok;
  std::istringstream in(spec);
  while (std::getline(in, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(),
                             [](unsigned char ch) { return std::isspace(ch) != 0; }),
              tok.end());
    if (tok.empty()) continue;
    const auto it = std::find(c.input_names.begin(), c.input_names.end(), tok);
    if (it != c.input_names.end()) {
      vars.push_back(static_cast<var_id>(it - c.input_names.begin()) + 1);
      continue;
    }
    if (tok.size() > 1 && tok[0] == 'x' &&
        std::all_of(tok.begin() + 1, tok.end(),
                    [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
      const unsigned long v = std::stoul(tok.substr(1));
      if (v >= 1 && v <= c.mgr->var_count()) {
        vars.push_back(static_cast<var_id>(v));
        continue;
      }
    }
    throw parse_error("unknown variable '" + tok + "' in --set");
  }
  return vars;
}

std::string set_label(const io::circuit& c, const std::vector<var_id>& vars) {
  std::string s;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (k) s += ",";
    s += io::var_name(c, vars[k]);
  }
  return s;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

int run_entropy(const options& o, std::ostream& out, std::ostream& err) {
  const io::circuit c = load(o.path, o);
  print_warnings(c, err);
  nlohmann::json j;
  const bool as_json = o.output == "json";
  const bool as_csv = o.output == "csv";
  if (as_json) {
    j["version"] = version_string;
    j["circuit"] = c.name;
    j["outputs"] = nlohmann::json::array();
  }

  if (!o.set_vars.empty()) {
    const auto vars = parse_set(c, o.set_vars);
    if (as_csv) out << "output,cond_entropy\n";
    for (std::size_t k = 0; k < c.outputs.size(); ++k) {
      const double h = entropy::cond_entropy_set(c.outputs[k], vars);
      const std::string& name = c.output_names[k];
      if (as_json) {
        nlohmann::json oj;
        oj["name"] = name;
        oj["set"] = set_label(c, vars);
        oj["cond_entropy"] = h;
        j["outputs"].push_back(std::move(oj));
      } else if (as_csv) {
        out << name << "," << fmt2(h) << "\n";
      } else {
        out << "H(" << name << " | " << set_label(c, vars) << ") = " << fmt2(h) << "\n";
      }
    }
    if (as_json) out << j.dump(2) << "\n";
    return 0;
  }

  if (as_csv) out << "output,var,count0,count1,H0,H1,Hcond\n";
  for (std::size_t k = 0; k < c.outputs.size(); ++k) {
    const auto p = entropy::profile(c.outputs[k]);
    const std::string& name = c.output_names[k];
    if (as_json) {
      nlohmann::json oj;
      oj["name"] = name;
      oj["entropy"] = p.h;
      oj["ones"] = p.ones.str();
      oj["profile"] = nlohmann::json::array();
      for (const auto& row : p.rows) {
        nlohmann::json rj;
        rj["var"] = io::var_name(c, row.var);
        rj["count0"] = row.ones0.str();
        rj["count1"] = row.ones1.str();
        rj["h0"] = row.h0;
        rj["h1"] = row.h1;
        rj["hcond"] = row.hcond;
        oj["profile"].push_back(std::move(rj));
      }
      j["outputs"].push_back(std::move(oj));
    } else if (as_csv) {
      for (const auto& row : p.rows)
        out << name << "," << io::var_name(c, row.var) << "," << row.ones0.str() << ","
            << row.ones1.str() << "," << fmt2(row.h0) << "," << fmt2(row.h1) << ","
            << fmt2(row.hcond) << "\n";
    } else {
      out << "H(" << name << ") = " << fmt2(p.h) << "\n";
      for (const auto& row : p.rows) {
        const std::string v = io::var_name(c, row.var);
        out << "  H(" << name << "|" << v << "=0) = " << fmt2(row.h0) << "  H(" << name
            << "|" << v << "=1) = " << fmt2(row.h1) << "  H(" << name << "|" << v
            << ") = " << fmt2(row.hcond) << "\n";
      }
    }
  }
  if (as_json) out << j.dump(2) << "\n";
  return 0;
}

int run_bench(const options& o, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(o.path)) throw parse_error("'" + o.path + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.path))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::string rows;
  std::size_t ok = 0;
  for (const auto& file : files) {
    try {
      const io::circuit c = load(file.string(), o);
      print_warnings(c, err);
      const auto rep = symmetry::detect_circuit(c.outputs, {.use_filter = !o.no_filter});
      const auto groups = io::filtered_groups(rep.groups, o.include_vacuous);
      rows += io::csv_row(c.name, c.mgr->var_count(),
                          static_cast<std::uint32_t>(c.outputs.size()),
                          io::summary_of(groups), rep.seconds);
      ++ok;
    } catch (const parse_error& e) {
      err << "skip " << file.filename().string() << ": " << e.what() << "\n";
    } catch (const limit_error& e) {
      err << "skip " << file.filename().string() << ": " << e.what() << "\n";
    }
  }
  if (ok == 0) {
    err << "error: no parsable circuit files in '" << o.path << "'\n";
    return 1;
  }
  out << io::csv_header() << rows;
  return 0;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"information-driven symmetry detection for Boolean functions"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);
  options o;

  const auto add_common = [&](CLI::App* cmd, bool with_input) {
    if (with_input)
      cmd->add_option("input", o.path, "circuit file (.tt/.pla/.blif)")->required();
    cmd->add_option("--format", o.format, "input format")
        ->check(CLI::IsMember({"auto", "tt", "pla", "blif"}))
        ->capture_default_str();
    cmd->add_option("--max-vars", o.max_vars, "variable-count guard")->capture_default_str();
    cmd->add_option("--seed", o.seed, "seed for randomized self-test modes (reserved)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "detect and report symmetries");
  add_common(analyze, true);
  analyze->add_option("--output", o.output, "report format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  analyze->add_flag("--no-filter", o.no_filter, "skip the entropy candidate filter");
  analyze->add_flag("--include-vacuous", o.include_vacuous,
                    "include vacuous pairs/groups in reports");
  analyze->add_flag("--per-output", o.per_output, "add per-output sections");

  CLI::App* entropy_cmd = app.add_subcommand("entropy", "print information measures");
  add_common(entropy_cmd, true);
  entropy_cmd->add_option("--output", o.output, "table format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  entropy_cmd->add_option("--set", o.set_vars,
                          "comma-separated variables: print H(f | set)");

  CLI::App* bench = app.add_subcommand("bench", "analyze a directory, one CSV row per file");
  bench->add_option("dir", o.path, "directory of circuit files")->required();
  add_common(bench, false);
  bench->add_flag("--no-filter", o.no_filter, "skip the entropy candidate filter");
  bench->add_flag("--include-vacuous", o.include_vacuous,
                  "include vacuous groups in summaries");

  try {
    std::reverse(args.begin(), args.end()); // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*analyze) return run_analyze(o, out, err);
    if (*entropy_cmd) return run_entropy(o, out, err);
    return run_bench(o, out, err);
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const limit_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

} // namespace bsym::cli
