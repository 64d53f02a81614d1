#include "bsym/io.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "bsym/version.hpp"

namespace bsym::io {

namespace {

using nlohmann::json;

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    out.push_back(c);
    if (c == '"') out.push_back('"');
  }
  out.push_back('"');
  return out;
}

std::string member_text(const circuit& c, const symmetry::literal& m) {
  return (m.negated ? "!" : "") + var_name(c, m.var);
}

std::string pair_text(const circuit& c, const symmetry::pair_classification& pc) {
  std::string s = kind_token(pc.kind) + "{" + var_name(c, pc.i) + ",";
  if (pc.kind == symmetry::pair_kind::e) s += "!";
  s += var_name(c, pc.j) + "}";
  if (pc.vacuous) s += "*";
  return s;
}

std::vector<symmetry::pair_classification>
visible_pairs(const std::vector<symmetry::pair_classification>& pairs, bool include_vacuous) {
  std::vector<symmetry::pair_classification> out;
  for (const auto& pc : pairs)
    if (pc.kind != symmetry::pair_kind::none && (include_vacuous || !pc.vacuous))
      out.push_back(pc);
  return out;
}

json pairs_json(const std::vector<symmetry::pair_classification>& pairs) {
  json arr = json::array();
  for (const auto& pc : pairs) {
    json p;
    p["i"] = pc.i;
    p["j"] = pc.j;
    p["kind"] = kind_token(pc.kind);
    p["vacuous"] = pc.vacuous;
    arr.push_back(std::move(p));
  }
  return arr;
}

json groups_json(const circuit& c, const std::vector<symmetry::symmetry_group>& groups) {
  json arr = json::array();
  for (const auto& g : groups) {
    json members = json::array();
    for (const auto& m : g.members) {
      json mem;
      mem["var"] = var_name(c, m.var);
      mem["phase"] = m.negated ? "-" : "+";
      members.push_back(std::move(mem));
    }
    json gj;
    gj["members"] = std::move(members);
    gj["kind"] = group_kind_token(g.kind);
    arr.push_back(std::move(gj));
  }
  return arr;
}

json summary_json(const std::vector<symmetry::summary_entry>& entries) {
  json arr = json::array();
  for (const auto& e : entries) {
    json s;
    s["size"] = e.size;
    s["count"] = e.count;
    arr.push_back(std::move(s));
  }
  return arr;
}

void render_list_line(std::ostream& out, const std::string& label,
                      const std::vector<std::string>& items) {
  out << label << ":";
  if (items.empty()) {
    out << " (none)";
  } else {
    for (const auto& s : items) out << " " << s;
  }
  out << "\n";
}

void render_output_section(std::ostream& out, const circuit& c,
                           const symmetry::symmetry_report& rep, const std::string& name,
                           bool include_vacuous) {
  out << "output " << name << ":\n";
  out << "  H(f) = " << fmt2(rep.profile.h) << "\n";
  std::size_t width = 3;
  for (var_id v = 1; v <= rep.n; ++v) width = std::max(width, var_name(c, v).size());
  char buf[160];
  std::snprintf(buf, sizeof buf, "  %-*s  %8s  %8s  %8s\n", static_cast<int>(width), "var",
                "H(f|x=0)", "H(f|x=1)", "H(f|x)");
  out << buf;
  for (const auto& row : rep.profile.rows) {
    std::snprintf(buf, sizeof buf, "  %-*s  %8s  %8s  %8s\n", static_cast<int>(width),
                  var_name(c, row.var).c_str(), fmt2(row.h0).c_str(), fmt2(row.h1).c_str(),
                  fmt2(row.hcond).c_str());
    out << buf;
  }
  std::vector<std::string> items;
  for (const auto& pc : visible_pairs(rep.pairs, include_vacuous)) items.push_back(pair_text(c, pc));
  render_list_line(out, "  pairs", items);
  items.clear();
  for (const auto& g : filtered_groups(rep.groups, include_vacuous))
    items.push_back(group_text(c, g));
  render_list_line(out, "  groups", items);
}

} // namespace

std::string kind_token(symmetry::pair_kind k) {
  switch (k) {
    case symmetry::pair_kind::ne: return "NE";
    case symmetry::pair_kind::e: return "E";
    case symmetry::pair_kind::m: return "M";
    case symmetry::pair_kind::none: break;
  }
  return "NONE";
}

std::string group_kind_token(symmetry::group_kind k) {
  switch (k) {
    case symmetry::group_kind::ne: return "NE-group";
    case symmetry::group_kind::e_mixed: return "E-mixed-group";
    case symmetry::group_kind::m: return "M-group";
  }
  return "NE-group";
}

std::string total_token(symmetry::total_symmetry t) {
  switch (t) {
    case symmetry::total_symmetry::yes_ne: return "yes-NE";
    case symmetry::total_symmetry::yes_mixed_polarity: return "yes-mixed-polarity";
    case symmetry::total_symmetry::no: break;
  }
  return "no";
}

std::string var_name(const circuit& c, var_id i) {
  if (i >= 1 && i <= c.input_names.size()) return c.input_names[i - 1];
  return "x" + std::to_string(i);
}

std::string group_text(const circuit& c, const symmetry::symmetry_group& g) {
  std::string s;
  switch (g.kind) {
    case symmetry::group_kind::ne: s = "NE{"; break;
    case symmetry::group_kind::e_mixed: s = "E{"; break;
    case symmetry::group_kind::m: s = "M{"; break;
  }
  for (std::size_t k = 0; k < g.members.size(); ++k) {
    if (k) s += ",";
    s += member_text(c, g.members[k]);
  }
  s += "}";
  if (g.vacuous) s += "*";
  return s;
}

std::string summary_text(const std::vector<symmetry::summary_entry>& entries) {
  std::string s;
  for (const auto& e : entries) {
    if (!s.empty()) s += " ";
    s += "(" + std::to_string(e.size) + "," + std::to_string(e.count) + ")";
  }
  return s;
}

std::vector<symmetry::symmetry_group>
filtered_groups(const std::vector<symmetry::symmetry_group>& groups, bool include_vacuous) {
  std::vector<symmetry::symmetry_group> out;
  for (const auto& g : groups)
    if (include_vacuous || !g.vacuous) out.push_back(g);
  return out;
}

std::vector<symmetry::summary_entry>
summary_of(const std::vector<symmetry::symmetry_group>& groups) {
  std::map<std::uint32_t, std::uint32_t, std::greater<>> by_size;
  for (const auto& g : groups) ++by_size[static_cast<std::uint32_t>(g.members.size())];
  std::vector<symmetry::summary_entry> out;
  out.reserve(by_size.size());
  for (const auto& [size, count] : by_size) out.push_back({size, count});
  return out;
}

std::string csv_header() { return "name,inputs,outputs,summary,time_seconds\n"; }

std::string csv_row(const std::string& name, std::uint32_t inputs, std::uint32_t outputs,
                    const std::vector<symmetry::summary_entry>& summary, double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", seconds);
  return csv_escape(name) + "," + std::to_string(inputs) + "," + std::to_string(outputs) +
         "," + csv_escape(summary_text(summary)) + "," + buf + "\n";
}

std::string emit_report(const circuit& c, const symmetry::circuit_report& r,
                        const report_options& opt) {
  const auto circuit_groups = filtered_groups(r.groups, opt.include_vacuous);
  const auto circuit_summary = summary_of(circuit_groups);
  const auto n = c.mgr ? c.mgr->var_count() : 0;

  if (opt.format == report_format::json) {
    json j;
    j["version"] = version_string;
    j["circuit"] = c.name;
    json outs = json::array();
    for (std::size_t k = 0; k < r.outputs.size(); ++k) {
      const auto& rep = r.outputs[k];
      json o;
      o["name"] = k < c.output_names.size() ? c.output_names[k] : "f" + std::to_string(k + 1);
      o["pairs"] = pairs_json(visible_pairs(rep.pairs, opt.include_vacuous));
      o["groups"] = groups_json(c, filtered_groups(rep.groups, opt.include_vacuous));
      outs.push_back(std::move(o));
    }
    j["outputs"] = std::move(outs);
    j["circuit_groups"] = groups_json(c, circuit_groups);
    j["summary"] = summary_json(circuit_summary);
    j["total_symmetry"] = total_token(r.total);
    j["time_seconds"] = r.seconds;
    return j.dump(2) + "\n";
  }

  if (opt.format == report_format::csv) {
    std::string out = csv_header();
    out += csv_row(c.name, n, static_cast<std::uint32_t>(r.outputs.size()), circuit_summary,
                   r.seconds);
    if (opt.per_output && r.outputs.size() > 1) {
      for (std::size_t k = 0; k < r.outputs.size(); ++k) {
        const auto& rep = r.outputs[k];
        const std::string oname =
            c.name + ":" + (k < c.output_names.size() ? c.output_names[k]
                                                      : "f" + std::to_string(k + 1));
        out += csv_row(oname, n, 1,
                       summary_of(filtered_groups(rep.groups, opt.include_vacuous)),
                       rep.seconds);
      }
    }
    return out;
  }

  std::ostringstream out;
  out << "circuit " << c.name << " (" << c.format << "): " << n << " input"
      << (n == 1 ? "" : "s") << ", " << r.outputs.size() << " output"
      << (r.outputs.size() == 1 ? "" : "s") << "\n";
  if (opt.per_output || r.outputs.size() == 1) {
    for (std::size_t k = 0; k < r.outputs.size(); ++k) {
      render_output_section(out, c, r.outputs[k],
                            k < c.output_names.size() ? c.output_names[k]
                                                      : "f" + std::to_string(k + 1),
                            opt.include_vacuous);
    }
  }
  std::vector<std::string> items;
  for (const auto& pc : visible_pairs(r.pairs, opt.include_vacuous))
    items.push_back(pair_text(c, pc));
  render_list_line(out, "circuit pairs", items);
  items.clear();
  for (const auto& g : circuit_groups) items.push_back(group_text(c, g));
  render_list_line(out, "circuit groups", items);
  out << "summary: " << (circuit_summary.empty() ? "(none)" : summary_text(circuit_summary))
      << "\n";
  out << "totally symmetric: " << total_token(r.total) << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", r.seconds);
  out << "time: " << buf << " s\n";
  return out.str();
}

} // namespace bsym::io
