#include "bsym/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace bsym::io {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.back())) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  return s.substr(b);
}

// physical lines -> logical lines: '\r' dropped, '#' comments stripped,
// trailing '\' joins with the next line, blanks removed
std::vector<std::string> logical_lines(std::string_view text) {
  std::vector<std::string> raw;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      raw.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  raw.push_back(cur);

  std::vector<std::string> out;
  std::string pending;
  for (std::string line : raw) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = strip(line);
    if (!line.empty() && line.back() == '\\') {
      line.pop_back();
      pending += line + " ";
      continue;
    }
    line = strip(pending + line);
    pending.clear();
    if (!line.empty()) out.push_back(line);
  }
  if (!pending.empty()) out.push_back(strip(pending));
  return out;
}

std::vector<std::string> default_names(const std::string& prefix, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

std::uint32_t parse_count(const std::string& tok, const std::string& directive) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &pos);
  } catch (const std::exception&) {
    throw parse_error("malformed count after " + directive);
  }
  if (pos != tok.size() || v > 1u << 20)
    throw parse_error("malformed count after " + directive);
  return static_cast<std::uint32_t>(v);
}

} // namespace

circuit parse_truth_vector(std::string_view text, const std::string& name, var_id max_vars) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']' || c == ',')
      continue;
    cleaned.push_back(c);
  }
  const truth_table t = truth_table::from_string(cleaned);
  if (t.n > max_vars)
    throw limit_error("truth vector over " + std::to_string(t.n) +
                      " variables exceeds --max-vars " + std::to_string(max_vars));
  circuit c;
  c.name = name;
  c.format = "tt";
  c.mgr = std::make_shared<manager>(t.n, max_vars);
  c.input_names = default_names("x", t.n);
  c.output_names = {"f"};
  c.outputs = {c.mgr->from_truth_table(t)};
  return c;
}

circuit parse_pla(std::string_view text, const std::string& name, var_id max_vars) {
  constexpr std::uint32_t unset = 0xffffffffu;
  std::uint32_t ni = unset, no = unset;
  std::vector<std::string> ilb, ob;
  std::vector<std::pair<std::string, std::string>> cubes; // (input field, output field)
  std::vector<std::string> warnings;

  std::size_t lineno = 0;
  for (const std::string& line : logical_lines(text)) {
    ++lineno;
    if (line[0] == '.') {
      const auto tok = split_ws(line);
      const std::string& d = tok[0];
      if (d == ".i") {
        if (tok.size() != 2) throw parse_error(".i expects one count");
        if (ni != unset) throw parse_error("duplicate .i");
        ni = parse_count(tok[1], ".i");
      } else if (d == ".o") {
        if (tok.size() != 2) throw parse_error(".o expects one count");
        if (no != unset) throw parse_error("duplicate .o");
        no = parse_count(tok[1], ".o");
      } else if (d == ".ilb") {
        if (ni == unset) throw parse_error(".ilb before .i");
        if (tok.size() - 1 != ni)
          throw parse_error(".ilb names " + std::to_string(tok.size() - 1) +
                            " inputs, .i declares " + std::to_string(ni));
        ilb.assign(tok.begin() + 1, tok.end());
      } else if (d == ".ob") {
        if (no == unset) throw parse_error(".ob before .o");
        if (tok.size() - 1 != no)
          throw parse_error(".ob names " + std::to_string(tok.size() - 1) +
                            " outputs, .o declares " + std::to_string(no));
        ob.assign(tok.begin() + 1, tok.end());
      } else if (d == ".type") {
        if (tok.size() != 2 || (tok[1] != "f" && tok[1] != "fd"))
          throw parse_error("unsupported PLA type '" +
                            (tok.size() > 1 ? tok[1] : std::string()) +
                            "' (only f/fd)");
      } else if (d == ".p") {
        // cube count, informational
      } else if (d == ".e" || d == ".end") {
        break;
      } else {
        throw parse_error("unknown PLA directive '" + d + "'");
      }
      continue;
    }
    if (ni == unset || no == unset)
      throw parse_error("cube on line " + std::to_string(lineno) + " before .i/.o");
    std::string flat;
    for (const auto& tok : split_ws(line)) flat += tok;
    if (flat.size() != static_cast<std::size_t>(ni) + no)
      throw parse_error("cube width mismatch on line " + std::to_string(lineno) + ": got " +
                        std::to_string(flat.size()) + " columns, expected " +
                        std::to_string(ni + no));
    const std::string in = flat.substr(0, ni), out = flat.substr(ni);
    for (char ch : in)
      if (ch != '0' && ch != '1' && ch != '-')
        throw parse_error(std::string("illegal input-plane character '") + ch +
                          "' on line " + std::to_string(lineno));
    for (char ch : out) {
      if (ch != '0' && ch != '1' && ch != '-' && ch != '~')
        throw parse_error(std::string("illegal output-plane character '") + ch +
                          "' on line " + std::to_string(lineno));
      if (ch == '-')
        warnings.push_back("output don't-care on line " + std::to_string(lineno) +
                           " treated as 0");
    }
    cubes.emplace_back(in, out);
  }
  if (ni == unset || no == unset) throw parse_error("missing .i/.o declaration");
  if (ni > max_vars)
    throw limit_error("PLA with " + std::to_string(ni) + " inputs exceeds --max-vars " +
                      std::to_string(max_vars));

  circuit c;
  c.name = name;
  c.format = "pla";
  c.mgr = std::make_shared<manager>(ni, max_vars);
  c.input_names = ilb.empty() ? default_names("x", ni) : std::move(ilb);
  c.output_names = ob.empty()
                       ? (no == 1 ? std::vector<std::string>{"f"} : default_names("f", no))
                       : std::move(ob);
  c.warnings = std::move(warnings);

  for (std::uint32_t k = 0; k < no; ++k) {
    func acc = c.mgr->zero();
    for (const auto& [in, out] : cubes) {
      if (out[k] != '1') continue;
      func cube = c.mgr->one();
      for (std::uint32_t i = ni; i >= 1; --i) { // bottom-up keeps intermediates small
        if (in[i - 1] == '1')
          cube = c.mgr->var(i) & cube;
        else if (in[i - 1] == '0')
          cube = ~c.mgr->var(i) & cube;
      }
      acc = acc | cube;
    }
    c.outputs.push_back(acc);
  }
  return c;
}

namespace {

struct blif_gate {
  std::vector<std::string> deps;
  std::vector<std::string> rows; // input parts, all sharing out_value
  char out_value = '1';
};

} // namespace

circuit parse_blif(std::string_view text, const std::string& fallback_name, var_id max_vars) {
  const auto lines = logical_lines(text);
  std::string model;
  std::vector<std::string> inputs, outputs;
  std::map<std::string, blif_gate> gates;

  std::size_t li = 0;
  bool ended = false;
  while (li < lines.size() && !ended) {
    const auto tok = split_ws(lines[li]);
    const std::string& d = tok[0];
    if (d[0] != '.')
      throw parse_error("stray line outside any construct: '" + lines[li] + "'");
    if (d == ".model") {
      if (model.empty() && tok.size() > 1) model = tok[1];
      ++li;
    } else if (d == ".inputs") {
      inputs.insert(inputs.end(), tok.begin() + 1, tok.end());
      ++li;
    } else if (d == ".outputs") {
      outputs.insert(outputs.end(), tok.begin() + 1, tok.end());
      ++li;
    } else if (d == ".names") {
      if (tok.size() < 2) throw parse_error(".names needs at least an output signal");
      const std::string out = tok.back();
      if (gates.count(out)) throw parse_error("signal '" + out + "' redefined");
      blif_gate g;
      g.deps.assign(tok.begin() + 1, tok.end() - 1);
      ++li;
      bool have_value = false;
      while (li < lines.size() && lines[li][0] != '.') {
        const auto row = split_ws(lines[li]);
        std::string in_part;
        char out_part;
        if (g.deps.empty()) {
          if (row.size() != 1 || row[0].size() != 1)
            throw parse_error("malformed constant cover row '" + lines[li] + "'");
          out_part = row[0][0];
        } else {
          if (row.size() != 2 || row[1].size() != 1)
            throw parse_error("malformed cover row '" + lines[li] + "'");
          in_part = row[0];
          out_part = row[1][0];
          if (in_part.size() != g.deps.size())
            throw parse_error("cover row width mismatch for '" + out + "'");
          for (char ch : in_part)
            if (ch != '0' && ch != '1' && ch != '-')
              throw parse_error(std::string("illegal cover character '") + ch + "'");
        }
        if (out_part != '0' && out_part != '1')
          throw parse_error("cover output column must be 0 or 1");
        if (have_value && out_part != g.out_value)
          throw parse_error("mixed cover polarities for '" + out + "'");
        g.out_value = out_part;
        have_value = true;
        g.rows.push_back(in_part);
        ++li;
      }
      gates.emplace(out, std::move(g));
    } else if (d == ".latch") {
      throw parse_error("sequential constructs unsupported (.latch)");
    } else if (d == ".end") {
      ended = true;
    } else {
      throw parse_error("unsupported BLIF construct '" + d + "'");
    }
  }

  if (inputs.empty() && gates.empty()) throw parse_error("BLIF declares nothing");
  if (outputs.empty()) throw parse_error("BLIF declares no .outputs");
  {
    std::set<std::string> seen;
    for (const auto& s : inputs)
      if (!seen.insert(s).second) throw parse_error("input '" + s + "' declared twice");
    for (const auto& s : inputs)
      if (gates.count(s)) throw parse_error("signal '" + s + "' is both input and gate");
  }
  if (inputs.size() > max_vars)
    throw limit_error("BLIF with " + std::to_string(inputs.size()) +
                      " inputs exceeds --max-vars " + std::to_string(max_vars));

  circuit c;
  c.name = model.empty() ? fallback_name : model;
  c.format = "blif";
  c.mgr = std::make_shared<manager>(static_cast<var_id>(inputs.size()), max_vars);
  c.input_names = inputs;
  c.output_names = outputs;

  std::map<std::string, func> resolved;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    resolved.emplace(inputs[i], c.mgr->var(static_cast<var_id>(i + 1)));

  std::set<std::string> in_progress;
  // recursive substitution, cycle-checked
  auto resolve = [&](auto&& self, const std::string& sig) -> func {
    if (const auto it = resolved.find(sig); it != resolved.end()) return it->second;
    const auto git = gates.find(sig);
    if (git == gates.end()) throw parse_error("undefined signal '" + sig + "'");
    if (!in_progress.insert(sig).second)
      throw parse_error("combinational cycle involving '" + sig + "'");
    const blif_gate& g = git->second;
    std::vector<func> dep_funcs;
    dep_funcs.reserve(g.deps.size());
    for (const auto& dep : g.deps) dep_funcs.push_back(self(self, dep));
    func acc = c.mgr->zero();
    for (const auto& row : g.rows) {
      func term = c.mgr->one();
      for (std::size_t b = 0; b < g.deps.size(); ++b) {
        if (row[b] == '1')
          term = term & dep_funcs[b];
        else if (row[b] == '0')
          term = term & ~dep_funcs[b];
      }
      acc = acc | term;
    }
    if (g.out_value == '0') acc = ~acc; // rows list the OFF-set
    in_progress.erase(sig);
    resolved.emplace(sig, acc);
    return acc;
  };

  for (const auto& out : outputs) c.outputs.push_back(resolve(resolve, out));
  return c;
}

} // namespace bsym::io
