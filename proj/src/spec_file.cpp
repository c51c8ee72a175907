#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "higgsnef/cli.hpp"

namespace higgsnef {

namespace {

struct Located {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

[[noreturn]] void fail(std::size_t line, std::size_t column,
                       const std::string& msg) {
  throw Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + msg);
}

[[noreturn]] void fail(const Located& at, const std::string& msg) {
  fail(at.line, at.column, msg);
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

long parse_long(const Located& v) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(v.text, &used);
  } catch (const std::exception&) {
    fail(v, "expected an integer, got '" + v.text + "'");
  }
  if (used != v.text.size()) fail(v, "expected an integer, got '" + v.text + "'");
  return out;
}

bool parse_bool(const Located& v) {
  if (v.text == "true") return true;
  if (v.text == "false") return false;
  fail(v, "expected true or false, got '" + v.text + "'");
}

struct Section {
  std::string name;
  std::size_t line = 0;
  std::map<std::string, Located> values;

  const Located* get(const std::string& key) const {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  }
  const Located& need(const std::string& key) const {
    if (auto* v = get(key)) return *v;
    fail(line, 1, "[" + name + "] section is missing '" + key + "'");
  }
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"curve", {"genus"}},
      {"atom", {"label", "rank", "degree", "assumed_stable"}},
      {"arrow", {"from", "to"}},
  };
  return keys;
}

std::size_t first_non_space(const std::string& s, std::size_t from = 0) {
  while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
  return from;
}

std::size_t trimmed_end(const std::string& s, std::size_t from, std::size_t to) {
  while (to > from && std::isspace(static_cast<unsigned char>(s[to - 1]))) --to;
  return to;
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto hash = raw.find('#');
    const std::string line = raw.substr(0, hash);
    const auto begin = first_non_space(line);
    if (begin == line.size()) continue;
    const auto end = trimmed_end(line, begin, line.size());

    if (line[begin] == '[') {
      if (line[end - 1] != ']') fail(lineno, end, "expected ']'");
      const auto nb = first_non_space(line, begin + 1);
      const auto ne = trimmed_end(line, nb, end - 1);
      std::string name = line.substr(nb, ne - nb);
      if (!allowed_keys().contains(name)) {
        fail(lineno, nb + 1, "unknown section [" + name + "]");
      }
      sections.push_back({std::move(name), lineno, {}});
      continue;
    }
    if (sections.empty()) fail(lineno, begin + 1, "key outside of any section");
    const auto eq = line.find('=', begin);
    if (eq == std::string::npos || eq >= end) {
      fail(lineno, begin + 1, "expected 'key = value'");
    }
    const auto kend = trimmed_end(line, begin, eq);
    std::string key = line.substr(begin, kend - begin);
    auto& sec = sections.back();
    if (!allowed_keys().at(sec.name).contains(key)) {
      fail(lineno, begin + 1, "unknown key '" + key + "' in [" + sec.name + "]");
    }
    const auto vb = first_non_space(line, eq + 1);
    if (vb >= end) fail(lineno, eq + 2, "missing value for '" + key + "'");
    Located value{line.substr(vb, end - vb), lineno, vb + 1};
    if (!sec.values.emplace(key, value).second) {
      fail(lineno, begin + 1, "duplicate key '" + key + "'");
    }
  }
  return sections;
}

}  // namespace

SplitHiggsBundle parse_bundle_spec(std::string_view text) {
  const auto sections = split_sections(text);
  std::optional<CurveSpec> curve;
  std::vector<Atom> atoms;
  std::map<std::string, std::size_t> index;
  std::vector<const Section*> arrow_sections;

  for (const auto& sec : sections) {
    if (sec.name == "curve") {
      if (curve) fail(sec.line, 1, "more than one [curve] section");
      const auto& g = sec.need("genus");
      curve = CurveSpec{parse_long(g)};
      if (curve->genus < 0) fail(g, "genus must be >= 0");
    } else if (sec.name == "atom") {
      Atom a;
      const auto& label = sec.need("label");
      if (!is_identifier(label.text)) fail(label, "bad label '" + label.text + "'");
      a.label = label.text;
      a.degree = parse_long(sec.need("degree"));
      if (auto* r = sec.get("rank")) {
        a.rank = parse_long(*r);
        if (a.rank < 1) fail(*r, "rank must be >= 1");
      }
      if (auto* s = sec.get("assumed_stable")) a.assumed_stable = parse_bool(*s);
      if (!index.emplace(a.label, atoms.size()).second) {
        fail(label, "duplicate label '" + a.label + "'");
      }
      atoms.push_back(std::move(a));
    } else {
      arrow_sections.push_back(&sec);
    }
  }
  if (!curve) fail(1, 1, "missing [curve] section");
  if (atoms.empty()) fail(1, 1, "at least one atom is required");

  std::vector<Arrow> arrows;
  for (const auto* sec : arrow_sections) {
    auto resolve = [&](const std::string& key) {
      const auto& v = sec->need(key);
      auto it = index.find(v.text);
      if (it == index.end()) fail(v, "arrow refers to unknown label '" + v.text + "'");
      return it->second;
    };
    arrows.push_back({resolve("from"), resolve("to")});
  }
  return SplitHiggsBundle(*curve, std::move(atoms), std::move(arrows));
}

std::string serialize_bundle_spec(const SplitHiggsBundle& spec) {
  std::ostringstream out;
  out << "[curve]\ngenus = " << spec.curve().genus << "\n";
  for (const auto& a : spec.atoms()) {
    out << "\n[atom]\nlabel = " << a.label << "\nrank = " << a.rank
        << "\ndegree = " << a.degree
        << "\nassumed_stable = " << (a.assumed_stable ? "true" : "false") << "\n";
  }
  for (const auto& a : spec.arrows()) {
    out << "\n[arrow]\nfrom = " << spec.atom(a.from).label
        << "\nto = " << spec.atom(a.to).label << "\n";
  }
  return out.str();
}

SplitHiggsBundle load_bundle_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_bundle_spec(buf.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace higgsnef
