#include "qprefine/qps.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace qprefine {

Rational parse_exact_number(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return Rational::from_fraction_string(text);
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  long frac = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      ++frac;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E' || text[i] == 'd' || text[i] == 'D')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (i - start > 8) throw std::invalid_argument("exponent too large in '" + std::string(text) + "'");
      exponent = exponent * 10 + (text[i++] - '0');
    }
    if (i == start) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    if (exp_negative) exponent = -exponent;
  }
  if (i != text.size()) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  Rational value(mpz_class(digits, 10), mpz_class(1));
  value *= Rational::pow10(exponent - frac);
  return negative ? -value : value;
}

namespace {

enum class Section { none, name, rows, columns, rhs, ranges, bounds, quadobj, qmatrix, endata };

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

std::vector<std::string> split_free(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string field(std::string_view line, std::size_t first, std::size_t last) {
  if (line.size() < first) return {};
  return trim(line.substr(first - 1, std::min(line.size(), last) - (first - 1)));
}

// Fixed MPS columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61. Empty fields
// are dropped except that the leading type field keeps its slot when
// `typed` is set.
std::vector<std::string> split_fixed(std::string_view line, bool typed) {
  const std::string f[6] = {field(line, 2, 3),   field(line, 5, 12),  field(line, 15, 22),
                            field(line, 25, 36), field(line, 40, 47), field(line, 50, 61)};
  std::vector<std::string> out;
  if (typed) out.push_back(f[0]);
  for (int i = 1; i < 6; ++i) {
    if (!f[i].empty()) out.push_back(f[i]);
  }
  return out;
}

std::optional<int> infinity_sign(std::string_view text) {
  std::string_view t = text;
  int sign = 1;
  if (!t.empty() && (t.front() == '+' || t.front() == '-')) {
    sign = t.front() == '-' ? -1 : 1;
    t.remove_prefix(1);
  }
  const std::string u = upper(t);
  if (u == "INF" || u == "INFINITY") return sign;
  return std::nullopt;
}

struct Parser {
  std::vector<std::string>* warnings;
  GeneralQP g;
  std::unordered_map<std::string, std::size_t> rows;  // constraint rows
  std::vector<char> row_type;
  std::set<std::string> ignored_rows;
  bool have_objective = false;
  std::unordered_map<std::string, std::size_t> cols;
  std::string current_col;
  std::map<std::pair<std::size_t, std::size_t>, Rational> a_entries;
  std::map<std::pair<std::size_t, std::size_t>, Rational> q_entries;
  std::vector<Rational> rhs;
  std::vector<std::optional<Rational>> range;
  std::vector<bool> lower_given;
  std::set<Section> seen;
  std::size_t line_no = 0;
  bool ignored_warned = false;

  void warn(const std::string& msg) {
    if (warnings) warnings->push_back("line " + std::to_string(line_no) + ": " + msg);
  }

  Rational number(const std::string& t) {
    try {
      return parse_exact_number(t);
    } catch (const std::invalid_argument& e) {
      throw Mismatch(e.what());
    }
  }

  // nullopt for an infinite value; `sign` receives its direction.
  std::optional<Rational> bound_value(const std::string& t, int& sign) {
    if (const auto s = infinity_sign(t)) {
      sign = *s;
      return std::nullopt;
    }
    Rational v = number(t);
    sign = v.sign();
    return v;
  }

  std::size_t column(const std::string& name) {
    const auto it = cols.find(name);
    if (it == cols.end()) throw Mismatch("unknown column '" + name + "'");
    return it->second;
  }

  // Returns the constraint index, or m for the objective row; ignored rows
  // yield nullopt.
  std::optional<std::size_t> row(const std::string& name) {
    if (name == g.objective_name && have_objective) return rows.size();
    if (const auto it = rows.find(name); it != rows.end()) return it->second;
    if (ignored_rows.count(name)) return std::nullopt;
    throw Mismatch("unknown row '" + name + "'");
  }

  void handle_rows(const std::vector<std::string>& t) {
    if (t.size() != 2) throw Mismatch("ROWS entry needs a type and a name");
    const std::string type = upper(t[0]);
    const std::string& name = t[1];
    if (rows.count(name) || (have_objective && name == g.objective_name) || ignored_rows.count(name)) {
      throw Mismatch("duplicate row '" + name + "'");
    }
    if (type == "N") {
      if (!have_objective) {
        have_objective = true;
        g.objective_name = name;
      } else {
        ignored_rows.insert(name);
        if (!ignored_warned) warn("additional free row '" + name + "' ignored");
        ignored_warned = true;
      }
      return;
    }
    if (type != "E" && type != "L" && type != "G") throw Mismatch("unknown row type '" + t[0] + "'");
    rows.emplace(name, g.row_names.size());
    g.row_names.push_back(name);
    row_type.push_back(type[0]);
  }

  void handle_columns(const std::vector<std::string>& t) {
    if (t.size() >= 2 && (t[1] == "'MARKER'" || t[1] == "MARKER")) throw Mismatch("integer markers are not supported");
    if (t.size() != 3 && t.size() != 5) throw Mismatch("COLUMNS entry needs a column and one or two row/value pairs");
    const std::string& name = t[0];
    std::size_t j;
    if (name != current_col) {
      if (cols.count(name)) throw Mismatch("duplicate column '" + name + "'");
      j = g.col_names.size();
      cols.emplace(name, j);
      g.col_names.push_back(name);
      g.c.emplace_back();
      current_col = name;
    } else {
      j = cols.at(name);
    }
    for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
      const auto r = row(t[k]);
      const Rational v = number(t[k + 1]);
      if (!r) continue;
      if (*r == rows.size()) {
        if (!g.c[j].is_zero()) throw Mismatch("duplicate objective entry for column '" + name + "'");
        g.c[j] = v;
        continue;
      }
      if (!a_entries.emplace(std::make_pair(*r, j), v).second) {
        throw Mismatch("duplicate entry for row '" + t[k] + "' in column '" + name + "'");
      }
    }
  }

  void handle_rhs(const std::vector<std::string>& t, bool ranges) {
    if (t.size() < 2 || t.size() > 5) throw Mismatch("malformed entry");
    const std::size_t first = t.size() % 2 == 1 ? 1 : 0;
    for (std::size_t k = first; k + 1 < t.size(); k += 2) {
      const auto r = row(t[k]);
      if (!r) continue;
      const Rational v = number(t[k + 1]);
      if (*r == rows.size()) {
        if (ranges) throw Mismatch("RANGES entry on the objective row");
        g.objective_constant = -v;
      } else if (ranges) {
        if (range[*r]) throw Mismatch("duplicate RANGES entry for row '" + t[k] + "'");
        range[*r] = v;
      } else {
        rhs[*r] = v;
      }
    }
  }

  void handle_rhs_infinite(const std::vector<std::string>& t, std::vector<std::optional<int>>& inf_rhs) {
    const std::size_t first = t.size() % 2 == 1 ? 1 : 0;
    for (std::size_t k = first; k + 1 < t.size(); k += 2) {
      if (const auto s = infinity_sign(t[k + 1])) {
        const auto r = row(t[k]);
        if (r && *r < rows.size()) inf_rhs[*r] = *s;
      }
    }
  }

  void handle_bounds(const std::vector<std::string>& t) {
    if (t.empty()) throw Mismatch("empty BOUNDS entry");
    const std::string type = upper(t[0]);
    if (type == "BV" || type == "LI" || type == "UI" || type == "SC") {
      throw Mismatch("bound type " + type + " is not supported");
    }
    const bool needs_value = type == "LO" || type == "UP" || type == "FX";
    const bool no_value = type == "FR" || type == "MI" || type == "PL";
    if (!needs_value && !no_value) throw Mismatch("unknown bound type '" + t[0] + "'");
    std::size_t col_pos;
    if (needs_value) {
      if (t.size() == 4) {
        col_pos = 2;
      } else if (t.size() == 3) {
        col_pos = 1;
      } else {
        throw Mismatch("malformed " + type + " bound");
      }
    } else {
      if (t.size() == 3 || t.size() == 4) {
        col_pos = 2;
      } else if (t.size() == 2) {
        col_pos = 1;
      } else {
        throw Mismatch("malformed " + type + " bound");
      }
    }
    const std::size_t j = column(t[col_pos]);
    if (type == "FR") {
      g.col_lower[j].reset();
      g.col_upper[j].reset();
      lower_given[j] = true;
    } else if (type == "MI") {
      g.col_lower[j].reset();
      lower_given[j] = true;
    } else if (type == "PL") {
      g.col_upper[j].reset();
    } else {
      int sign = 0;
      const auto v = bound_value(t[col_pos + 1], sign);
      if (type == "LO") {
        if (!v && sign > 0) throw Mismatch("lower bound of +infinity");
        g.col_lower[j] = v;
        lower_given[j] = true;
      } else if (type == "UP") {
        if (!v && sign < 0) throw Mismatch("upper bound of -infinity");
        g.col_upper[j] = v;
        if (v && v->sign() < 0 && !lower_given[j]) {
          warn("negative upper bound on '" + t[col_pos] + "' with default lower bound 0; lower bound kept at 0");
        }
      } else {
        if (!v) throw Mismatch("infinite FX bound");
        g.col_lower[j] = v;
        g.col_upper[j] = v;
        lower_given[j] = true;
      }
    }
  }

  void handle_quad(const std::vector<std::string>& t, bool lower_triangle) {
    if (t.size() != 3) throw Mismatch("quadratic entry needs two columns and a value");
    std::size_t i = column(t[0]);
    std::size_t j = column(t[1]);
    const Rational v = number(t[2]);
    if (lower_triangle && i < j) std::swap(i, j);
    if (!q_entries.emplace(std::make_pair(i, j), v).second) {
      throw Mismatch("duplicate quadratic entry (" + t[0] + ", " + t[1] + ")");
    }
  }

  void start_columns_done() {
    const std::size_t m = rows.size();
    rhs.assign(m, Rational());
    range.assign(m, std::nullopt);
  }

  void start_bounds() {
    const std::size_t n = g.col_names.size();
    if (g.col_lower.size() != n) {
      g.col_lower.assign(n, Rational());
      g.col_upper.assign(n, std::nullopt);
      lower_given.assign(n, false);
    }
  }
};

Section section_of(const std::string& word) {
  static const std::map<std::string, Section> table = {
      {"NAME", Section::name},         {"ROWS", Section::rows},     {"COLUMNS", Section::columns},
      {"RHS", Section::rhs},           {"RANGES", Section::ranges}, {"BOUNDS", Section::bounds},
      {"QUADOBJ", Section::quadobj},   {"QMATRIX", Section::qmatrix}, {"QSECTION", Section::qmatrix},
      {"ENDATA", Section::endata}};
  const auto it = table.find(word);
  return it == table.end() ? Section::none : it->second;
}

}  // namespace

GeneralQP parse_qps(std::string_view text, std::vector<std::string>* warnings) {
  Parser ps;
  ps.warnings = warnings;
  Section sec = Section::none;
  std::vector<std::optional<int>> inf_rhs;
  std::size_t pos = 0;
  bool ended = false;
  bool rhs_ready = false;
  auto ensure_rhs = [&]() {
    if (!rhs_ready) {
      ps.start_columns_done();
      inf_rhs.assign(ps.rows.size(), std::nullopt);
      rhs_ready = true;
    }
  };

  while (pos < text.size() && !ended) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++ps.line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || line.front() == '*') continue;

    if (!std::isspace(static_cast<unsigned char>(line.front()))) {
      const auto words = split_free(line);
      const std::string head = upper(words.front());
      const Section next = section_of(head);
      if (next == Section::none) throw QpsError(ps.line_no, "unknown section '" + words.front() + "'");
      if (!ps.seen.insert(next).second) throw QpsError(ps.line_no, "duplicate section " + head);
      if (next == Section::name) {
        ps.g.name = words.size() > 1 ? words[1] : "";
        sec = Section::name;
        continue;
      }
      if (next == Section::endata) {
        ended = true;
        break;
      }
      if (next != Section::rows && next != Section::columns && !ps.seen.count(Section::columns)) {
        throw QpsError(ps.line_no, head + " before COLUMNS");
      }
      if (next == Section::columns && !ps.seen.count(Section::rows)) {
        throw QpsError(ps.line_no, "COLUMNS before ROWS");
      }
      if (next != Section::rows && next != Section::columns) {
        ensure_rhs();
        ps.start_bounds();
      }
      if (next == Section::columns && !ps.have_objective) {
        throw QpsError(ps.line_no, "no objective (N) row");
      }
      sec = next;
      continue;
    }

    const bool typed = sec == Section::rows || sec == Section::bounds;
    auto run = [&](const std::vector<std::string>& t) {
      switch (sec) {
        case Section::rows:
          ps.handle_rows(t);
          break;
        case Section::columns:
          ps.handle_columns(t);
          break;
        case Section::rhs: {
          bool any_inf = false;
          const std::size_t first = t.size() % 2 == 1 ? 1 : 0;
          for (std::size_t k = first + 1; k < t.size(); k += 2) any_inf |= infinity_sign(t[k]).has_value();
          if (any_inf) {
            if (t.size() < 2 || t.size() > 5) throw Mismatch("malformed entry");
            ps.handle_rhs_infinite(t, inf_rhs);
            std::vector<std::string> finite;
            if (first) finite.push_back(t[0]);
            for (std::size_t k = first; k + 1 < t.size(); k += 2) {
              if (!infinity_sign(t[k + 1])) {
                finite.push_back(t[k]);
                finite.push_back(t[k + 1]);
              }
            }
            if (finite.size() > first) ps.handle_rhs(finite, false);
          } else {
            ps.handle_rhs(t, false);
          }
          break;
        }
        case Section::ranges:
          ps.handle_rhs(t, true);
          break;
        case Section::bounds:
          ps.handle_bounds(t);
          break;
        case Section::quadobj:
          ps.handle_quad(t, true);
          break;
        case Section::qmatrix:
          ps.handle_quad(t, false);
          break;
        default:
          throw Mismatch("data line outside a section");
      }
    };
    try {
      run(split_free(line));
    } catch (const Mismatch& first) {
      bool recovered = false;
      if (sec != Section::none && sec != Section::name) {
        try {
          run(split_fixed(line, typed));
          recovered = true;
        } catch (const Mismatch&) {
        }
      }
      if (!recovered) throw QpsError(ps.line_no, first.what());
    }
  }
  if (!ended) throw QpsError(ps.line_no, "missing ENDATA");
  if (!ps.seen.count(Section::columns)) throw QpsError(ps.line_no, "missing COLUMNS section");
  ensure_rhs();
  ps.start_bounds();

  GeneralQP& g = ps.g;
  const std::size_t n = g.col_names.size();
  const std::size_t m = ps.rows.size();
  std::vector<RatEntry> a;
  for (auto& [key, v] : ps.a_entries) a.push_back({key.first, key.second, v});
  g.a = RatMatrix::from_entries(m, n, std::move(a));
  std::vector<RatEntry> q;
  for (auto& [key, v] : ps.q_entries) {
    q.push_back({key.first, key.second, v});
    if (key.first != key.second && !ps.seen.count(Section::qmatrix)) q.push_back({key.second, key.first, v});
  }
  try {
    g.q = RatMatrix::from_entries(n, n, std::move(q), true);
  } catch (const std::invalid_argument& e) {
    throw QpsError(ps.line_no, std::string("quadratic section: ") + e.what());
  }

  g.row_lower.assign(m, std::nullopt);
  g.row_upper.assign(m, std::nullopt);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational& b = ps.rhs[i];
    const char type = ps.row_type[i];
    if (inf_rhs[i]) {
      if (ps.range[i]) throw QpsError(ps.line_no, "RANGES on a row with infinite right-hand side");
      // An infinite right-hand side leaves the row unbounded on that side.
      if (type == 'L' && *inf_rhs[i] < 0) throw QpsError(ps.line_no, "L row with -infinity right-hand side");
      if (type == 'G' && *inf_rhs[i] > 0) throw QpsError(ps.line_no, "G row with +infinity right-hand side");
      if (type == 'E') throw QpsError(ps.line_no, "E row with infinite right-hand side");
      continue;
    }
    if (!ps.range[i]) {
      if (type == 'E' || type == 'G') g.row_lower[i] = b;
      if (type == 'E' || type == 'L') g.row_upper[i] = b;
      continue;
    }
    const Rational& r = *ps.range[i];
    const Rational mag = r.abs();
    if (type == 'E') {
      if (r.sign() >= 0) {
        g.row_lower[i] = b;
        g.row_upper[i] = b + mag;
      } else {
        g.row_lower[i] = b - mag;
        g.row_upper[i] = b;
      }
    } else if (type == 'L') {
      g.row_lower[i] = b - mag;
      g.row_upper[i] = b;
    } else {
      g.row_lower[i] = b;
      g.row_upper[i] = b + mag;
    }
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw QpsError(ps.line_no, e.what());
  }
  return g;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GeneralQP read_qps_file(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  return parse_qps(read_text_file(path), warnings);
}

std::string format_exact(const Rational& r) {
  std::string s = to_exact_decimal_string(r);
  return s.empty() ? r.to_fraction_string() : s;
}

std::string write_qps(const GeneralQP& g) {
  g.validate();
  const std::size_t n = g.num_cols();
  const std::size_t m = g.num_rows();
  std::vector<std::string> cn = g.col_names;
  std::vector<std::string> rn = g.row_names;
  if (cn.empty()) {
    for (std::size_t j = 0; j < n; ++j) cn.push_back("X" + std::to_string(j + 1));
  }
  if (rn.empty()) {
    for (std::size_t i = 0; i < m; ++i) rn.push_back("R" + std::to_string(i + 1));
  }
  const std::string obj = g.objective_name.empty() ? "OBJ" : g.objective_name;

  std::ostringstream os;
  os << "NAME          " << (g.name.empty() ? "QP" : g.name) << "\nROWS\n N  " << obj << '\n';
  std::vector<Rational> rhs(m);
  std::vector<std::optional<Rational>> ranges(m);
  std::vector<bool> inf_rhs(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& lo = g.row_lower[i];
    const auto& up = g.row_upper[i];
    char type;
    if (lo && up && *lo == *up) {
      type = 'E';
      rhs[i] = *lo;
    } else if (lo && up) {
      type = 'G';
      rhs[i] = *lo;
      ranges[i] = *up - *lo;
    } else if (lo) {
      type = 'G';
      rhs[i] = *lo;
    } else if (up) {
      type = 'L';
      rhs[i] = *up;
    } else {
      type = 'G';
      inf_rhs[i] = true;
    }
    os << ' ' << type << "  " << rn[i] << '\n';
  }

  os << "COLUMNS\n";
  const RatMatrix at = g.a.transpose();
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    if (!g.c[j].is_zero()) {
      os << "    " << cn[j] << ' ' << obj << ' ' << format_exact(g.c[j]) << '\n';
      any = true;
    }
    for (std::size_t k = at.row_begin(j); k < at.row_begin(j + 1); ++k) {
      const auto& e = at.entries()[k];
      os << "    " << cn[j] << ' ' << rn[e.col] << ' ' << format_exact(e.value) << '\n';
      any = true;
    }
    if (!any) os << "    " << cn[j] << ' ' << obj << " 0\n";
  }

  os << "RHS\n";
  if (!g.objective_constant.is_zero()) {
    os << "    RHS " << obj << ' ' << format_exact(-g.objective_constant) << '\n';
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (inf_rhs[i]) {
      os << "    RHS " << rn[i] << " -Inf\n";
    } else if (!rhs[i].is_zero()) {
      os << "    RHS " << rn[i] << ' ' << format_exact(rhs[i]) << '\n';
    }
  }

  if (std::any_of(ranges.begin(), ranges.end(), [](const auto& r) { return r.has_value(); })) {
    os << "RANGES\n";
    for (std::size_t i = 0; i < m; ++i) {
      if (ranges[i]) os << "    RNG " << rn[i] << ' ' << format_exact(*ranges[i]) << '\n';
    }
  }

  std::ostringstream bounds;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& lo = g.col_lower[j];
    const auto& up = g.col_upper[j];
    if (lo && up && *lo == *up) {
      bounds << " FX BND " << cn[j] << ' ' << format_exact(*lo) << '\n';
      continue;
    }
    if (!lo && !up) {
      bounds << " FR BND " << cn[j] << '\n';
      continue;
    }
    if (!lo) {
      bounds << " MI BND " << cn[j] << '\n';
    } else if (!lo->is_zero()) {
      bounds << " LO BND " << cn[j] << ' ' << format_exact(*lo) << '\n';
    }
    if (up) bounds << " UP BND " << cn[j] << ' ' << format_exact(*up) << '\n';
  }
  if (!bounds.str().empty()) os << "BOUNDS\n" << bounds.str();

  if (g.q.nnz() > 0) {
    os << "QUADOBJ\n";
    for (const auto& e : g.q.entries()) {
      if (e.row >= e.col) os << "    " << cn[e.col] << ' ' << cn[e.row] << ' ' << format_exact(e.value) << '\n';
    }
  }
  os << "ENDATA\n";
  return os.str();
}

}  // namespace qprefine
