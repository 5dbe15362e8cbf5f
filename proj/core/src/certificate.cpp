#include "qprefine/certificate.hpp"

#include <sstream>
#include <unordered_map>

#include "qprefine/qps.hpp"

namespace qprefine {

Certificate make_certificate(const GeneralQP& g, const GeneralSolution& s) {
  Certificate c;
  c.name = g.name;
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    c.primal.emplace_back(j < g.col_names.size() ? g.col_names[j] : "x" + std::to_string(j + 1), s.x[j]);
  }
  for (std::size_t i = 0; i < s.row_duals.size(); ++i) {
    c.dual.emplace_back(i < g.row_names.size() ? g.row_names[i] : "r" + std::to_string(i + 1), s.row_duals[i]);
  }
  return c;
}

std::string write_certificate(const Certificate& c) {
  std::ostringstream os;
  os << "# qprefine exact certificate\nNAME " << c.name << "\nPRIMAL\n";
  for (const auto& [n, v] : c.primal) os << n << ' ' << v.to_fraction_string() << '\n';
  os << "DUAL\n";
  for (const auto& [n, v] : c.dual) os << n << ' ' << v.to_fraction_string() << '\n';
  os << "END\n";
  return os.str();
}

Certificate parse_certificate(std::string_view text) {
  Certificate c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  enum { header, primal, dual, done } state = header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string a, b, extra;
    ls >> a;
    if (a.empty() || a.front() == '#') continue;
    auto fail = [&](const std::string& msg) {
      return CertificateError("certificate line " + std::to_string(line_no) + ": " + msg);
    };
    if (state == done) throw fail("content after END");
    if (a == "NAME") {
      std::getline(ls >> std::ws, c.name);
      continue;
    }
    if (a == "PRIMAL") {
      state = primal;
      continue;
    }
    if (a == "DUAL") {
      state = dual;
      continue;
    }
    if (a == "END") {
      state = done;
      continue;
    }
    if (state == header) throw fail("value before PRIMAL");
    if (!(ls >> b) || (ls >> extra)) throw fail("expected '<name> <value>'");
    Rational v;
    try {
      v = parse_exact_number(b);
    } catch (const std::exception& e) {
      throw fail(e.what());
    }
    (state == primal ? c.primal : c.dual).emplace_back(a, std::move(v));
  }
  if (state != done) throw CertificateError("certificate: missing END");
  return c;
}

namespace {

RatVector align(const std::vector<std::string>& names, const std::vector<std::pair<std::string, Rational>>& values,
                const char* what) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  RatVector out(names.size());
  std::vector<bool> seen(names.size(), false);
  for (const auto& [n, v] : values) {
    const auto it = index.find(n);
    if (it == index.end()) throw CertificateError(std::string("certificate: unknown ") + what + " '" + n + "'");
    if (seen[it->second]) throw CertificateError(std::string("certificate: duplicate ") + what + " '" + n + "'");
    seen[it->second] = true;
    out[it->second] = v;
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!seen[i]) throw CertificateError(std::string("certificate: missing ") + what + " '" + names[i] + "'");
  }
  return out;
}

}  // namespace

GeneralSolution align_certificate(const GeneralQP& g, const Certificate& c) {
  GeneralSolution s;
  s.x = align(g.col_names, c.primal, "column");
  s.row_duals = align(g.row_names, c.dual, "row");
  s.objective = objective_exact(g, s.x);
  return s;
}

}  // namespace qprefine
