#include "qprefine/presets.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qprefine {

std::vector<std::string> preset_names() { return {"s1", "s2", "s3", "s4", "s5"}; }

RefineParams preset(std::string_view name) {
  RefineParams p;
  p.preset = std::string(name);
  p.alpha = Rational::pow10(12);
  p.l_max = 10;
  p.eps_p = Rational::pow10(-100);
  p.eps_d = Rational::pow10(-100);
  if (name == "s1") {
    p.k_max = 300;
    p.ratfac_minstalls = 2;
  } else if (name == "s2") {
    p.k_max = 50;
    p.ratfac_minstalls = 0;
  } else if (name == "s3" || name == "s4") {
    p.k_max = 50;
    p.ratfac_minstalls = name == "s3" ? 0 : 51;
    p.sparse = true;
    p.warm_start = false;
    p.resolve = false;
  } else if (name == "s5") {
    p.eps_p = Rational::pow10(-10);
    p.eps_d = Rational::pow10(-10);
    p.l_max = 1;
    p.k_max = 10;
    p.ratfac_minstalls = 30;
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  p.eps_s = p.eps_p * p.eps_d;
  return p;
}

std::string format_parameter(const Rational& r) {
  if (r.sign() > 0) {
    const mpz_class& num = r.value().get_num();
    const mpz_class& den = r.value().get_den();
    const bool num_one = num == 1;
    const mpz_class& other = num_one ? den : num;
    if (num_one || den == 1) {
      const std::string digits = other.get_str();
      if (digits.size() > 1 && digits.front() == '1' && digits.find_first_not_of('0', 1) == std::string::npos) {
        const long e = static_cast<long>(digits.size() - 1);
        return "1e" + std::to_string(num_one ? -e : e);
      }
    }
  }
  return to_decimal_string(r, 17);
}

std::string describe_presets() {
  std::vector<RefineParams> all;
  for (const auto& n : preset_names()) all.push_back(preset(n));
  std::ostringstream os;
  auto row = [&](const std::string& label, auto value) {
    os << std::left << std::setw(34) << label;
    for (const auto& p : all) os << std::setw(9) << value(p);
    os << '\n';
  };
  row("parameter set", [](const RefineParams& p) { return p.preset; });
  row("primal tolerance (eps_p)", [](const RefineParams& p) { return format_parameter(p.eps_p); });
  row("dual tolerance (eps_d)", [](const RefineParams& p) { return format_parameter(p.eps_d); });
  row("maxscaleincrement (alpha)", [](const RefineParams& p) { return format_parameter(p.alpha); });
  row("sparse", [](const RefineParams& p) { return std::string(p.sparse ? "yes" : "no"); });
  row("max num backstepping (l_max)", [](const RefineParams& p) { return std::to_string(p.l_max); });
  row("refinement limit (k_max)", [](const RefineParams& p) { return std::to_string(p.k_max); });
  row("ratfac minstalls", [](const RefineParams& p) { return std::to_string(p.ratfac_minstalls); });
  row("slack tolerance (eps_s)", [](const RefineParams& p) { return format_parameter(p.eps_s); });
  row("hotstart", [](const RefineParams& p) { return std::string(p.warm_start ? "yes" : "no"); });
  row("fast-then-reliable resolves", [](const RefineParams& p) { return std::string(p.resolve ? "yes" : "no"); });
  return os.str();
}

std::string describe_params(const RefineParams& p) {
  std::ostringstream os;
  os << "preset: " << p.preset << '\n'
     << "primal_tol: " << format_parameter(p.eps_p) << '\n'
     << "dual_tol: " << format_parameter(p.eps_d) << '\n'
     << "slack_tol: " << format_parameter(p.eps_s) << '\n'
     << "maxscaleincrement: " << format_parameter(p.alpha) << '\n'
     << "max_backstepping: " << p.l_max << '\n'
     << "refinement_limit: " << p.k_max << '\n'
     << "ratfac_minstalls: " << p.ratfac_minstalls << '\n'
     << "rational_factorization: " << (p.rational_factorization ? "yes" : "no") << '\n'
     << "hotstart: " << (p.warm_start ? "yes" : "no") << '\n'
     << "resolves: " << (p.resolve ? "yes" : "no") << '\n'
     << "sparse: " << (p.sparse ? "yes" : "no") << '\n';
  return os.str();
}

}  // namespace qprefine
