#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qprefine/model.hpp"

namespace qprefine {

/// Exact primal values per column and dual values per row of a GeneralQP.
struct Certificate {
  std::string name;
  std::vector<std::pair<std::string, Rational>> primal;
  std::vector<std::pair<std::string, Rational>> dual;
};

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Certificate make_certificate(const GeneralQP& g, const GeneralSolution& s);

/// Text form:
///   # qprefine exact certificate
///   NAME <name>
///   PRIMAL
///   <column> p/q
///   DUAL
///   <row> p/q
///   END
std::string write_certificate(const Certificate& c);

/// Values may be "p/q" or decimal literals. Throws CertificateError.
Certificate parse_certificate(std::string_view text);

/// Orders the certificate's values by the names of g. Throws
/// CertificateError on unknown, missing or duplicate names.
GeneralSolution align_certificate(const GeneralQP& g, const Certificate& c);

}  // namespace qprefine
