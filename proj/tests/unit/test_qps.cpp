#include <fstream>

#include "doctest.h"
#include "generators.hpp"
#include "json.hpp"
#include "qprefine/qps.hpp"

using namespace qprefine;
using namespace qprefine::testing;

namespace {

Rational frac(long p, long q) { return Rational(mpz_class(p), mpz_class(q)); }

std::size_t lower_nnz(const RatMatrix& q) {
  std::size_t k = 0;
  for (const auto& e : q.entries()) k += e.row >= e.col;
  return k;
}

bool same(const GeneralQP& a, const GeneralQP& b) {
  return a.name == b.name && a.col_names == b.col_names && a.row_names == b.row_names && a.q == b.q &&
         a.c == b.c && a.objective_constant == b.objective_constant && a.a == b.a && a.row_lower == b.row_lower &&
         a.row_upper == b.row_upper && a.col_lower == b.col_lower && a.col_upper == b.col_upper;
}

const char* kLp = R"(NAME LP
ROWS
 N obj
 L c1
 G c2
COLUMNS
 x obj 1 c1 1
 x c2 1
 y obj -2 c1 1
RHS
 rhs c1 4 c2 1
ENDATA
)";

}  // namespace

TEST_SUITE("qps_io") {
  TEST_CASE("golden instance file") {
    const GeneralQP g = read_qps_file(QPREFINE_TEST_DATA_DIR "/example1.qps");
    CHECK(g.name == "EXAMPLE1");
    CHECK(g.num_cols() == 2);
    CHECK(g.num_rows() == 1);
    CHECK(lower_nnz(g.q) == 2);
    CHECK(g.q.entry(0, 0) == Rational(1));
    CHECK(g.c[1] == frac(1000001, 1000000));
    CHECK(g.row_lower[0] == frac(1, 1000000));
    CHECK(g.row_upper[0] == frac(1, 1000000));
    CHECK(g.col_lower[0] == Rational());
    CHECK_FALSE(g.col_upper[0]);
  }

  TEST_CASE("literals are parsed without binary rounding") {
    CHECK(parse_exact_number("1.5e-3") == frac(3, 2000));
    CHECK(parse_exact_number("-0.1") == frac(-1, 10));
    CHECK(parse_exact_number("+12.") == Rational(12));
    CHECK(parse_exact_number(".5E+2") == Rational(50));
    CHECK(parse_exact_number("1d3") == Rational(1000));
    CHECK(parse_exact_number("-7/21") == frac(-1, 3));
    CHECK(parse_exact_number("1e-400") == Rational::pow10(-400));
    for (const char* bad : {"", "-", "1e", "1.2.3", "abc", "1e+-3", "0x10"}) {
      CHECK_THROWS_AS(parse_exact_number(bad), std::invalid_argument);
    }
  }

  TEST_CASE("a file without QUADOBJ is an LP") {
    const GeneralQP g = parse_qps(kLp);
    CHECK(g.q.nnz() == 0);
    CHECK(g.q.rows() == 2);
    CHECK(g.row_upper[0] == Rational(4));
    CHECK_FALSE(g.row_lower[0]);
    CHECK(g.row_lower[1] == Rational(1));
    CHECK_FALSE(g.row_upper[1]);
    CHECK(g.a.entry(1, 1).is_zero());
  }

  TEST_CASE("RANGES follow the MPS rules") {
    const std::string text = R"(NAME R
ROWS
 N obj
 L lrow
 G grow
 E epos
 E eneg
COLUMNS
 x lrow 1 grow 1
 x epos 1 eneg 1
RHS
 rhs lrow 4 grow 4
 rhs epos 4 eneg 4
RANGES
 rng lrow 2 grow -2
 rng epos 2 eneg -2
ENDATA
)";
    const GeneralQP g = parse_qps(text);
    CHECK(g.row_lower[0] == Rational(2));
    CHECK(g.row_upper[0] == Rational(4));
    CHECK(g.row_lower[1] == Rational(4));
    CHECK(g.row_upper[1] == Rational(6));
    CHECK(g.row_lower[2] == Rational(4));
    CHECK(g.row_upper[2] == Rational(6));
    CHECK(g.row_lower[3] == Rational(2));
    CHECK(g.row_upper[3] == Rational(4));
  }

  TEST_CASE("bounds, objective constant and QMATRIX") {
    const std::string text = R"(NAME B
ROWS
 N obj
 E c
COLUMNS
 a obj 1 c 1
 b c 1
 d c 1
 e c 1
 f c 1
RHS
 rhs obj 2.5
 rhs c 1
BOUNDS
 UP bnd a 4
 LO bnd a -1
 MI bnd b
 FR bnd d
 FX bnd e 1/3
 LO f 2
 PL f
QMATRIX
 a a 2
 a b 1
 b a 1
ENDATA
)";
    const GeneralQP g = parse_qps(text);
    CHECK(g.objective_constant == frac(-5, 2));
    CHECK(g.col_lower[0] == Rational(-1));
    CHECK(g.col_upper[0] == Rational(4));
    CHECK_FALSE(g.col_lower[1]);
    CHECK_FALSE(g.col_upper[1]);
    CHECK_FALSE(g.col_lower[2]);
    CHECK(g.col_lower[3] == frac(1, 3));
    CHECK(g.col_upper[3] == frac(1, 3));
    CHECK(g.col_lower[4] == Rational(2));
    CHECK_FALSE(g.col_upper[4]);
    CHECK(g.q.entry(0, 1) == Rational(1));
    CHECK(g.q.entry(0, 0) == Rational(2));
  }

  TEST_CASE("negative upper bound keeps the default lower bound and warns") {
    std::vector<std::string> warnings;
    const std::string text = "NAME N\nROWS\n N obj\nCOLUMNS\n x obj 1\nBOUNDS\n UP bnd x -1\nENDATA\n";
    CHECK_THROWS_AS(parse_qps(text, &warnings), QpsError);
    CHECK(warnings.size() == 1);
    warnings.clear();
    const std::string given = "NAME N\nROWS\n N obj\nCOLUMNS\n x obj 1\nBOUNDS\n MI bnd x\n UP bnd x -1\nENDATA\n";
    const GeneralQP g = parse_qps(given, &warnings);
    CHECK(warnings.empty());
    CHECK_FALSE(g.col_lower[0]);
    CHECK(g.col_upper[0] == Rational(-1));
  }

  TEST_CASE("fixed format with spaces inside names") {
    const std::string text =
        "NAME          FIXED\n"
        "ROWS\n"
        " N  COST\n"
        " L  LIM 1\n"
        "COLUMNS\n"
        "    MY VAR    COST      1.5            LIM 1     2\n"
        "RHS\n"
        "    RHS       LIM 1     3\n"
        "BOUNDS\n"
        " UP BND       MY VAR    4\n"
        "ENDATA\n";
    const GeneralQP g = parse_qps(text);
    CHECK(g.col_names == std::vector<std::string>{"MY VAR"});
    CHECK(g.row_names == std::vector<std::string>{"LIM 1"});
    CHECK(g.c[0] == frac(3, 2));
    CHECK(g.a.entry(0, 0) == Rational(2));
    CHECK(g.row_upper[0] == Rational(3));
    CHECK(g.col_upper[0] == Rational(4));
  }

  TEST_CASE("malformed input reports the line") {
    auto line_of = [](const std::string& text) -> std::size_t {
      try {
        parse_qps(text);
      } catch (const QpsError& e) {
        return e.line();
      }
      return 0;
    };
    CHECK(line_of("NAME X\nROWS\n N obj\nFOO\nENDATA\n") == 4);
    CHECK(line_of("NAME X\nROWS\n N obj\n E c\n E c\nCOLUMNS\nENDATA\n") == 5);
    CHECK(line_of("NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1\n y obj 1\n x obj 2\nENDATA\n") == 7);
    CHECK(line_of("NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1.2.3\nENDATA\n") == 5);
    CHECK(line_of("NAME X\nROWS\n N obj\nCOLUMNS\n x nope 1\nENDATA\n") == 5);
    CHECK(line_of("NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1\nBOUNDS\n BV bnd x\nENDATA\n") == 7);
    CHECK(line_of("NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1\nQUADOBJ\n x x 1\n x x 2\nENDATA\n") == 8);
    CHECK(line_of("NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1\n") == 5);
    CHECK_THROWS_AS(parse_qps("NAME X\nROWS\n N obj\nCOLUMNS\n x obj 1\nQMATRIX\n x y 1\nENDATA\n"), QpsError);
  }

  TEST_CASE("extra free rows are dropped with a warning") {
    std::vector<std::string> warnings;
    const GeneralQP g = parse_qps("NAME X\nROWS\n N obj\n N other\nCOLUMNS\n x obj 1 other 5\nENDATA\n", &warnings);
    CHECK(g.num_rows() == 0);
    CHECK(g.c[0] == Rational(1));
    CHECK(warnings.size() == 1);
  }

  TEST_CASE("write then parse reproduces the golden instance") {
    const GeneralQP g = read_qps_file(QPREFINE_TEST_DATA_DIR "/example1.qps");
    CHECK(same(parse_qps(write_qps(g)), g));
  }

  TEST_CASE("coefficients without a decimal expansion use fraction records") {
    GeneralQP g = parse_qps(kLp);
    g.c[0] = frac(1, 3);
    g.col_upper[1] = frac(-2, 7);
    g.col_lower[1] = std::nullopt;
    const std::string text = write_qps(g);
    CHECK(text.find("1/3") != std::string::npos);
    CHECK(same(parse_qps(text), g));
  }

  TEST_CASE("random instances round trip exactly") {
    Rng rng(77);
    for (int t = 0; t < 10; ++t) {
      const GeneralQP g = random_general_qp(rng, 2 + t % 5, 1 + t % 4);
      CHECK(same(parse_qps(write_qps(g)), g));
    }
  }

  TEST_CASE("fixture counts agree with an independent reader") {
    const std::string dir = QPREFINE_FIXTURE_DIR;
    const auto ref = nlohmann::json::parse(read_text_file(dir + "/reference_counts.json"));
    REQUIRE(ref.size() >= 16);
    for (const auto& [file, counts] : ref.items()) {
      CAPTURE(file);
      const GeneralQP g = read_qps_file(dir + "/" + file);
      CHECK(g.num_rows() == counts["rows"].get<std::size_t>());
      CHECK(g.num_cols() == counts["cols"].get<std::size_t>());
      CHECK(g.a.nnz() == counts["nnz_a"].get<std::size_t>());
      CHECK(lower_nnz(g.q) == counts["nnz_q_lower"].get<std::size_t>());
    }
  }
}
