#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "padesr/diff.hpp"
#include "padesr/grammar.hpp"
#include "padesr/pde.hpp"

using namespace padesr;

namespace {

std::string d(const char* text, Notation n, Var v) {
  return differentiate(Expr::parse(text, n, ParseMode::Free), v).to_string();
}

Expr pre(const char* text) { return Expr::parse(text, Notation::Prefix, ParseMode::Free); }

}  // namespace

TEST_CASE("first derivative examples") {
  CHECK(d("x", Notation::Prefix, Var::X) == "1");
  CHECK(d("y", Notation::Prefix, Var::X) == "0");
  CHECK(d("x y *", Notation::Postfix, Var::X) == "y");
  CHECK(d("sin x", Notation::Prefix, Var::X) == "cos x");
  CHECK(d("I", Notation::Prefix, Var::T) == "0");
  CHECK(d("I", Notation::Prefix, Var::X) == "I_x");
  CHECK(d("I", Notation::Prefix, Var::Y) == "I_y");
  CHECK(d("I_x", Notation::Prefix, Var::Y) == "I_xy");
  CHECK(d("I_y", Notation::Prefix, Var::X) == "I_xy");
  CHECK(d("I_x", Notation::Prefix, Var::T) == "0");
  CHECK(d("+ x_max C", Notation::Prefix, Var::X) == "0");
  CHECK(d("~ x", Notation::Prefix, Var::X) == "-1");
}

TEST_CASE("orders above two through the IC family are errors") {
  CHECK_THROWS_AS(differentiate(pre("I_xx"), Var::X), UnsupportedOrder);
  CHECK_THROWS_AS(differentiate(pre("* x I_xy"), Var::Y), UnsupportedOrder);
  CHECK_THROWS_AS(second_derivative(pre("I_x"), Var::X), UnsupportedOrder);
  CHECK(second_derivative(pre("I"), Var::X).to_string() == "I_xx");
  CHECK(second_derivative(pre("I"), Var::Y).to_string() == "I_yy");
}

TEST_CASE("finite differences of x^2") {
  const Dataset data = build_dataset(CaseId::Case1);
  const Expr e = pre("^ x 2");
  const Grid g = eval_grid(differentiate(e, Var::X), data.interior);
  const double h = 1e-4;
  const Grid hi = eval_grid(e, oracle::shifted(data.interior, data.pde, Var::X, h));
  const Grid lo = eval_grid(e, oracle::shifted(data.interior, data.pde, Var::X, -h));
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const double fd = (hi.values[i] - lo.values[i]) / (2 * h);
    REQUIRE(std::abs(g.values[i] - fd) <= 1e-6 * std::abs(fd));
    REQUIRE(g.values[i] == doctest::Approx(2 * data.interior.x[i]).epsilon(1e-14));
  }
}

TEST_CASE("second derivative identities") {
  const Dataset data = build_dataset(CaseId::Case1);
  const PointSet& p = data.interior;

  const Grid two = eval_grid(second_derivative(pre("^ x 2"), Var::X), p);
  CHECK_FALSE(two.fault);
  for (double v : two.values) REQUIRE(v == doctest::Approx(2.0).epsilon(1e-13));

  const Grid s = eval_grid(second_derivative(pre("sin x"), Var::X), p);
  for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(std::abs(s.values[i] + std::sin(p.x[i])) <= 1e-10);

  // analytic I_xx of the Gaussian: (4 (x - xc)^2 - 2) I
  const Grid ixx = eval_grid(second_derivative(pre("I"), Var::X), p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double dx = p.x[i] - data.pde.ic_xc;
    const double expect = (4 * dx * dx - 2) * p.ic[kIc][i];
    REQUIRE(ixx.values[i] == doctest::Approx(expect).epsilon(1e-12));
    REQUIRE(ixx.values[i] == p.ic[kIcXX][i]);
  }
}

TEST_CASE("tanh derivative matches both identities") {
  const Dataset data = build_dataset(CaseId::Case1);
  const Grid g = eval_grid(differentiate(pre("tanh x"), Var::X), data.interior);
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const double x = data.interior.x[i];
    REQUIRE(std::abs(g.values[i] - (1 - std::tanh(x) * std::tanh(x))) <= 1e-14);
    REQUIRE(std::abs(g.values[i] - sech(x) * sech(x)) <= 1e-12);
  }
}

TEST_CASE("chain rule for the remaining unaries") {
  const std::array<double, kIcCount> ic{};
  const Bounds b;
  struct Case {
    const char* f;
    double (*ref)(double);
  };
  const Case cases[] = {
      {"sech * 2 x", [](double x) { return -2 * sech(2 * x) * std::tanh(2 * x); }},
      {"asin * 0.5 x", [](double x) { return 0.5 / std::sqrt(1 - 0.25 * x * x); }},
      {"acos * 0.5 x", [](double x) { return -0.5 / std::sqrt(1 - 0.25 * x * x); }},
      {"log * x x", [](double x) { return 2 / x; }},
      {"exp sin x", [](double x) { return std::exp(std::sin(x)) * std::cos(x); }},
      {"sqrt + x 1", [](double x) { return 0.5 / std::sqrt(x + 1); }},
      {"/ 1 x", [](double x) { return -1 / (x * x); }},
      {"^ x x", [](double x) { return std::pow(x, x) * (std::log(x) + 1); }},
  };
  for (const Case& c : cases) {
    const Expr e = differentiate(pre(c.f), Var::X);
    for (double x : {0.3, 0.9, 1.7}) {
      CAPTURE(c.f);
      CHECK(eval_point(e, x, 0, 0, ic, b) == doctest::Approx(c.ref(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("in-situ rules") {
  CHECK(d("* 0 sin x", Notation::Prefix, Var::Y) == "0");
  CHECK(d("* x 1", Notation::Prefix, Var::X) == "1");
  CHECK(d("+ x 0", Notation::Prefix, Var::X) == "1");
  CHECK(d("- x y", Notation::Prefix, Var::X) == "1");
  CHECK(d("/ y x", Notation::Prefix, Var::Y) == "/ x * x x");
  CHECK(d("~ y", Notation::Prefix, Var::X) == "0");
}

TEST_CASE("simplify") {
  CHECK(simplify(Expr::parse("x 0 +", Notation::Postfix)).to_string() == "x");
  CHECK(simplify(pre("^ I ^ 1 asin sqrt I")).to_string() == "I");
  CHECK(simplify(pre("+ I / 0 / x + y 0.1")).to_string() == "I");
  CHECK(simplify(pre("log / 2 2")).to_string() == "0");
  CHECK(simplify(pre("- 2 1")).to_string() == "1");
  CHECK(simplify(pre("+ x_min 0")).to_string() == "x_min");
  CHECK(simplify(pre("* C * 2 3")).to_string() == "* C 6");
}

TEST_CASE("simplify preserves fault-free values") {
  const Dataset data = build_dataset(CaseId::Case1);
  Rng rng(21);
  const Alphabet a = Alphabet::standard(TokenSet::VarsConst);
  for (int k = 0; k < 500; ++k) {
    const Expr e = sample_complete(rng, k % 2 ? Notation::Prefix : Notation::Postfix, 5, a);
    const Expr s = simplify(e);
    CHECK(s.notation() == e.notation());
    CHECK(s.size() <= e.size());
    const Grid g1 = eval_grid(e, data.interior);
    const Grid g2 = eval_grid(s, data.interior);
    for (std::size_t i = 0; i < g1.values.size(); ++i) {
      const double v = g1.values[i];
      if (!std::isfinite(v)) continue;
      if (std::abs(g2.values[i] - v) > 1e-10 * std::max(1.0, std::abs(v)))
        FAIL(e.to_string() << " -> " << s.to_string() << " at " << i << ": " << v << " vs " << g2.values[i]);
    }
  }
}

TEST_CASE("token limit") {
  DiffScratch scratch;
  std::vector<Token> out;
  const Expr e = pre("^ ^ ^ x x ^ x x ^ ^ x x ^ x x");
  CHECK_THROWS_AS(differentiate_into(e.tokens(), e.notation(), Var::X, scratch, out, 20), DerivativeTooLarge);
  CHECK_NOTHROW(differentiate_into(e.tokens(), e.notation(), Var::X, scratch, out));
}
