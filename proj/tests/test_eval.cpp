#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "padesr/grammar.hpp"
#include "padesr/pde.hpp"

using namespace padesr;

namespace {

PointSet points(std::vector<double> x, std::vector<double> y, std::vector<double> t) {
  PointSet p;
  p.x = std::move(x);
  p.y = std::move(y);
  p.t = std::move(t);
  for (auto& g : p.ic) g.assign(p.x.size(), 0.0);
  return p;
}

}  // namespace

TEST_CASE("grid evaluation examples") {
  const PointSet p = points({1, 2}, {2, 5}, {0, 3});
  CHECK(eval_grid(Expr::parse("x y +", Notation::Postfix), p).values == std::vector<double>{3, 7});
  const Grid s = eval_grid(Expr::parse("sech 0", Notation::Prefix), p);
  CHECK(s.values == std::vector<double>{1, 1});
  CHECK_FALSE(s.fault);
  CHECK(eval_grid(Expr::parse("log ~ 1", Notation::Prefix), p).fault);
  CHECK(eval_grid(Expr::parse("/ x 0", Notation::Prefix), p).fault);
  CHECK(eval_grid(Expr::parse("^ ~ 2 / 1 2", Notation::Prefix), p).fault);
  CHECK(eval_grid(Expr::parse("^ 0 0", Notation::Prefix), p).values[0] == 1.0);
  CHECK(eval_grid(Expr::parse("asin x", Notation::Prefix), p).fault);
}

TEST_CASE("the IC feature peaks at the Gaussian centre") {
  const Dataset d = build_dataset(CaseId::Case1);
  PointSet p = points({1.1}, {0.0}, {0.5});
  const auto ic = d.pde.ic(1.1, 0.0);
  for (int s = 0; s < kIcCount; ++s) p.ic[s] = {ic[s]};
  CHECK(eval_grid(Expr::parse("I", Notation::Prefix), p).values[0] == doctest::Approx(12.5).epsilon(1e-15));
}

TEST_CASE("scalar evaluation") {
  const std::array<double, kIcCount> ic{};
  const Bounds b;
  CHECK(eval_point(Expr::parse("2 4 *", Notation::Postfix), 0, 0, 0, ic, b) == 8);
  CHECK(eval_point(Expr::parse("x t ^", Notation::Postfix), 2, 0, 3, ic, b) == 8);
  CHECK(std::isnan(eval_point(Expr::parse("sqrt ~ 1", Notation::Prefix), 0, 0, 0, ic, b)));
}

TEST_CASE("eval_point agrees with eval_grid on every mesh node") {
  const Dataset d = build_dataset(CaseId::Case2);
  const PointSet& p = d.interior;
  Rng rng(9);
  const Alphabet a = Alphabet::standard(TokenSet::VarsConst);
  for (int k = 0; k < 50; ++k) {
    const Expr e = sample_complete(rng, k % 2 ? Notation::Prefix : Notation::Postfix, 4, a);
    const Grid g = eval_grid(e, p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::array<double, kIcCount> ic;
      for (int s = 0; s < kIcCount; ++s) ic[s] = p.ic[s][i];
      const double v = eval_point(e, p.x[i], p.y[i], p.t[i], ic, p.bounds);
      if (std::isnan(v)) {
        REQUIRE(std::isnan(g.values[i]));
      } else {
        REQUIRE(v == g.values[i]);
      }
    }
  }
}

TEST_CASE("prefix and postfix evaluate bit-identically") {
  const Dataset d = build_dataset(CaseId::Case1);
  Rng rng(13);
  const Alphabet a = Alphabet::standard(TokenSet::VarsConst);
  for (int k = 0; k < 300; ++k) {
    const Expr e = sample_complete(rng, Notation::Prefix, 6, a);
    const Grid g1 = eval_grid(e, d.interior);
    const Grid g2 = eval_grid(convert_notation(e, Notation::Postfix), d.interior);
    REQUIRE(g1.fault == g2.fault);
    for (std::size_t i = 0; i < g1.values.size(); ++i) {
      if (std::isnan(g1.values[i])) {
        REQUIRE(std::isnan(g2.values[i]));
      } else {
        REQUIRE(g1.values[i] == g2.values[i]);
      }
    }
  }
}

TEST_CASE("learnable constants") {
  const PointSet p = points({1, 2}, {0, 0}, {0, 0});
  const Expr e = Expr::parse("C x *", Notation::Postfix);
  const double c[] = {3.0};
  CHECK(eval_grid(e, p, c).values == std::vector<double>{3, 6});
  CHECK_THROWS_AS(eval_grid(e, p), std::invalid_argument);
}

TEST_CASE("bound literals resolve against the case") {
  const Dataset d = build_dataset(CaseId::Case2);
  const Grid g = eval_grid(Expr::parse("x_max", Notation::Prefix), d.interior);
  CHECK(g.values[0] == doctest::Approx(6.283185).epsilon(1e-7));
}

TEST_CASE("postfix operand stack stays within N + 1") {
  Rng rng(17);
  const Alphabet a = Alphabet::standard(TokenSet::Vars);
  for (int k = 0; k < 2000; ++k) {
    const int n = static_cast<int>(rng() % 7);
    const Expr e = sample_complete(rng, Notation::Postfix, n, a);
    int depth = 0, peak = 0;
    for (const Token& t : e.tokens()) {
      depth += 1 - t.arity();
      peak = std::max(peak, depth);
    }
    REQUIRE(peak <= n + 1);
  }
}
