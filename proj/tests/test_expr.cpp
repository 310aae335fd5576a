// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "solcheck/error.hpp"
#include "solcheck/expr.hpp"
#include "solcheck/jet.hpp"

using namespace solcheck;

namespace {

const std::vector<std::string> kXY{"x", "y"};

ErrorCode parse_error(const std::string& text, const std::vector<std::string>& coords = kXY) {
  try {
    parse_expression(text, coords);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a parse failure for " << text;
  return ErrorCode::IoError;
}

}  // namespace

TEST(Parse, TreeShape) {
  const Expr e = parse_expression("x^2 + sin(y)", kXY);
  EXPECT_EQ(e.op(), Op::Add);
  EXPECT_EQ(e.lhs().op(), Op::Pow);
  EXPECT_EQ(e.lhs().value(), 2.0);
  EXPECT_EQ(e.lhs().lhs().symbol_index(), 0);
  EXPECT_EQ(e.rhs().op(), Op::Sin);
  EXPECT_EQ(e.rhs().lhs().symbol_index(), 1);
}

TEST(Parse, ConstantZero) {
  const std::vector<std::string> t{"t"};
  const Expr e = parse_expression("0", t);
  EXPECT_TRUE(e.is_literal(0.0));
  const double p[] = {3.7};
  EXPECT_EQ(evaluate(e, p), 0.0);
}

TEST(Parse, StereographicFactor) {
  const Expr e = parse_expression("4/(1+x^2+y^2)^2", kXY);
  const double p[] = {0.0, 0.0};
  EXPECT_DOUBLE_EQ(evaluate(e, p), 4.0);
}

TEST(Parse, Precedence) {
  const double p[] = {2.0, 3.0};
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("-x^2", kXY), p), -4.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("2^3^2", kXY), p), 512.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("x-y-1", kXY), p), -2.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("x/y*3", kXY), p), 2.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("1.5e1 + x*y", kXY), p), 21.0);
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error("z + 1"), ErrorCode::UnknownIdentifier);
  EXPECT_EQ(parse_error("x + "), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("(x"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("sin(x, y)"), ErrorCode::ArityError);
  EXPECT_EQ(parse_error("sin()"), ErrorCode::ArityError);
  EXPECT_EQ(parse_error("x^y"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error(""), ErrorCode::SyntaxError);
}

TEST(Parse, SyntaxErrorPosition) {
  try {
    parse_expression("x + * y", kXY);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.position(), 4);
  }
}

TEST(Parse, RoundTrip) {
  const char* cases[] = {"x^2 + sin(y)",        "4/(1+x^2+y^2)^2",  "-(x-y)^3",
                         "x/(y/x)",             "(x^2)^0.5",        "exp(-x*y)/sqrt(1+x^2)",
                         "x-(y-1)",             "-x^-2",            "cosh(x)^2 - sinh(x)^2",
                         "(-2)^2 + log(1+y^2)", "tan(x)*-3"};
  for (const char* text : cases) {
    const Expr e = parse_expression(text, kXY);
    const std::string printed = to_string(e, kXY);
    EXPECT_TRUE(parse_expression(printed, kXY) == e) << text << " -> " << printed;
  }
}

TEST(Differentiate, Basics) {
  const Expr dx = differentiate(parse_expression("x^2", kXY), 0);
  const double p[] = {3.0, 0.0};
  EXPECT_DOUBLE_EQ(evaluate(dx, p), 6.0);
  const double q[] = {0.0, 0.0};
  EXPECT_DOUBLE_EQ(evaluate(differentiate(parse_expression("sin(y)", kXY), 1), q), 1.0);
}

TEST(Differentiate, FiniteDifferenceOracle) {
  const std::vector<std::string> xs{"x"};
  const Expr e = parse_expression("4/(1+x^2)^2", xs);
  const Expr d = differentiate(e, 0);
  const double h = 1e-3;
  auto f = [&](double x) {
    const double p[] = {x};
    return evaluate(e, p);
  };
  const double fd = (f(1 - 2 * h) - 8 * f(1 - h) + 8 * f(1 + h) - f(1 + 2 * h)) / (12 * h);
  const double p[] = {1.0};
  const double exact = evaluate(d, p);
  EXPECT_NEAR(exact, -2.0, 1e-14);
  EXPECT_LE(std::abs(fd - exact), 1e-7 * std::abs(exact));
}

TEST(Evaluate, DomainErrors) {
  const double p[] = {-1.0, 0.0};
  for (const char* text : {"log(x)", "sqrt(x)", "1/y", "x^0.5"}) {
    try {
      evaluate(parse_expression(text, kXY), p);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DomainError) << text;
    }
  }
}

TEST(Jet, Monomial) {
  const std::vector<std::string> xs{"x"};
  const double p[] = {1.0};
  const Jet j = jet_evaluate(parse_expression("x^2", xs), p, 2);
  EXPECT_DOUBLE_EQ(j.derivative({0}), 1.0);
  EXPECT_DOUBLE_EQ(j.derivative({1}), 2.0);
  EXPECT_DOUBLE_EQ(j.derivative({2}), 2.0);
}

TEST(Jet, Sine) {
  const std::vector<std::string> ys{"y"};
  const double p[] = {0.0};
  const Jet j = jet_evaluate(parse_expression("sin(y)", ys), p, 3);
  EXPECT_NEAR(j.derivative({0}), 0.0, 1e-15);
  EXPECT_NEAR(j.derivative({1}), 1.0, 1e-15);
  EXPECT_NEAR(j.derivative({2}), 0.0, 1e-15);
  EXPECT_NEAR(j.derivative({3}), -1.0, 1e-15);
}

TEST(Jet, ExpMixedPartial) {
  const double p[] = {1.0, 1.0};
  const Jet j = jet_evaluate(parse_expression("exp(x*y)", kXY), p, 2);
  EXPECT_NEAR(j.derivative({1, 1}), 2.0 * std::exp(1.0), 1e-13);
  EXPECT_NEAR(j.derivative({2, 0}), std::exp(1.0), 1e-13);
}

TEST(Jet, OrderCap) {
  const double p[] = {1.0, 1.0};
  EXPECT_THROW(jet_evaluate(parse_expression("x", kXY), p, kMaxJetOrder + 1), Error);
}

// Every coefficient should match nested symbolic differentiation.
TEST(Jet, MatchesSymbolicDerivatives) {
  const char* cases[] = {"sin(x)^2*exp(-y/3)", "1/(2+cos(x*y))", "sqrt(1+x^2+y^4)",
                         "log(3+x*y)*tan(x/4)", "cosh(x-y)^-1.5", "sinh(x)*y^3"};
  const double p[] = {0.3, -0.7};
  const int order = 5;
  for (const char* text : cases) {
    const Expr e = parse_expression(text, kXY);
    const Jet j = jet_evaluate(e, p, order);
    const JetBasis& b = j.basis();
    for (std::size_t k = 0; k < b.size(); ++k) {
      const auto alpha = b.multi_index(k);
      Expr d = e;
      for (int axis = 0; axis < 2; ++axis)
        for (int c = 0; c < alpha[static_cast<std::size_t>(axis)]; ++c) d = differentiate(d, axis);
      const double want = evaluate(d, p);
      EXPECT_NEAR(j.coeffs()[k], want, 1e-10 * (1 + std::abs(want))) << text << " k=" << k;
    }
  }
}

TEST(Jet, TruncationIsBitwisePrefix) {
  const double p[] = {0.4, 1.3};
  const Expr e = parse_expression("exp(sin(x)*y)/(1+y^2)^0.5 + log(2+x)", kXY);
  for (int r = 1; r <= 6; ++r) {
    const Jet hi = jet_evaluate(e, p, r);
    const Jet lo = jet_evaluate(e, p, r - 1);
    for (std::size_t k = 0; k < lo.coeffs().size(); ++k)
      EXPECT_EQ(hi.coeffs()[k], lo.coeffs()[k]) << "r=" << r << " k=" << k;
  }
}

TEST(Jet, Leibniz) {
  const double p[] = {0.2, 0.9};
  const Expr u = parse_expression("sin(x)+y^2", kXY);
  const Expr v = parse_expression("exp(x*y)", kXY);
  const int r = 6;
  const Jet prod = jet_evaluate(u * v, p, r);
  const Jet ref = jet_evaluate(u, p, r) * jet_evaluate(v, p, r);
  for (std::size_t k = 0; k < prod.coeffs().size(); ++k)
    EXPECT_NEAR(prod.coeffs()[k], ref.coeffs()[k], 1e-12 * (1 + std::abs(ref.coeffs()[k])));
}

TEST(Jet, RandomProbesAgainstFiniteDifferences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  const Expr e = parse_expression("(1+x^2/10)^2*sin(0.5+y)^2", kXY);
  const double h = 1e-4;
  for (int probe = 0; probe < 50; ++probe) {
    const double p[] = {u(rng), u(rng)};
    const Jet j = jet_evaluate(e, p, 1);
    for (int axis = 0; axis < 2; ++axis) {
      auto f = [&](double s) {
        double q[] = {p[0], p[1]};
        q[axis] += s;
        return evaluate(e, q);
      };
      const double fd = (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h);
      const double exact = j.coeffs()[j.basis().shift(axis, 0)];
      EXPECT_LE(std::abs(fd - exact), 1e-6 * (1 + std::abs(exact)));
    }
  }
}
