#include <cmath>
#include <vector>

#include "doctest.h"
#include "juliadim/numeric.hpp"
#include "juliadim/quadrature.hpp"

using namespace juliadim;

TEST_CASE("square root convention") {
  CHECK(paper_sqrt(Complex(4, 0)) == Complex(2, 0));
  Complex r = paper_sqrt(Complex(-4, 0));
  CHECK(r.real() == doctest::Approx(0.0));
  CHECK(r.imag() == doctest::Approx(2.0));
  for (Complex z : {Complex(1, 1), Complex(-3, 0.5), Complex(-3, -0.5), Complex(0.2, -7)}) {
    Complex s = paper_sqrt(z);
    CHECK(s.real() > 0);
    CHECK(std::abs(s * s - z) < 1e-14 * std::abs(z));
  }
}

TEST_CASE("compensated sum keeps low order bits") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}

TEST_CASE("deterministic sum does not depend on threads") {
  auto term = [](std::size_t i) { return std::sin(0.37 * i) / (1.0 + i); };
  double one = deterministic_sum(100000, 1, term);
  for (int t : {2, 3, 8}) CHECK(deterministic_sum(100000, t, term) == one);
  double plain = 0;
  for (std::size_t i = 0; i < 100000; ++i) plain += term(i);
  CHECK(one == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("parallel_for forwards exceptions") {
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 57) throw DomainError("boom");
                               }),
                  DomainError);
}

TEST_CASE("bracketed secant") {
  auto f = [](double x) { return x * x - 2.0; };
  double r = bracketed_secant(f, 0.0, 2.0, f(0.0), f(2.0), 1e-14);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(bracketed_secant(f, 2.0, 3.0, f(2.0), f(3.0), 1e-14), NoBracketError);
}

TEST_CASE("fnv1a reference vectors") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("shortest decimal round trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.25) == "0.25");
}

TEST_CASE("quadrature rules") {
  auto s = [](double x) { return std::sin(x); };
  CHECK(integrate_adaptive(s, 0, kPi) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate_gauss_legendre(s, 0, kPi) == doctest::Approx(2.0).epsilon(1e-13));
  auto r = [](double x) { return std::sqrt(x); };
  CHECK(integrate_adaptive(r, 0, 1, 1e-12) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}
