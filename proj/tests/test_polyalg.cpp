#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "polyinv/polyalg.hpp"

#include <doctest.h>

#include <random>

using namespace polyinv;

namespace {

Polynomial random_poly(std::mt19937& rng, std::size_t nvars, unsigned maxdeg) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<std::size_t> nterms(1, 5);
  auto pool = monomials_up_to(nvars, maxdeg);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  Polynomial p = Polynomial::zero(nvars);
  for (std::size_t t = nterms(rng); t > 0; --t)
    p.add_term(pool[pick(rng)], Rational(coeff(rng)));
  return p;
}

std::vector<Rational> random_point(std::mt19937& rng, std::size_t nvars) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<Rational> pt;
  for (std::size_t i = 0; i < nvars; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    pt.push_back(r);
  }
  return pt;
}

}  // namespace

TEST_CASE("rational string round trips") {
  CHECK(rational_from_string("7") == Rational(7));
  CHECK(rational_from_string("-3/6") == Rational(-1, 2));
  CHECK(rational_to_string(Rational(-1, 2)) == "-1/2");
  CHECK(rational_to_string(Rational(4)) == "4");
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("x"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
}

TEST_CASE("monomial order is degree first, then left variables first") {
  const std::size_t n = 2;
  Monomial one = Monomial::unit(n), x = Monomial::var(n, 0), y = Monomial::var(n, 1);
  CHECK(one < x);
  CHECK(x < y);
  CHECK(y < x * x);
  CHECK(x * x < x * y);
  CHECK(x * y < y * y);
  CHECK(x.degree() == 1);
  CHECK((x * y * y).degree() == 3);
  CHECK(one.is_unit());
}

TEST_CASE("monomials_up_to enumerates the simplex") {
  auto ms = monomials_up_to(2, 2);
  REQUIRE(ms.size() == 6);  // C(2+2, 2)
  CHECK(ms.front().is_unit());
  CHECK(std::is_sorted(ms.begin(), ms.end()));
  CHECK(monomials_up_to(3, 2).size() == 10);
  CHECK(monomials_up_to(2, 10).size() == 66);
  CHECK(monomials_up_to(4, 1).size() == 5);
}

TEST_CASE("polynomial ring identities on random inputs") {
  std::mt19937 rng(7);
  for (int round = 0; round < 60; ++round) {
    std::size_t nvars = 1 + round % 3;
    Polynomial a = random_poly(rng, nvars, 2);
    Polynomial b = random_poly(rng, nvars, 2);
    Polynomial c = random_poly(rng, nvars, 2);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == Polynomial::zero(nvars));
    CHECK(a + (-a) == Polynomial::zero(nvars));
    CHECK(a * Polynomial::constant(nvars, Rational(1)) == a);

    auto pt = random_point(rng, nvars);
    CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
    CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
  }
}

TEST_CASE("pow expands binomials") {
  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  Polynomial sq = (x + y).pow(2);
  CHECK(sq == x * x + x * y * Rational(2) + y * y);
  CHECK((x + y).pow(0) == Polynomial::constant(2, Rational(1)));
  CHECK(sq.degree() == 2);
}

TEST_CASE("degree and coefficient access") {
  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  Polynomial p = x * y - y + Polynomial::constant(2, Rational(3));
  CHECK(p.degree() == 2);
  CHECK(Polynomial::zero(2).degree() == 0);
  REQUIRE(p.coeff(Monomial::var(2, 1)) != nullptr);
  CHECK(*p.coeff(Monomial::var(2, 1)) == Rational(-1));
  CHECK(p.coeff(Monomial::var(2, 0)) == nullptr);
  p.add_term(Monomial::var(2, 1), Rational(1));  // cancels the -y term
  CHECK(p.coeff(Monomial::var(2, 1)) == nullptr);
}

TEST_CASE("substitution agrees with evaluation") {
  std::mt19937 rng(11);
  for (int round = 0; round < 40; ++round) {
    std::size_t nvars = 2;
    Polynomial p = random_poly(rng, nvars, 3);
    std::vector<Polynomial> images{random_poly(rng, nvars, 2), random_poly(rng, nvars, 2)};
    auto pt = random_point(rng, nvars);
    std::vector<Rational> image_at{images[0].eval(pt), images[1].eval(pt)};
    CHECK(p.substitute(images).eval(pt) == p.eval(image_at));
  }
}

TEST_CASE("compose expands a monomial through a map") {
  // g: x -> x + y^2, y -> y + 1
  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  Polynomial one = Polynomial::constant(2, Rational(1));
  PolyMap g;
  g.images = {x + y * y, y + one};

  CHECK(compose(Monomial::var(2, 1) * Monomial::var(2, 1), g) ==
        y * y + y * Rational(2) + one);
  CHECK(compose(Monomial::var(2, 0) * Monomial::var(2, 1), g) ==
        x * y + x + y * y * y + y * y);
  CHECK(compose(Monomial::unit(2), g) == one);

  PolyMap wrong;
  wrong.images = {Polynomial::variable(3, 0), Polynomial::variable(3, 1),
                  Polynomial::variable(3, 2)};
  CHECK_THROWS_AS(compose(Monomial::var(2, 0), wrong), BasisMismatchError);
}

TEST_CASE("map composition matches sequential application") {
  std::mt19937 rng(13);
  for (int round = 0; round < 30; ++round) {
    PolyMap f, g;
    f.images = {random_poly(rng, 2, 2), random_poly(rng, 2, 2)};
    g.images = {random_poly(rng, 2, 2), random_poly(rng, 2, 2)};
    auto pt = random_point(rng, 2);
    CHECK(g.after(f).apply(pt) == g.apply(f.apply(pt)));
  }
  PolyMap id = PolyMap::identity(3);
  CHECK(id.apply({Rational(1), Rational(2), Rational(3)}) ==
        std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
}

TEST_CASE("rendering is degree ascending with the constant last") {
  Polynomial x = Polynomial::variable(3, 0), y = Polynomial::variable(3, 1),
             q = Polynomial::variable(3, 2);
  std::vector<std::string> names{"x", "y", "q"};
  CHECK((x + y * q).str(names) == "x + y*q");
  CHECK((q + x * y).str(names) == "q + x*y");
  CHECK((x * x * y * Rational(3) - y + Polynomial::constant(3, Rational(2))).str(names) ==
        "-y + 3*x^2*y + 2");
  CHECK(Polynomial::zero(3).str(names) == "0");
  CHECK((-x).str(names) == "-x");
}
