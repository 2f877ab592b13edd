#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "lamcount/term.hpp"

using namespace lamcount;

namespace {

TermPtr random_term(std::mt19937& rng, unsigned depth) {
  std::uniform_int_distribution<int> shape(0, depth == 0 ? 0 : 3);
  switch (shape(rng)) {
    case 1:
      return Term::abs(random_term(rng, depth - 1));
    case 2:
    case 3:
      return Term::app(random_term(rng, depth - 1), random_term(rng, depth - 1));
    default: {
      std::uniform_int_distribution<unsigned> idx(1, 5);
      return Term::var(idx(rng));
    }
  }
}

}  // namespace

TEST_CASE("parsing the concrete syntax") {
  TermPtr t = parse_term("\\ \\ 2 1");
  REQUIRE(t->kind() == Term::Kind::abstraction);
  REQUIRE(t->body()->kind() == Term::Kind::abstraction);
  const Term& body = *t->body()->body();
  REQUIRE(body.kind() == Term::Kind::application);
  CHECK(body.fun()->index() == 2);
  CHECK(body.arg()->index() == 1);

  CHECK(parse_term("1")->index() == 1);

  TermPtr u = parse_term("\\ (1 1)");
  REQUIRE(u->kind() == Term::Kind::abstraction);
  CHECK(u->body()->kind() == Term::Kind::application);

  // application is left-associative
  TermPtr v = parse_term("1 2 3");
  REQUIRE(v->kind() == Term::Kind::application);
  CHECK(v->fun()->kind() == Term::Kind::application);
  CHECK(v->arg()->index() == 3);

  // a lambda may close an application chain without parentheses
  TermPtr w = parse_term("1 \\ 1");
  REQUIRE(w->kind() == Term::Kind::application);
  CHECK(w->arg()->kind() == Term::Kind::abstraction);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_term(""), ParseError);
  CHECK_THROWS_AS(parse_term("(1"), ParseError);
  CHECK_THROWS_AS(parse_term("1)"), ParseError);
  CHECK_THROWS_AS(parse_term("\\"), ParseError);
  CHECK_THROWS_AS(parse_term("x"), ParseError);
  try {
    parse_term("\\ 0");
    FAIL("index 0 must be rejected");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("term size under the weight models") {
  TermPtr t = parse_term("\\ \\ 2 1");  // symbolic size 2a + b + 2c + d
  auto size_under = [&](unsigned a, unsigned b, unsigned c, unsigned d) {
    return term_size(*t, validate_model(a, b, c, d));
  };
  CHECK(size_under(1, 1, 1, 1) == 6);
  CHECK(size_under(2, 1, 2, 2) == 2 * 2 + 1 + 2 * 2 + 2);
  CHECK(size_under(0, 1, 1, 2) == 0 + 1 + 2 + 2);
  CHECK(size_under(3, 2, 5, 7) == 2 * 3 + 2 + 2 * 5 + 7);

  CHECK(term_size(*parse_term("1"), binary_model()) == 2);
  CHECK(term_size(*parse_term("1"), less_natural_model()) == 0);
  CHECK(term_size(*parse_term("3"), natural_model()) == 3);  // a + 2b
}

TEST_CASE("openness") {
  CHECK(openness(*parse_term("\\ 1")) == 0);
  CHECK(openness(*parse_term("2")) == 2);
  CHECK(openness(*parse_term("\\ \\ 2 1")) == 0);
  CHECK(openness(*parse_term("\\ 3 1")) == 2);

  std::mt19937 rng(20240811);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = random_term(rng, 6);
    unsigned o = openness(*t);
    CHECK(openness(*Term::abs(t)) == (o > 0 ? o - 1 : 0));
    TermPtr u = random_term(rng, 4);
    CHECK(openness(*Term::app(t, u)) == std::max(o, openness(*u)));
    // wrapping exactly `o` abstractions closes the term, one less does not
    TermPtr wrapped = t;
    for (unsigned k = 0; k < o; ++k) wrapped = Term::abs(wrapped);
    CHECK(openness(*wrapped) == 0);
    if (o > 0) {
      TermPtr almost = t;
      for (unsigned k = 0; k + 1 < o; ++k) almost = Term::abs(almost);
      CHECK(openness(*almost) == 1);
    }
  }
}

TEST_CASE("formatter and parser round-trip") {
  CHECK(format_term(*parse_term("\\ \\ 2 1")) == "\\ \\ 2 1");
  CHECK(format_term(*parse_term("1 (2 3)")) == "1 (2 3)");
  CHECK(format_term(*parse_term("(\\ 1) 2")) == "(\\ 1) 2");

  std::mt19937 rng(987654321);
  for (int i = 0; i < 1000; ++i) {
    TermPtr t = random_term(rng, 7);
    std::string s = format_term(*t);
    TermPtr back = parse_term(s);
    INFO("formatted: " << s);
    CHECK(structurally_equal(*t, *back));
    CHECK(format_term(*back) == s);
  }
}
