#include <doctest.h>

#include <crmw/errors.hpp>
#include <crmw/gaussian_rational.hpp>

using crmw::GR;

TEST_CASE("parse and print canonical forms") {
  CHECK(GR::parse("0").str() == "0");
  CHECK(GR::parse("-4/6").str() == "-2/3");
  CHECK(GR::parse("3i").str() == "3i");
  CHECK(GR::parse("-1/2i").str() == "-1/2i");
  CHECK(GR::parse("1/2+3/4i").str() == "1/2+3/4i");
  CHECK(GR::parse("1/2-3/4i").str() == "1/2-3/4i");
  CHECK(GR::parse("1+-3i").str() == "1-3i");
  CHECK(GR::parse("2/-4").str() == "-1/2");
  CHECK(GR::parse("5+0i").str() == "5");
  CHECK(GR::parse("0+2i").str() == "2i");
}

TEST_CASE("round trip through text") {
  for (const char *s : {"7", "-7/3", "2/5i", "-1-1i", "123456789012345678901/7+1/3i"}) {
    GR x = GR::parse(s);
    CHECK(GR::parse(x.str()) == x);
  }
}

TEST_CASE("malformed input reports an offset") {
  for (const char *s : {"", "i", "1/", "1/0", "1+2", "1 + 2i", "1+2ix", "--1", "1/2/3"}) {
    CAPTURE(s);
    CHECK_THROWS_AS(GR::parse(s), crmw::ParseError);
  }
  try {
    GR::parse("12/0");
  } catch (const crmw::ParseError &e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("field arithmetic") {
  GR a = GR::parse("1+2i"), b = GR::parse("3-1i");
  CHECK(a * b == GR::parse("5+5i"));
  CHECK(a + b == GR::parse("4+1i"));
  CHECK(a - b == GR::parse("-2+3i"));
  CHECK((a / b) * b == a);
  CHECK(a * a.inverse() == GR(1));
  CHECK(a.conj() == GR::parse("1-2i"));
  CHECK(GR::i() * GR::i() == GR(-1));
  CHECK_THROWS_AS(GR(0).inverse(), crmw::DomainError);
  GR acc(1);
  acc.add_product(a, b);
  CHECK(acc == GR::parse("6+5i"));
}
