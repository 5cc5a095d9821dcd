#include "crmw/gaussian_rational.hpp"

#include "crmw/errors.hpp"

#include <cctype>
#include <ostream>

namespace crmw {

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
};

[[noreturn]] void fail(const Cursor &c, const std::string &what) {
  throw ParseError("invalid Gaussian rational \"" + std::string(c.s) + "\" at offset " +
                       std::to_string(c.pos) + ": " + what,
                   c.pos);
}

std::string read_int(Cursor &c, bool allow_sign) {
  std::string out;
  if (allow_sign && c.peek() == '-') {
    out.push_back('-');
    ++c.pos;
  }
  std::size_t start = c.pos;
  while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
    out.push_back(c.s[c.pos++]);
  if (c.pos == start)
    fail(c, "expected digit");
  return out;
}

mpq_class read_rat(Cursor &c, bool allow_sign) {
  std::string num = read_int(c, allow_sign);
  mpz_class n(num, 10);
  if (c.peek() != '/')
    return mpq_class(n);
  ++c.pos;
  std::size_t den_pos = c.pos;
  mpz_class d(read_int(c, true), 10);
  if (d == 0) {
    c.pos = den_pos;
    fail(c, "zero denominator");
  }
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

} // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
  Cursor c{text};
  if (text.empty())
    fail(c, "empty string");
  mpq_class first = read_rat(c, true);
  if (c.done())
    return GaussianRational(first);
  if (c.peek() == 'i') {
    ++c.pos;
    if (!c.done())
      fail(c, "trailing characters");
    return {mpq_class(0), first};
  }
  char op = c.peek();
  if (op != '+' && op != '-')
    fail(c, "expected '+', '-' or 'i'");
  ++c.pos;
  mpq_class second = read_rat(c, true);
  if (c.peek() != 'i')
    fail(c, "expected 'i'");
  ++c.pos;
  if (!c.done())
    fail(c, "trailing characters");
  if (op == '-')
    second = -second;
  return {first, second};
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0)
    return re_.get_str();
  if (sgn(re_) == 0)
    return im_.get_str() + "i";
  if (sgn(im_) > 0)
    return re_.get_str() + "+" + im_.get_str() + "i";
  return re_.get_str() + "-" + mpq_class(-im_).get_str() + "i";
}

GaussianRational GaussianRational::inverse() const {
  mpq_class n = norm();
  if (sgn(n) == 0)
    throw DomainError("division by zero Gaussian rational");
  return {re_ / n, -im_ / n};
}

GaussianRational &GaussianRational::operator+=(const GaussianRational &o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0)
    im_ += o.im_;
  return *this;
}

GaussianRational &GaussianRational::operator-=(const GaussianRational &o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0)
    im_ -= o.im_;
  return *this;
}

GaussianRational &GaussianRational::operator*=(const GaussianRational &o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

GaussianRational &GaussianRational::operator/=(const GaussianRational &o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0)
      throw DomainError("division by zero Gaussian rational");
    re_ /= o.re_;
    if (sgn(im_) != 0)
      im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

void GaussianRational::add_product(const GaussianRational &a, const GaussianRational &b) {
  if (sgn(a.im_) == 0 && sgn(b.im_) == 0) {
    re_ += a.re_ * b.re_;
    return;
  }
  re_ += a.re_ * b.re_ - a.im_ * b.im_;
  im_ += a.re_ * b.im_ + a.im_ * b.re_;
}

std::ostream &operator<<(std::ostream &os, const GaussianRational &x) { return os << x.str(); }

} // namespace crmw
