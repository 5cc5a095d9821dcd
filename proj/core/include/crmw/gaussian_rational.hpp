#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace crmw {

// Exact element of Q(i), stored as two canonical GMP rationals.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}
  GaussianRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

  // Grammar:  INT := -?[0-9]+ ; RAT := INT ("/" INT)? ;
  //           GR  := RAT | RAT [+-] RAT "i" | RAT "i"
  static GaussianRational parse(std::string_view text);
  std::string str() const;

  const mpq_class &re() const { return re_; }
  const mpq_class &im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inverse() const;
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational &operator+=(const GaussianRational &o);
  GaussianRational &operator-=(const GaussianRational &o);
  GaussianRational &operator*=(const GaussianRational &o);
  GaussianRational &operator/=(const GaussianRational &o);

  // this += a*b without temporaries for the common real case.
  void add_product(const GaussianRational &a, const GaussianRational &b);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }
  friend bool operator==(const GaussianRational &a, const GaussianRational &b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational &a, const GaussianRational &b) { return !(a == b); }

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using GR = GaussianRational;

std::ostream &operator<<(std::ostream &os, const GaussianRational &x);

} // namespace crmw
