#include "detflow/polyalg/gauss_rat.hpp"

#include "detflow/errors.hpp"

namespace detflow {

GaussRat::GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRat GaussRat::rational(long num, long den) {
  if (den == 0) throw Error("GaussRat: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q, 0};
}

GaussRat GaussRat::inverse() const {
  if (is_zero()) throw Error("GaussRat: division by zero");
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) { return *this *= o.inverse(); }

namespace {

// "p/q" for a rational; for the imaginary part the unit goes after the
// numerator so that "3i/4" parses back as (3i)/4.
std::string render_rational(const mpq_class& q, bool imaginary) {
  mpz_class num = abs(q.get_num());
  std::string out = num.get_str();
  if (imaginary) out = (num == 1 ? std::string() : out) + "i";
  if (q.get_den() != 1) out += "/" + q.get_den().get_str();
  return out;
}

}  // namespace

std::string GaussRat::render(bool bare) const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im) return (sgn(re_) < 0 ? "-" : "") + render_rational(re_, false);
  std::string out;
  if (has_re) {
    out = (sgn(re_) < 0 ? "-" : "") + render_rational(re_, false);
    out += sgn(im_) < 0 ? " - " : " + ";
  } else if (sgn(im_) < 0) {
    out = "-";
  }
  out += render_rational(im_, true);
  if (has_re && !bare) return "(" + out + ")";
  return out;
}

}  // namespace detflow
