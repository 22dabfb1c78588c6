#include "tilecoh/number_field.hpp"

#include <sstream>
#include <stdexcept>

#include "tilecoh/factor.hpp"

namespace tilecoh {

NumberField::NumberField(Poly min_poly, Rational lo, Rational hi)
    : poly_(std::move(min_poly)),
      gen_(poly_.degree() == 1 ? AlgebraicNumber(-poly_.coeff(0)) : AlgebraicNumber(poly_, lo, hi)),
      declared_(gen_.interval()) {
  if (poly_.degree() < 1) throw std::invalid_argument("number field: degree must be positive");
  if (poly_.lc() != 1 || !poly_.is_integral())
    throw std::invalid_argument("number field: minimal polynomial must be monic with integer coefficients");
  if (poly_.degree() > 1 && !is_irreducible(poly_))
    throw std::invalid_argument("number field: minimal polynomial " + poly_.to_string() + " is reducible");
}

NumberField::NumberField(Poly min_poly) : poly_(std::move(min_poly)), embedded_(false) {
  if (poly_.degree() < 1) throw std::invalid_argument("number field: degree must be positive");
  if (poly_.lc() != 1 || !poly_.is_integral())
    throw std::invalid_argument("number field: minimal polynomial must be monic with integer coefficients");
  if (poly_.degree() > 1 && !is_irreducible(poly_))
    throw std::invalid_argument("number field: minimal polynomial " + poly_.to_string() + " is reducible");
}

const AlgebraicNumber& NumberField::generator() const {
  if (!embedded_) throw std::logic_error("number field has no real embedding");
  return gen_;
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q = std::make_shared<const NumberField>(Poly::x(), Rational(0), Rational(0));
  return q;
}

std::vector<Rational> NumberField::reduce(const Poly& p) const {
  int n = degree();
  std::vector<Rational> c = p.coeffs();
  const auto& m = poly_.coeffs();
  for (int i = static_cast<int>(c.size()) - 1; i >= n; --i) {
    Rational f = c[static_cast<size_t>(i)];
    if (f == 0) continue;
    for (int j = 0; j < n; ++j) c[static_cast<size_t>(i - n + j)] -= f * m[static_cast<size_t>(j)];
    c[static_cast<size_t>(i)] = 0;
  }
  c.resize(static_cast<size_t>(n));
  return c;
}

bool NumberField::same_as(const NumberField& o) const {
  if (this == &o) return true;
  if (!(poly_ == o.poly_)) return false;
  if (!embedded_ || !o.embedded_) return embedded_ == o.embedded_;
  Interval a = gen_.interval(), b = o.gen_.interval();
  if (degree() == 1) return true;
  // same polynomial: same root iff intervals overlap after refinement to separation
  Rational lo = a.lo > b.lo ? a.lo : b.lo;
  Rational hi = a.hi < b.hi ? a.hi : b.hi;
  if (lo > hi) return false;
  auto roots = isolate_real_roots(poly_);
  int hits = 0;
  for (const auto& r : roots)
    if (!(r.hi < lo || r.lo > hi)) ++hits;
  if (hits == 1) return true;
  // ambiguous overlap: refine both
  Rational w = (hi - lo) / 1024;
  for (int k = 0; k < 64; ++k) {
    Interval x = gen_.refine_to(w), y = o.gen_.refine_to(w);
    if (x.hi < y.lo || y.hi < x.lo) return false;
    w /= 16;
  }
  return true;
}

FieldElement::FieldElement(FieldPtr field, const Rational& value) : field_(std::move(field)) {
  c_.assign(static_cast<size_t>(field_->degree()), Rational(0));
  c_[0] = value;
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)) {
  if (static_cast<int>(coeffs.size()) > field_->degree()) {
    c_ = field_->reduce(Poly(std::move(coeffs)));
  } else {
    c_ = std::move(coeffs);
    c_.resize(static_cast<size_t>(field_->degree()), Rational(0));
  }
}

bool FieldElement::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const Rational& r) {
  for (auto& c : c_) c *= r;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  size_t n = c_.size();
  if (n == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  const auto& m = field_->min_poly().coeffs();
  for (size_t i = 2 * n - 2; i >= n; --i) {
    const Rational f = prod[i];
    if (f != 0)
      for (size_t j = 0; j < n; ++j) prod[i - n + j] -= f * m[j];
  }
  prod.resize(n);
  c_ = std::move(prod);
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("FieldElement: division by zero");
  if (c_.size() == 1) return FieldElement(field_, Rational(1 / c_[0]));
  auto eg = extended_gcd(as_poly(), field_->min_poly());
  // s*a + t*m = 1
  return FieldElement(field_, field_->reduce(eg.s));
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

FieldElement FieldElement::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r(field_, Rational(1)), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

int FieldElement::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return c_[0] > 0 ? 1 : -1;
  return field_->generator().sign_of(as_poly());
}

double FieldElement::to_double() const {
  if (is_rational()) return c_[0].get_d();
  double g = field_->generator().to_double();
  double acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * g + c_[i].get_d();
  return acc;
}

std::string FieldElement::key() const {
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += c_[i].get_str();
  }
  return s;
}

std::string FieldElement::to_string() const { return as_poly().to_string("g"); }

int compare(const FieldElement& a, const FieldElement& b) { return (a - b).sign(); }

}  // namespace tilecoh
