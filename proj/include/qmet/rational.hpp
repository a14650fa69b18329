#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace qmet {

using Rat = boost::multiprecision::cpp_rational;

// Nonnegative rational extended with a distinguished +inf.  Addition is
// total (inf absorbs); comparison is a total order with inf maximal.
// There is no subtraction and no general product: the library's two
// scalar-product conventions differ (see scale / lip_scale below), so
// they are named functions rather than operators.
class ExtRat {
public:
  ExtRat() : fin_(0) {}
  ExtRat(Rat v) : fin_(std::move(v)) {
    if (fin_ < 0) throw std::invalid_argument("ExtRat: negative value");
  }
  ExtRat(long v) : ExtRat(Rat(v)) {}
  ExtRat(int v) : ExtRat(Rat(v)) {}

  static ExtRat infinity() {
    ExtRat r;
    r.inf_ = true;
    return r;
  }

  bool is_inf() const { return inf_; }
  const Rat& value() const {
    if (inf_) throw std::logic_error("ExtRat: value() on infinity");
    return fin_;
  }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.fin_ == b.fin_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.fin_ < b.fin_;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtRat(a.fin_ + b.fin_);
  }
  ExtRat& operator+=(const ExtRat& o) { return *this = *this + o; }

  std::string str() const { return inf_ ? "inf" : fin_.str(); }

private:
  bool inf_ = false;
  Rat fin_;
};

inline ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
inline ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

// The asymmetric distance on the value domain: 0 if x <= y, inf if x is
// inf and y is not, x - y otherwise.
inline ExtRat dreal(const ExtRat& x, const ExtRat& y) {
  if (x <= y) return ExtRat(0);
  if (x.is_inf()) return ExtRat::infinity();
  return ExtRat(x.value() - y.value());
}

// Cone convention: 0 * x = 0 even when x = inf.  Used for weights and
// positive-homogeneity, and for the cost of a zero-mass move.
inline ExtRat scale(const Rat& a, const ExtRat& x) {
  if (a < 0) throw std::invalid_argument("scale: negative scalar");
  if (a == 0) return ExtRat(0);
  if (x.is_inf()) return ExtRat::infinity();
  return ExtRat(a * x.value());
}

// Lipschitz-check convention: alpha * inf = inf even when alpha = 0.
inline ExtRat lip_scale(const Rat& alpha, const ExtRat& d) {
  if (alpha < 0) throw std::invalid_argument("lip_scale: negative scalar");
  if (d.is_inf()) return ExtRat::infinity();
  return ExtRat(alpha * d.value());
}

ExtRat parse_extrat(const std::string& s);
Rat parse_rat(const std::string& s);

}  // namespace qmet
