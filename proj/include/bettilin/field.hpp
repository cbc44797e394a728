#ifndef BETTILIN_FIELD_HPP
#define BETTILIN_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bettilin {

/// Prime field GF(p) for a machine-word prime p < 2^63. Elements are plain
/// integers kept reduced to [0, p).
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 63) || !is_prime(p)) {
      throw std::invalid_argument("GF(p) needs a prime p < 2^63, got " +
                                  std::to_string(p));
    }
  }

  std::uint64_t characteristic() const { return p_; }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    return static_cast<Element>(r < 0 ? r + m : r);
  }

  Element add(Element a, Element b) const {
    Element s = a + b;  // no overflow: a, b < 2^63
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + (p_ - b); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("division by zero in " + name());
    // extended Euclid on signed 128-bit values
    __int128 t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      __int128 q = r / new_r;
      __int128 tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Element>(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }
  std::string to_string(Element a) const { return std::to_string(a); }

 private:
  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, x = b % m;
    while (e) {
      if (e & 1) r = r * x % m;
      x = x * x % m;
      e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
  }

  // Deterministic Miller-Rabin for 64-bit inputs.
  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
      if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
      d >>= 1;
      ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
      std::uint64_t x = pow_mod(a, d, n);
      if (x == 1 || x == n - 1) continue;
      bool composite = true;
      for (int r = 1; r < s; ++r) {
        x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
        if (x == n - 1) {
          composite = false;
          break;
        }
      }
      if (composite) return false;
    }
    return true;
  }

  std::uint64_t p_;
};

/// The rationals, backed by GMP.
class RationalField {
 public:
  using Element = mpq_class;

  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "QQ"; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw std::domain_error("division by zero in QQ");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const {
    if (sgn(b) == 0) throw std::domain_error("division by zero in QQ");
    return a / b;
  }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string to_string(const Element& a) const { return a.get_str(); }
};

/// Calls fn with a RationalField (characteristic 0) or a PrimeField.
template <class Fn>
decltype(auto) with_field(std::uint64_t characteristic, Fn&& fn) {
  if (characteristic == 0) return fn(RationalField{});
  return fn(PrimeField{characteristic});
}

}  // namespace bettilin

#endif  // BETTILIN_FIELD_HPP
