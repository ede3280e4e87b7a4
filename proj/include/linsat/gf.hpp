#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "linsat/errors.hpp"

namespace linsat {

/// An element of F_q. The value packs the polynomial-basis coefficients as
/// base-p digits (constant term in the least significant digit); for prime
/// fields it is the residue itself.
struct Element {
  std::uint32_t value = 0;

  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t v) : value(v) {}

  constexpr auto operator<=>(const Element&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, Element e) {
  return os << e.value;
}

/// Largest supported field order.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

namespace detail {

inline std::uint32_t smallest_prime_factor(std::uint32_t n) {
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

// Polynomials over F_p as coefficient vectors, constant term first.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b over F_p; b must be nonzero after trimming.
inline Poly poly_mod(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  const std::uint32_t lead_inv = inv_mod_prime(b.back(), p);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint64_t factor = std::uint64_t(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// True when the monic polynomial f has no monic factor of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Smallest monic irreducible polynomial of degree tau, ordering candidates
// lexicographically by (c_0, c_1, ..., c_{tau-1}).
inline Poly canonical_modulus(std::uint32_t p, std::uint32_t tau) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < tau; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f(tau + 1, 0);
    f[tau] = 1;
    std::uint64_t rest = idx;
    for (std::uint32_t k = tau; k-- > 0;) {
      f[k] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (f[0] != 0 && is_irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::NotAPrimePower, "no irreducible polynomial found");
}

struct FieldData {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t tau = 0;
  Poly modulus;  // monic, length tau + 1; {0, 1} (i.e. x) for prime fields

  // Full operation tables, present when q <= kTableLimit.
  std::vector<std::uint16_t> add_table;
  std::vector<std::uint16_t> mul_table;
  std::vector<std::uint16_t> neg_table;
  std::vector<std::uint16_t> inv_table;

  static constexpr std::uint32_t kTableLimit = 256;

  bool tabled() const { return !mul_table.empty(); }

  std::uint32_t add_direct(std::uint32_t a, std::uint32_t b) const {
    if (tau == 1) return (a + b) % p;
    if (p == 2) return a ^ b;
    std::uint32_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < tau; ++i) {
      out += ((a % p + b % p) % p) * place;
      a /= p;
      b /= p;
      place *= p;
    }
    return out;
  }

  std::uint32_t neg_direct(std::uint32_t a) const {
    if (tau == 1) return (p - a) % p;
    if (p == 2) return a;
    std::uint32_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < tau; ++i) {
      out += ((p - a % p) % p) * place;
      a /= p;
      place *= p;
    }
    return out;
  }

  std::uint32_t mul_direct(std::uint32_t a, std::uint32_t b) const {
    if (tau == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
    std::vector<std::uint32_t> da(tau), db(tau), prod(2 * tau - 1, 0);
    for (std::uint32_t i = 0; i < tau; ++i) {
      da[i] = a % p;
      db[i] = b % p;
      a /= p;
      b /= p;
    }
    for (std::uint32_t i = 0; i < tau; ++i) {
      if (da[i] == 0) continue;
      for (std::uint32_t j = 0; j < tau; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    }
    // modulus is monic: x^tau = -(c_0 + ... + c_{tau-1} x^{tau-1})
    for (std::uint32_t k = 2 * tau - 1; k-- > tau;) {
      const std::uint32_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (std::uint32_t i = 0; i < tau; ++i)
        prod[k - tau + i] = (prod[k - tau + i] + (p - c) * modulus[i]) % p;
    }
    std::uint32_t out = 0;
    for (std::uint32_t i = tau; i-- > 0;) out = out * p + prod[i];
    return out;
  }

  std::uint32_t pow_direct(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t result = 1;
    while (e > 0) {
      if (e & 1) result = mul_direct(result, a);
      a = mul_direct(a, a);
      e >>= 1;
    }
    return result;
  }

  void build_tables() {
    const std::size_t qq = std::size_t(q) * q;
    add_table.resize(qq);
    mul_table.resize(qq);
    neg_table.resize(q);
    inv_table.assign(q, 0);
    for (std::uint32_t a = 0; a < q; ++a) {
      neg_table[a] = static_cast<std::uint16_t>(neg_direct(a));
      for (std::uint32_t b = 0; b < q; ++b) {
        add_table[a * q + b] = static_cast<std::uint16_t>(add_direct(a, b));
        const auto m = mul_direct(a, b);
        mul_table[a * q + b] = static_cast<std::uint16_t>(m);
        if (m == 1) inv_table[a] = static_cast<std::uint16_t>(b);
      }
    }
  }
};

inline std::shared_ptr<const FieldData> make_field_data(std::uint32_t q) {
  auto data = std::make_shared<FieldData>();
  data->q = q;
  data->p = smallest_prime_factor(q);
  std::uint32_t rest = q, tau = 0;
  while (rest % data->p == 0) {
    rest /= data->p;
    ++tau;
  }
  if (rest != 1)
    throw Error(ErrorKind::NotAPrimePower,
                std::to_string(q) + " is not a prime power");
  data->tau = tau;
  data->modulus = tau == 1 ? Poly{0, 1} : canonical_modulus(data->p, tau);
  if (q <= FieldData::kTableLimit) data->build_tables();
  return data;
}

}  // namespace detail

/// The finite field F_q, q = p^tau <= 2^16. Immutable and cheap to copy;
/// instances with the same order share one canonical representation.
class FieldSpec {
 public:
  /// Canonical field of order q. Throws NotAPrimePower, or RangeError when q
  /// is outside [2, 2^16].
  static FieldSpec from_order(std::uint64_t q) {
    if (q < 2 || q > kMaxFieldOrder)
      throw Error(ErrorKind::RangeError,
                  "field order " + std::to_string(q) + " outside [2, 65536]");
    static std::mutex mutex;
    static std::map<std::uint32_t, std::shared_ptr<const detail::FieldData>>
        cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[static_cast<std::uint32_t>(q)];
    if (!slot) slot = detail::make_field_data(static_cast<std::uint32_t>(q));
    return FieldSpec(slot);
  }

  std::uint32_t order() const noexcept { return data_->q; }
  std::uint32_t characteristic() const noexcept { return data_->p; }
  std::uint32_t degree() const noexcept { return data_->tau; }

  /// Reduction modulus c_0..c_tau (monic). Prime fields report x.
  const std::vector<std::uint32_t>& modulus() const noexcept {
    return data_->modulus;
  }

  bool contains(Element a) const noexcept { return a.value < data_->q; }

  static constexpr Element zero() noexcept { return Element{0}; }
  static constexpr Element one() noexcept { return Element{1}; }

  Element add(Element a, Element b) const noexcept {
    const auto& d = *data_;
    if (d.tabled()) return Element{d.add_table[a.value * d.q + b.value]};
    return Element{d.add_direct(a.value, b.value)};
  }

  Element neg(Element a) const noexcept {
    const auto& d = *data_;
    if (d.tabled()) return Element{d.neg_table[a.value]};
    return Element{d.neg_direct(a.value)};
  }

  Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

  Element mul(Element a, Element b) const noexcept {
    const auto& d = *data_;
    if (d.tabled()) return Element{d.mul_table[a.value * d.q + b.value]};
    return Element{d.mul_direct(a.value, b.value)};
  }

  /// Multiplicative inverse; throws DivisionByZero for 0.
  Element inv(Element a) const {
    if (a.value == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0");
    const auto& d = *data_;
    if (d.tabled()) return Element{d.inv_table[a.value]};
    return Element{d.pow_direct(a.value, d.q - 2)};
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element pow(Element a, std::uint64_t e) const {
    Element result = one();
    while (e > 0) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

  /// All q elements in encoding order 0..q-1.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(data_->q);
    for (std::uint32_t v = 0; v < data_->q; ++v) out.emplace_back(v);
    return out;
  }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.order() == b.order();
  }

 private:
  explicit FieldSpec(std::shared_ptr<const detail::FieldData> data)
      : data_(std::move(data)) {}

  std::shared_ptr<const detail::FieldData> data_;
};

}  // namespace linsat
