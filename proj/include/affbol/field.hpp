#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace affbol {

/// Field elements are integers 0..q-1. For q = r^alpha with alpha > 1 the
/// integer holds the base-r digits of the polynomial representative, least
/// significant digit = constant term.
using Elem = std::uint32_t;

/// Exact arithmetic in F_q for prime powers q <= 512.
///
/// Copies share one immutable table block, so a Field is cheap to pass by
/// value and safe to use from several threads.
class Field {
 public:
  /// Builds F_q. Throws Error{NotPrimePower} unless q = r^alpha with r prime,
  /// and Error{BudgetExceeded} for q > 512 with alpha > 1.
  static Field make(std::uint32_t q);

  [[nodiscard]] std::uint32_t order() const noexcept { return tables_->q; }
  [[nodiscard]] std::uint32_t characteristic() const noexcept { return tables_->r; }
  [[nodiscard]] std::uint32_t degree() const noexcept { return tables_->alpha; }

  /// Coefficients of the modulus, constant term first. For prime fields this
  /// is the linear polynomial x (i.e. {0, 1}).
  [[nodiscard]] std::span<const std::uint32_t> modulus() const noexcept {
    return tables_->modulus;
  }

  [[nodiscard]] Elem add(Elem a, Elem b) const noexcept;
  [[nodiscard]] Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  [[nodiscard]] Elem neg(Elem a) const noexcept;
  [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept;
  /// Throws Error{DivisionByZero} for a = 0.
  [[nodiscard]] Elem inv(Elem a) const;
  [[nodiscard]] Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  [[nodiscard]] Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// A generator of the multiplicative group (the class of x for alpha > 1).
  [[nodiscard]] Elem primitive() const noexcept { return tables_->primitive; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.order() == b.order();
  }

 private:
  struct Tables {
    std::uint32_t q = 0;
    std::uint32_t r = 0;
    std::uint32_t alpha = 0;
    Elem primitive = 0;
    std::vector<std::uint32_t> modulus;
    std::vector<Elem> add;     // q*q, only for alpha > 1
    std::vector<Elem> neg;     // q, only for alpha > 1
    std::vector<Elem> exp;     // 2(q-1): exp[k] = g^k
    std::vector<std::uint32_t> log;  // q: log[g^k] = k, log[0] unused
  };

  explicit Field(std::shared_ptr<const Tables> t) : tables_(std::move(t)) {}

  std::shared_ptr<const Tables> tables_;
};

/// Returns (r, alpha) with q = r^alpha, or (0, 0) when q is not a prime power.
struct PrimePower {
  std::uint32_t prime = 0;
  std::uint32_t exponent = 0;
};
PrimePower factor_prime_power(std::uint64_t q) noexcept;

bool is_prime(std::uint64_t n) noexcept;

/// Smallest prime factor of n >= 2.
std::uint64_t smallest_prime_factor(std::uint64_t n) noexcept;

}  // namespace affbol
