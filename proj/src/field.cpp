#include "affbol/field.hpp"

#include <array>
#include <string>

#include "affbol/errors.hpp"

namespace affbol {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotVerified: return "NotVerified";
    case ErrorKind::QEqualsTwo: return "QEqualsTwo";
    case ErrorKind::InvalidP: return "InvalidP";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) noexcept {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

PrimePower factor_prime_power(std::uint64_t q) noexcept {
  if (q < 2) return {};
  const std::uint64_t r = smallest_prime_factor(q);
  std::uint32_t alpha = 0;
  while (q % r == 0) {
    q /= r;
    ++alpha;
  }
  if (q != 1) return {};
  return {static_cast<std::uint32_t>(r), alpha};
}

namespace {

struct ConwayEntry {
  std::uint32_t q;
  std::array<std::uint32_t, 10> coeffs;  // constant term first, monic
};

// Conway polynomials for every non-prime q <= 512.
constexpr std::array<ConwayEntry, 20> kConway{{
    {4, {1, 1, 1}},
    {8, {1, 1, 0, 1}},
    {16, {1, 1, 0, 0, 1}},
    {32, {1, 0, 1, 0, 0, 1}},
    {64, {1, 1, 0, 1, 1, 0, 1}},
    {128, {1, 1, 0, 0, 0, 0, 0, 1}},
    {256, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {512, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
    {9, {2, 2, 1}},
    {27, {1, 2, 0, 1}},
    {81, {2, 0, 0, 2, 1}},
    {243, {1, 2, 0, 0, 0, 1}},
    {25, {2, 4, 1}},
    {125, {3, 3, 0, 1}},
    {49, {3, 6, 1}},
    {343, {4, 0, 6, 1}},
    {121, {2, 7, 1}},
    {169, {2, 12, 1}},
    {289, {3, 16, 1}},
    {361, {2, 18, 1}},
}};

std::vector<std::uint32_t> lookup_modulus(std::uint32_t q, std::uint32_t alpha) {
  for (const auto& e : kConway) {
    if (e.q == q) return {e.coeffs.begin(), e.coeffs.begin() + alpha + 1};
  }
  throw Error(ErrorKind::BudgetExceeded,
              "no modulus tabulated for q = " + std::to_string(q) + " (max 512)");
}

std::vector<std::uint32_t> to_digits(Elem a, std::uint32_t r, std::uint32_t alpha) {
  std::vector<std::uint32_t> d(alpha);
  for (auto& x : d) {
    x = a % r;
    a /= r;
  }
  return d;
}

Elem from_digits(const std::vector<std::uint32_t>& d, std::uint32_t r) {
  Elem a = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * r + *it;
  return a;
}

}  // namespace

Field Field::make(std::uint32_t q) {
  const auto pp = factor_prime_power(q);
  if (pp.prime == 0) {
    throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  }
  if (q > 512) {
    throw Error(ErrorKind::BudgetExceeded,
                "field order " + std::to_string(q) + " exceeds the supported maximum 512");
  }
  auto t = std::make_shared<Tables>();
  t->q = q;
  t->r = pp.prime;
  t->alpha = pp.exponent;
  t->exp.assign(2 * (q - 1), 0);
  t->log.assign(q, 0);

  if (t->alpha == 1) {
    t->modulus = {0, 1};
    // Smallest primitive root.
    for (Elem g = 1; g < q; ++g) {
      Elem x = 1;
      std::uint32_t order = 0;
      do {
        x = static_cast<Elem>((std::uint64_t{x} * g) % q);
        ++order;
      } while (x != 1);
      if (order == q - 1) {
        t->primitive = g;
        break;
      }
    }
    Elem x = 1;
    for (std::uint32_t k = 0; k < q - 1; ++k) {
      t->exp[k] = x;
      t->log[x] = k;
      x = static_cast<Elem>((std::uint64_t{x} * t->primitive) % q);
    }
  } else {
    const std::uint32_t r = t->r;
    const std::uint32_t alpha = t->alpha;
    t->modulus = lookup_modulus(q, alpha);
    t->add.resize(std::size_t{q} * q);
    t->neg.resize(q);
    for (Elem a = 0; a < q; ++a) {
      const auto da = to_digits(a, r, alpha);
      std::vector<std::uint32_t> dn(alpha);
      for (std::uint32_t i = 0; i < alpha; ++i) dn[i] = (r - da[i]) % r;
      t->neg[a] = from_digits(dn, r);
      for (Elem b = 0; b < q; ++b) {
        const auto db = to_digits(b, r, alpha);
        std::vector<std::uint32_t> ds(alpha);
        for (std::uint32_t i = 0; i < alpha; ++i) ds[i] = (da[i] + db[i]) % r;
        t->add[std::size_t{a} * q + b] = from_digits(ds, r);
      }
    }
    // Powers of x modulo the modulus. The modulus is primitive, so x has
    // order exactly q-1; anything else means a bad table entry.
    std::vector<std::uint32_t> cur(alpha, 0);
    cur[0] = 1;
    std::vector<bool> seen(q, false);
    for (std::uint32_t k = 0; k < q - 1; ++k) {
      const Elem e = from_digits(cur, r);
      if (e == 0 || seen[e]) {
        throw InternalInconsistency("modulus for q = " + std::to_string(q) +
                                    " is not primitive");
      }
      seen[e] = true;
      t->exp[k] = e;
      t->log[e] = k;
      // cur *= x
      const std::uint32_t top = cur[alpha - 1];
      for (std::uint32_t i = alpha - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      for (std::uint32_t i = 0; i < alpha; ++i) {
        cur[i] = (cur[i] + (r - (top * t->modulus[i]) % r)) % r;
      }
    }
    if (from_digits(cur, r) != 1) {
      throw InternalInconsistency("modulus for q = " + std::to_string(q) +
                                  " is not primitive");
    }
    t->primitive = t->exp[1];
  }
  for (std::uint32_t k = 0; k < q - 1; ++k) t->exp[k + q - 1] = t->exp[k];
  return Field(std::move(t));
}

Elem Field::add(Elem a, Elem b) const noexcept {
  const auto& t = *tables_;
  if (t.alpha == 1) {
    const Elem s = a + b;
    return s >= t.q ? s - t.q : s;
  }
  return t.add[std::size_t{a} * t.q + b];
}

Elem Field::neg(Elem a) const noexcept {
  const auto& t = *tables_;
  if (t.alpha == 1) return a == 0 ? 0 : t.q - a;
  return t.neg[a];
}

Elem Field::mul(Elem a, Elem b) const noexcept {
  const auto& t = *tables_;
  if (a == 0 || b == 0) return 0;
  if (t.alpha == 1) return static_cast<Elem>((std::uint64_t{a} * b) % t.q);
  return t.exp[t.log[a] + t.log[b]];
}

Elem Field::inv(Elem a) const {
  const auto& t = *tables_;
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return t.exp[(t.q - 1 - t.log[a]) % (t.q - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  const auto& t = *tables_;
  if (e == 0) return 1;
  if (a == 0) return 0;
  return t.exp[(std::uint64_t{t.log[a]} * (e % (t.q - 1))) % (t.q - 1)];
}

}  // namespace affbol
