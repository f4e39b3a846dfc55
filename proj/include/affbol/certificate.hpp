#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "affbol/bitset.hpp"
#include "affbol/families.hpp"
#include "affbol/geometry.hpp"

namespace affbol {

/// 0/1 membership vector of a point set, indexed by point_index.
struct CharVector {
  Bitset bits;
  [[nodiscard]] std::size_t popcount() const noexcept { return bits.count(); }
};

CharVector char_vector(const AffineSubspace& s);

/// Smallest prime dividing q - 1. Throws Error{QEqualsTwo} for q = 2 and
/// Error{InvalidP} for q < 2.
std::uint32_t default_certificate_prime(std::uint32_t q);

/// Coefficients over F_p of P_i = 1 − Σ_k v_i(k) x_k: the constant term
/// followed by one entry per point.
struct CertificateRow {
  std::size_t index = 0;  // 1-based
  std::vector<Elem> coefficients;

  /// P_i(w) for a 0/1 vector w.
  [[nodiscard]] Elem evaluate(const CharVector& w, std::uint32_t p) const;
};

CertificateRow certificate_row(std::size_t index, const CharVector& v, std::uint32_t p);

struct EvalCertificate {
  std::uint32_t q = 0;
  std::size_t n = 0;
  std::uint32_t p = 0;
  std::size_t m = 0;
  /// E[i][j] = (1 − |A_i ∩ B_j|) mod p.
  std::vector<std::vector<Elem>> matrix;
  /// Diagonal all 1 and strictly upper part all 0.
  bool valid = false;
  /// q^n + 1, the number of monomials of degree at most 1.
  std::uint64_t implied_bound = 0;
  std::vector<CharVector> a_vectors;
  std::vector<CharVector> b_vectors;
};

/// Evaluation certificate for a skew-verified affine family.
///
/// Throws Error{QEqualsTwo} for q = 2, Error{InvalidP} unless p is a prime
/// dividing q - 1, Error{ContextMismatch} if a member is outside `space`, and
/// Error{NotVerified} if the family fails the skew verifier. A valid
/// certificate with m > q^n + 1 raises InternalInconsistency.
EvalCertificate build_certificate(const Space& space, const AffineFamily& fam, std::uint32_t p);

/// Same matrix computed from affine_intersect sizes instead of bitsets.
std::vector<std::vector<Elem>> evaluation_matrix_from_intersections(const AffineFamily& fam,
                                                                    std::uint32_t p);

std::vector<CertificateRow> certificate_rows(const EvalCertificate& cert);

/// Rank over F_p of the coefficient matrix of the rows.
std::size_t rank_crosscheck(std::span<const CertificateRow> rows, std::uint32_t p);

}  // namespace affbol
