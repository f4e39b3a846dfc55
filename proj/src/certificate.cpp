#include "affbol/certificate.hpp"

#include <string>

#include "affbol/errors.hpp"
#include "affbol/linalg.hpp"

namespace affbol {

namespace {

Elem one_minus_mod(std::uint64_t count, std::uint32_t p) {
  return static_cast<Elem>((1 + p - count % p) % p);
}

}  // namespace

CharVector char_vector(const AffineSubspace& s) {
  const Space& space = s.space();
  CharVector out{Bitset(space.point_count())};
  s.for_each_point([&](const Vec& v) { out.bits.set(point_index(space, v)); });
  return out;
}

std::uint32_t default_certificate_prime(std::uint32_t q) {
  if (q == 2) throw Error(ErrorKind::QEqualsTwo, "q = 2: q - 1 has no prime divisor");
  if (q < 2) throw Error(ErrorKind::InvalidP, "q must be at least 3");
  return static_cast<std::uint32_t>(smallest_prime_factor(q - 1));
}

Elem CertificateRow::evaluate(const CharVector& w, std::uint32_t p) const {
  std::uint64_t acc = coefficients.at(0);
  w.bits.for_each([&](std::size_t k) { acc += coefficients[k + 1]; });
  return static_cast<Elem>(acc % p);
}

CertificateRow certificate_row(std::size_t index, const CharVector& v, std::uint32_t p) {
  CertificateRow row;
  row.index = index;
  row.coefficients.assign(v.bits.size() + 1, 0);
  row.coefficients[0] = 1 % p;
  v.bits.for_each([&](std::size_t k) { row.coefficients[k + 1] = p - 1; });
  return row;
}

EvalCertificate build_certificate(const Space& space, const AffineFamily& fam, std::uint32_t p) {
  const std::uint32_t q = space.q();
  if (q == 2) throw Error(ErrorKind::QEqualsTwo, "q = 2: no prime divides q - 1");
  if (!is_prime(p) || (q - 1) % p != 0) {
    throw Error(ErrorKind::InvalidP,
                "p = " + std::to_string(p) + " is not a prime divisor of q - 1 = " +
                    std::to_string(q - 1));
  }
  for (const auto& [a, b] : fam.pairs) {
    if (!(a.space() == space) || !(b.space() == space)) {
      throw Error(ErrorKind::ContextMismatch, "family member outside the certificate space");
    }
  }
  AffineFamily skew = fam;
  skew.mode = Mode::Skew;
  if (!verify_cross_intersecting(skew).empty()) {
    throw Error(ErrorKind::NotVerified, "family is not cross-intersecting");
  }

  EvalCertificate cert;
  cert.q = q;
  cert.n = space.dim();
  cert.p = p;
  cert.m = fam.size();
  cert.implied_bound = space.point_count() + 1;
  for (const auto& [a, b] : fam.pairs) {
    cert.a_vectors.push_back(char_vector(a));
    cert.b_vectors.push_back(char_vector(b));
  }
  cert.matrix.assign(cert.m, std::vector<Elem>(cert.m, 0));
  bool valid = true;
  for (std::size_t i = 0; i < cert.m; ++i) {
    for (std::size_t j = 0; j < cert.m; ++j) {
      const Elem e = one_minus_mod(cert.a_vectors[i].bits.and_count(cert.b_vectors[j].bits), p);
      cert.matrix[i][j] = e;
      if (i == j && e != 1) valid = false;
      if (i < j && e != 0) valid = false;
    }
  }
  cert.valid = valid;
  if (valid && cert.m > cert.implied_bound) {
    throw InternalInconsistency("valid certificate with m > q^n + 1");
  }
  return cert;
}

std::vector<std::vector<Elem>> evaluation_matrix_from_intersections(const AffineFamily& fam,
                                                                    std::uint32_t p) {
  const std::size_t m = fam.size();
  std::vector<std::vector<Elem>> e(m, std::vector<Elem>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto res = affine_intersect(fam.pairs[i].first, fam.pairs[j].second);
      e[i][j] = one_minus_mod(res.empty() ? 0 : res.coset->size(), p);
    }
  }
  return e;
}

std::vector<CertificateRow> certificate_rows(const EvalCertificate& cert) {
  std::vector<CertificateRow> rows;
  for (std::size_t i = 0; i < cert.a_vectors.size(); ++i) {
    rows.push_back(certificate_row(i + 1, cert.a_vectors[i], cert.p));
  }
  return rows;
}

std::size_t rank_crosscheck(std::span<const CertificateRow> rows, std::uint32_t p) {
  if (rows.empty()) return 0;
  const Field fp = Field::make(p);
  Matrix m(0, rows.front().coefficients.size());
  for (const auto& r : rows) m.append_row(r.coefficients);
  return rank(fp, m);
}

}  // namespace affbol
