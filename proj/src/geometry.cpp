#include "affbol/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "affbol/errors.hpp"

namespace affbol {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

void require_same(const Space& a, const Space& b) {
  if (!(a == b)) throw Error(ErrorKind::DimensionMismatch, "operands live in different spaces");
}

void require_len(const Space& s, std::size_t len) {
  if (len != s.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length " + std::to_string(len) +
                                                  " does not match dimension " +
                                                  std::to_string(s.dim()));
  }
}

std::size_t hash_mix(std::size_t h, std::size_t v) noexcept {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint64_t saturating_pow(std::uint64_t b, std::size_t e) {
  boost::multiprecision::cpp_int v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    v *= b;
    if (v > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Space Space::make(Field field, std::size_t n, std::uint64_t budget) {
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "ambient dimension must be at least 1");
  const std::uint64_t points = saturating_pow(field.order(), n);
  if (points > budget) {
    throw Error(ErrorKind::BudgetExceeded,
                "q^n = " + (points == kSaturated ? std::string("overflow") : std::to_string(points)) +
                    " exceeds the point budget " + std::to_string(budget));
  }
  return Space(std::move(field), n, points);
}

std::uint64_t point_index(const Space& space, std::span<const Elem> v) {
  require_len(space, v.size());
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * space.q() + v[i];
  return idx;
}

Vec point_unindex(const Space& space, std::uint64_t index) {
  Vec v(space.dim());
  for (auto& x : v) {
    x = static_cast<Elem>(index % space.q());
    index /= space.q();
  }
  return v;
}

// --- LinearSubspace ---------------------------------------------------------

LinearSubspace::LinearSubspace(Space s, Matrix basis) : space_(std::move(s)), basis_(std::move(basis)) {
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    std::size_t c = 0;
    while (basis_(r, c) == 0) ++c;
    pivots_.push_back(c);
  }
}

LinearSubspace LinearSubspace::span(const Space& space, const Matrix& generators) {
  if (generators.cols() != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "generator width does not match dimension");
  }
  return LinearSubspace(space, row_space_basis(space.field(), generators));
}

LinearSubspace LinearSubspace::zero(const Space& space) {
  return LinearSubspace(space, Matrix(0, space.dim()));
}

LinearSubspace LinearSubspace::full(const Space& space) {
  return LinearSubspace(space, Matrix::identity(space.dim()));
}

Vec LinearSubspace::reduce(std::span<const Elem> v) const {
  require_len(space_, v.size());
  const Field& f = space_.field();
  Vec out(v.begin(), v.end());
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    const Elem c = out[pivots_[r]];
    if (c == 0) continue;
    const Elem nc = f.neg(c);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.add(out[k], f.mul(nc, basis_(r, k)));
  }
  return out;
}

bool LinearSubspace::contains(std::span<const Elem> v) const {
  const auto red = reduce(v);
  return std::all_of(red.begin(), red.end(), [](Elem x) { return x == 0; });
}

std::size_t LinearSubspace::hash() const noexcept {
  std::size_t h = hash_mix(space_.q(), space_.dim());
  for (auto x : basis_.data()) h = hash_mix(h, x);
  return hash_mix(h, basis_.rows());
}

LinearSubspace intersect(const LinearSubspace& u, const LinearSubspace& v) {
  require_same(u.space(), v.space());
  return LinearSubspace::span(u.space(),
                              subspace_intersection(u.space().field(), u.basis(), v.basis()));
}

LinearSubspace sum(const LinearSubspace& u, const LinearSubspace& v) {
  require_same(u.space(), v.space());
  return LinearSubspace::span(u.space(), stack(u.basis(), v.basis()));
}

// --- AffineSubspace ---------------------------------------------------------

AffineSubspace affine_canon(const Space& space, const Matrix& direction_basis,
                            std::span<const Elem> point) {
  require_len(space, point.size());
  auto dir = LinearSubspace::span(space, direction_basis);
  auto base = dir.reduce(point);
  return AffineSubspace(std::move(dir), std::move(base));
}

AffineSubspace affine_from_linear(const LinearSubspace& u) {
  return AffineSubspace(u, Vec(u.space().dim(), 0));
}

std::uint64_t AffineSubspace::size() const noexcept { return saturating_pow(space().q(), dim()); }

bool AffineSubspace::contains(std::span<const Elem> v) const {
  require_len(space(), v.size());
  return direction_.contains(vec_sub(space().field(), v, base_));
}

AffineSubspace AffineSubspace::translate(std::span<const Elem> v) const {
  require_len(space(), v.size());
  return AffineSubspace(direction_, direction_.reduce(vec_add(space().field(), base_, v)));
}

void AffineSubspace::for_each_point(const std::function<void(const Vec&)>& fn) const {
  const Field& f = space().field();
  const std::size_t d = dim();
  const Matrix& b = direction_.basis();
  std::vector<Elem> coeffs(d, 0);
  while (true) {
    Vec p = base_;
    for (std::size_t r = 0; r < d; ++r) {
      if (coeffs[r] == 0) continue;
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = f.add(p[k], f.mul(coeffs[r], b(r, k)));
    }
    fn(p);
    std::size_t i = 0;
    while (i < d && ++coeffs[i] == f.order()) coeffs[i++] = 0;
    if (i == d) break;
  }
}

std::size_t AffineSubspace::hash() const noexcept {
  std::size_t h = direction_.hash();
  for (auto x : base_) h = hash_mix(h, x);
  return h;
}

IntersectionResult affine_intersect(const AffineSubspace& a, const AffineSubspace& b) {
  require_same(a.space(), b.space());
  const Space& space = a.space();
  const Field& f = space.field();
  const Matrix& da = a.direction().basis();
  const Matrix& db = b.direction().basis();
  const std::size_t n = space.dim();

  // Columns: rows of da, then negated rows of db. Solve for
  // x·da − y·db = base(b) − base(a).
  Matrix m(n, da.rows() + db.rows());
  for (std::size_t r = 0; r < da.rows(); ++r) {
    for (std::size_t k = 0; k < n; ++k) m(k, r) = da(r, k);
  }
  for (std::size_t r = 0; r < db.rows(); ++r) {
    for (std::size_t k = 0; k < n; ++k) m(k, da.rows() + r) = f.neg(db(r, k));
  }
  const Vec rhs = vec_sub(f, b.base(), a.base());
  const auto sol = solve_affine(f, m, rhs);
  if (!sol.particular) return {};

  const std::span<const Elem> x(sol.particular->data(), da.rows());
  const Vec point = vec_add(f, a.base(), combine_rows(f, da, x));
  const Matrix dir = subspace_intersection(f, da, db);
  return {affine_canon(space, dir, point)};
}

bool minkowski_member(std::span<const Elem> alpha, const AffineSubspace& f,
                      const AffineSubspace& g) {
  require_same(f.space(), g.space());
  require_len(f.space(), alpha.size());
  const Field& fld = f.space().field();
  const Vec offset = vec_sub(fld, alpha, vec_sub(fld, f.base(), g.base()));
  return sum(f.direction(), g.direction()).contains(offset);
}

// --- counting & enumeration -------------------------------------------------

std::uint64_t gaussian_binomial(std::size_t n, std::size_t d, std::uint64_t q) {
  if (d > n) return 0;
  using boost::multiprecision::cpp_int;
  cpp_int num = 1;
  cpp_int den = 1;
  for (std::size_t i = 0; i < d; ++i) {
    num *= cpp_int(boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(n - i))) - 1;
    den *= cpp_int(boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(i + 1))) - 1;
  }
  const cpp_int v = num / den;
  return v > kSaturated ? kSaturated : static_cast<std::uint64_t>(v);
}

std::uint64_t affine_subspace_count(std::size_t n, std::size_t d, std::uint64_t q) {
  using boost::multiprecision::cpp_int;
  const cpp_int v = cpp_int(gaussian_binomial(n, d, q)) *
                    boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(n - d));
  return v > kSaturated ? kSaturated : static_cast<std::uint64_t>(v);
}

namespace {

// Calls fn(pivot columns) for every strictly increasing d-subset of {0..n-1}.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t d, Fn&& fn) {
  std::vector<std::size_t> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = i;
  while (true) {
    fn(c);
    std::size_t i = d;
    while (i > 0 && c[i - 1] == n - d + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < d; ++j) c[j] = c[j - 1] + 1;
  }
}

// All RREF matrices of rank d (unsorted).
std::vector<Matrix> rref_matrices(const Space& space, std::size_t d) {
  const std::size_t n = space.dim();
  const std::uint32_t q = space.q();
  std::vector<Matrix> out;
  if (d == 0) {
    out.emplace_back(0, n);
    return out;
  }
  for_each_combination(n, d, [&](const std::vector<std::size_t>& piv) {
    std::vector<bool> is_pivot(n, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = piv[r] + 1; c < n; ++c) {
        if (!is_pivot[c]) free.emplace_back(r, c);
      }
    }
    Matrix m(d, n);
    for (std::size_t r = 0; r < d; ++r) m(r, piv[r]) = 1;
    std::vector<Elem> val(free.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < free.size(); ++i) m(free[i].first, free[i].second) = val[i];
      out.push_back(m);
      std::size_t i = 0;
      while (i < val.size() && ++val[i] == q) val[i++] = 0;
      if (i == val.size()) break;
    }
  });
  std::sort(out.begin(), out.end(),
            [](const Matrix& a, const Matrix& b) { return a.data() < b.data(); });
  return out;
}

void check_budget(std::uint64_t count, std::uint64_t budget, const char* what) {
  if (count > budget) {
    throw Error(ErrorKind::BudgetExceeded,
                std::string(what) + " count " +
                    (count == kSaturated ? std::string("overflow") : std::to_string(count)) +
                    " exceeds budget " + std::to_string(budget));
  }
}

}  // namespace

std::vector<LinearSubspace> enumerate_linear_subspaces(const Space& space, std::size_t d,
                                                       std::uint64_t budget) {
  if (d > space.dim()) throw Error(ErrorKind::DimensionMismatch, "subspace dimension exceeds n");
  check_budget(gaussian_binomial(space.dim(), d, space.q()), budget, "linear subspace");
  std::vector<LinearSubspace> out;
  for (auto& m : rref_matrices(space, d)) out.push_back(LinearSubspace::span(space, m));
  return out;
}

std::vector<AffineSubspace> enumerate_affine_subspaces(const Space& space,
                                                       std::span<const std::size_t> dims,
                                                       std::uint64_t budget) {
  std::vector<std::size_t> ds(dims.begin(), dims.end());
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  std::uint64_t total = 0;
  for (auto d : ds) {
    if (d > space.dim()) throw Error(ErrorKind::DimensionMismatch, "subspace dimension exceeds n");
    const auto c = affine_subspace_count(space.dim(), d, space.q());
    total = (c == kSaturated || total + c < total) ? kSaturated : total + c;
  }
  check_budget(total, budget, "affine subspace");

  const std::size_t n = space.dim();
  const std::uint32_t q = space.q();
  std::vector<AffineSubspace> out;
  out.reserve(total);
  for (auto d : ds) {
    for (const auto& dir : enumerate_linear_subspaces(space, d, budget)) {
      std::vector<bool> is_pivot(n, false);
      for (auto p : dir.pivots()) is_pivot[p] = true;
      std::vector<std::size_t> free;
      for (std::size_t c = 0; c < n; ++c) {
        if (!is_pivot[c]) free.push_back(c);
      }
      // Bases zero on the pivots, in increasing point_index order: the
      // highest free coordinate is the most significant digit.
      Vec base(n, 0);
      std::vector<Elem> val(free.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < free.size(); ++i) base[free[i]] = val[i];
        out.push_back(affine_canon(space, dir.basis(), base));
        std::size_t i = 0;
        while (i < val.size() && ++val[i] == q) val[i++] = 0;
        if (i == val.size()) break;
      }
    }
  }
  return out;
}

std::vector<Vec> normalized_normals(const Space& space) {
  const std::size_t n = space.dim();
  const std::uint32_t q = space.q();
  std::vector<Vec> out;
  // Leading 1 at position lead, zeros before, anything after; lexicographic
  // order with coordinate 1 most significant puts larger `lead` first.
  for (std::size_t lead = n; lead-- > 0;) {
    Vec v(n, 0);
    v[lead] = 1;
    const std::size_t tail = n - lead - 1;
    std::vector<Elem> val(tail, 0);
    while (true) {
      for (std::size_t i = 0; i < tail; ++i) v[n - 1 - i] = val[i];
      out.push_back(v);
      std::size_t i = 0;
      while (i < tail && ++val[i] == q) val[i++] = 0;
      if (i == tail) break;
    }
  }
  return out;
}

std::vector<LinearSubspace> enumerate_linear_hyperplanes(const Space& space) {
  std::vector<LinearSubspace> out;
  const Field& f = space.field();
  for (const auto& normal : normalized_normals(space)) {
    Matrix row(0, space.dim());
    row.append_row(normal);
    out.push_back(LinearSubspace::span(space, kernel(f, row)));
  }
  return out;
}

// --- projective -------------------------------------------------------------

ProjectiveSubspace ProjectiveSubspace::make(const Space& homogeneous, const Matrix& generators) {
  return from_carrier(LinearSubspace::span(homogeneous, generators));
}

ProjectiveSubspace ProjectiveSubspace::from_carrier(LinearSubspace carrier) {
  if (carrier.dim() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "projective subspace needs a nonzero carrier");
  }
  return ProjectiveSubspace(std::move(carrier));
}

bool projective_disjoint(const ProjectiveSubspace& p, const ProjectiveSubspace& q) {
  require_same(p.space(), q.space());
  return p.carrier().dim() + q.carrier().dim() == sum(p.carrier(), q.carrier()).dim();
}

std::vector<ProjectiveSubspace> enumerate_projective_subspaces(
    const Space& homogeneous, std::span<const std::size_t> carrier_dims, std::uint64_t budget) {
  std::vector<std::size_t> ds(carrier_dims.begin(), carrier_dims.end());
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  std::uint64_t total = 0;
  for (auto d : ds) {
    if (d > homogeneous.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "carrier dimension exceeds n+1");
    }
    if (d == 0) continue;
    const auto c = gaussian_binomial(homogeneous.dim(), d, homogeneous.q());
    total = (c == kSaturated || total + c < total) ? kSaturated : total + c;
  }
  check_budget(total, budget, "projective subspace");
  std::vector<ProjectiveSubspace> out;
  for (auto d : ds) {
    if (d == 0) continue;
    for (auto& u : enumerate_linear_subspaces(homogeneous, d, budget)) {
      out.push_back(ProjectiveSubspace::from_carrier(std::move(u)));
    }
  }
  return out;
}

}  // namespace affbol
