#pragma once

// Brute-force reference computations used only by the tests. They work on
// explicit point sets and exhaustive enumeration, never on the library's
// canonical forms or search kernel.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "affbol/bitset.hpp"
#include "affbol/field.hpp"
#include "affbol/geometry.hpp"
#include "affbol/linalg.hpp"

namespace oracle {

using affbol::Elem;
using affbol::Matrix;
using affbol::Space;
using affbol::Vec;
using PointSet = std::set<std::uint64_t>;

/// Schoolbook product of two polynomials over F_r (base-r digit encoding,
/// constant term least significant) reduced modulo a monic modulus.
inline Elem poly_mul(Elem a, Elem b, std::uint32_t r, std::uint32_t alpha,
                     const std::vector<std::uint32_t>& modulus) {
  std::vector<std::uint32_t> da(alpha), db(alpha), prod(2 * alpha, 0);
  for (std::uint32_t i = 0; i < alpha; ++i) {
    da[i] = a % r;
    a /= r;
    db[i] = b % r;
    b /= r;
  }
  for (std::uint32_t i = 0; i < alpha; ++i) {
    for (std::uint32_t j = 0; j < alpha; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % r;
  }
  for (std::uint32_t d = 2 * alpha - 1; d >= alpha; --d) {
    const std::uint32_t c = prod[d];
    if (c == 0) continue;
    for (std::uint32_t k = 0; k <= alpha; ++k) {
      prod[d - alpha + k] = (prod[d - alpha + k] + (r - c) * modulus[k] % r) % r;
    }
  }
  Elem out = 0;
  for (std::uint32_t i = alpha; i-- > 0;) out = out * r + prod[i];
  return out;
}

inline std::uint64_t index_of(const Space& s, const Vec& v) {
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * s.q() + v[i];
  return idx;
}

inline Vec vector_of(const Space& s, std::uint64_t idx) {
  Vec v(s.dim());
  for (auto& x : v) {
    x = static_cast<Elem>(idx % s.q());
    idx /= s.q();
  }
  return v;
}

/// All points base + Σ c_r g_r over every coefficient vector (generators may
/// be dependent).
inline PointSet coset_points(const Space& s, const Matrix& gens, const Vec& base) {
  const auto& f = s.field();
  PointSet out;
  std::vector<Elem> c(gens.rows(), 0);
  while (true) {
    Vec p = base;
    for (std::size_t r = 0; r < gens.rows(); ++r) {
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = f.add(p[k], f.mul(c[r], gens(r, k)));
    }
    out.insert(index_of(s, p));
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == s.q()) c[i++] = 0;
    if (i == c.size()) break;
  }
  return out;
}

inline PointSet points_of(const affbol::AffineSubspace& a) {
  return coset_points(a.space(), a.direction().basis(), a.base());
}

inline PointSet intersection(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

/// Nonzero vectors of a linear span.
inline PointSet nonzero_span(const Space& s, const Matrix& gens) {
  auto pts = coset_points(s, gens, Vec(s.dim(), 0));
  pts.erase(0);
  return pts;
}

/// Vectors x with m x = b, by trying all q^n candidates.
inline std::vector<Vec> all_solutions(const Space& s, const Matrix& m, const Vec& b) {
  std::vector<Vec> out;
  const auto& f = s.field();
  for (std::uint64_t idx = 0; idx < s.point_count(); ++idx) {
    const Vec x = vector_of(s, idx);
    bool ok = true;
    for (std::size_t r = 0; r < m.rows() && ok; ++r) {
      Elem acc = 0;
      for (std::size_t c = 0; c < m.cols(); ++c) acc = f.add(acc, f.mul(m(r, c), x[c]));
      ok = acc == b[r];
    }
    if (ok) out.push_back(x);
  }
  return out;
}

/// Number of nonempty point subsets S of F_q^n with S - s0 closed under
/// addition and scaling, split by size. Exhaustive over 2^{q^n} subsets.
inline std::map<std::size_t, std::size_t> affine_subsets_by_size(const Space& s) {
  const auto& f = s.field();
  const std::uint64_t N = s.point_count();
  std::map<std::size_t, std::size_t> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << N); ++mask) {
    std::vector<Vec> pts;
    for (std::uint64_t i = 0; i < N; ++i) {
      if (mask >> i & 1) pts.push_back(vector_of(s, i));
    }
    const Vec s0 = pts.front();
    auto in = [&](const Vec& v) { return (mask >> index_of(s, v)) & 1; };
    bool closed = true;
    for (std::size_t i = 0; i < pts.size() && closed; ++i) {
      const Vec di = affbol::vec_sub(f, pts[i], s0);
      for (Elem lam = 0; lam < s.q() && closed; ++lam) {
        for (std::size_t j = 0; j < pts.size() && closed; ++j) {
          Vec v = pts[j];
          for (std::size_t k = 0; k < v.size(); ++k) v[k] = f.add(v[k], f.mul(lam, di[k]));
          closed = in(v);
        }
      }
    }
    if (closed) ++out[pts.size()];
  }
  return out;
}

/// Longest sequence p_1..p_k with p_i -> p_j for all i < j, by exhaustive
/// recursion over every node as a first element, memoised on the candidate
/// set (the best continuation depends only on it).
class LongestSequence {
 public:
  explicit LongestSequence(std::vector<affbol::Bitset> out) : out_(std::move(out)) {}

  std::size_t solve() {
    std::size_t best = 0;
    for (std::size_t s = 0; s < out_.size(); ++s) best = std::max(best, 1 + extend(out_[s]));
    return best;
  }

 private:
  std::size_t extend(const affbol::Bitset& cand) {
    if (cand.none()) return 0;
    if (auto it = memo_.find(cand); it != memo_.end()) return it->second;
    std::size_t best = 0;
    cand.for_each([&](std::size_t c) { best = std::max(best, 1 + extend(cand & out_[c])); });
    memo_.emplace(cand, best);
    return best;
  }

  std::vector<affbol::Bitset> out_;
  std::unordered_map<affbol::Bitset, std::size_t, affbol::BitsetHash> memo_;
};

/// Plain enumeration of every valid sequence (no memo), for tiny ground sets.
inline std::size_t longest_sequence_naive(const std::vector<affbol::Bitset>& out) {
  std::size_t best = 0;
  std::vector<std::size_t> seq;
  std::function<void()> rec = [&] {
    best = std::max(best, seq.size());
    for (std::size_t c = 0; c < out.size(); ++c) {
      bool ok = std::all_of(seq.begin(), seq.end(), [&](std::size_t p) { return out[p].test(c); });
      if (!ok) continue;
      seq.push_back(c);
      rec();
      seq.pop_back();
    }
  };
  rec();
  return best;
}

// --- random generators ------------------------------------------------------

inline Vec random_vec(std::mt19937_64& rng, const Space& s) {
  std::uniform_int_distribution<Elem> d(0, s.q() - 1);
  Vec v(s.dim());
  for (auto& x : v) x = d(rng);
  return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, const Space& s, std::size_t rows) {
  Matrix m(0, s.dim());
  for (std::size_t r = 0; r < rows; ++r) m.append_row(random_vec(rng, s));
  return m;
}

struct RawCoset {
  Matrix gens;
  Vec base;
};

inline RawCoset random_raw_coset(std::mt19937_64& rng, const Space& s) {
  std::uniform_int_distribution<std::size_t> d(0, s.dim());
  return {random_matrix(rng, s, d(rng)), random_vec(rng, s)};
}

}  // namespace oracle
