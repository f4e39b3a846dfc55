#include "affbol/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "affbol/errors.hpp"

namespace affbol {

namespace {

constexpr std::size_t kMaxGroundNodes = std::size_t{1} << 15;
constexpr std::size_t kNaiveBoundLimit = 32;
constexpr std::size_t kMemoCapacity = std::size_t{1} << 22;

std::vector<std::size_t> resolve_dims(const DimFilter& f, std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  if (f.empty()) {
    for (std::size_t d = lo; d <= hi; ++d) out.push_back(d);
    return out;
  }
  for (auto d : f) {
    if (d < lo || d > hi) {
      throw Error(ErrorKind::DimensionMismatch,
                  "dimension filter value " + std::to_string(d) + " out of range");
    }
    out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Bitset point_bits(const AffineSubspace& s) {
  Bitset b(s.space().point_count());
  s.for_each_point([&](const Vec& v) { b.set(point_index(s.space(), v)); });
  return b;
}

// Nonzero vectors of the carrier.
Bitset point_bits(const ProjectiveSubspace& s) {
  Bitset b(s.space().point_count());
  affine_from_linear(s.carrier()).for_each_point([&](const Vec& v) {
    const auto idx = point_index(s.space(), v);
    if (idx != 0) b.set(idx);
  });
  return b;
}

template <class Subset>
void materialize_nodes(GroundSet<Subset>& g, const std::vector<bool>& allowed_a,
                       const std::vector<bool>& allowed_b, std::uint64_t budget) {
  std::vector<Bitset> bits;
  bits.reserve(g.subsets.size());
  for (const auto& s : g.subsets) bits.push_back(point_bits(s));
  for (std::size_t i = 0; i < g.subsets.size(); ++i) {
    if (!allowed_a[i]) continue;
    for (std::size_t j = 0; j < g.subsets.size(); ++j) {
      if (!allowed_b[j] || bits[i].intersects(bits[j])) continue;
      if (g.nodes.size() >= std::min<std::uint64_t>(budget, kMaxGroundNodes)) {
        throw Error(ErrorKind::BudgetExceeded, "ground set exceeds node budget");
      }
      PairNode<Subset> node;
      node.id = g.nodes.size();
      node.a_index = i;
      node.b_index = j;
      g.nodes.push_back(std::move(node));
    }
  }
  const std::size_t count = g.nodes.size();
  for (auto& p : g.nodes) {
    p.out = Bitset(count);
    for (const auto& r : g.nodes) {
      if (bits[p.a_index].intersects(bits[r.b_index])) p.out.set(r.id);
    }
  }
}

template <class Subset, class DimOf>
GroundSet<Subset> assemble(const Space& space, DimFilter dims_a, DimFilter dims_b,
                           std::vector<Subset> subsets, const std::vector<std::size_t>& da,
                           const std::vector<std::size_t>& db, DimOf dim_of,
                           std::uint64_t budget) {
  GroundSet<Subset> g{space, std::move(dims_a), std::move(dims_b), std::move(subsets), {}};
  std::vector<bool> allowed_a(g.subsets.size());
  std::vector<bool> allowed_b(g.subsets.size());
  for (std::size_t i = 0; i < g.subsets.size(); ++i) {
    const auto d = dim_of(g.subsets[i]);
    allowed_a[i] = std::binary_search(da.begin(), da.end(), d);
    allowed_b[i] = std::binary_search(db.begin(), db.end(), d);
  }
  materialize_nodes(g, allowed_a, allowed_b, budget);
  return g;
}

}  // namespace

template <class Subset>
std::vector<Bitset> GroundSet<Subset>::adjacency() const {
  std::vector<Bitset> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.out);
  return out;
}

template struct GroundSet<AffineSubspace>;
template struct GroundSet<ProjectiveSubspace>;

AffineGroundSet build_ground_set(const Space& space, const DimFilter& dims_a,
                                 const DimFilter& dims_b, std::uint64_t budget) {
  const auto da = resolve_dims(dims_a, 0, space.dim());
  const auto db = resolve_dims(dims_b, 0, space.dim());
  std::vector<std::size_t> all(da);
  all.insert(all.end(), db.begin(), db.end());
  auto subsets = enumerate_affine_subspaces(space, all, budget);
  return assemble(space, dims_a, dims_b, std::move(subsets), da, db,
                  [](const AffineSubspace& s) { return s.dim(); }, budget);
}

ProjectiveGroundSet build_projective_ground_set(const Space& homogeneous, const DimFilter& dims_a,
                                                const DimFilter& dims_b, std::uint64_t budget) {
  const std::size_t n = homogeneous.dim() - 1;
  const auto da = resolve_dims(dims_a, 0, n);
  const auto db = resolve_dims(dims_b, 0, n);
  std::vector<std::size_t> carrier_dims;
  for (auto d : da) carrier_dims.push_back(d + 1);
  for (auto d : db) carrier_dims.push_back(d + 1);
  auto subsets = enumerate_projective_subspaces(homogeneous, carrier_dims, budget);
  return assemble(homogeneous, dims_a, dims_b, std::move(subsets), da, db,
                  [](const ProjectiveSubspace& s) { return s.projective_dim(); }, budget);
}

std::vector<Bitset> symmetrize(const std::vector<Bitset>& out) {
  std::vector<Bitset> sym = out;
  for (std::size_t u = 0; u < out.size(); ++u) {
    out[u].for_each([&](std::size_t v) { sym[v].set(u); });
  }
  return sym;
}

std::size_t prune_bound(std::size_t current_k, const Bitset& candidates,
                        const std::vector<Bitset>& symmetric) {
  Bitset uncoloured = candidates;
  std::size_t colours = 0;
  while (!uncoloured.none()) {
    ++colours;
    Bitset avail = uncoloured;
    for (std::size_t v = avail.first(); v < avail.size(); v = avail.next(v + 1)) {
      uncoloured.reset(v);
      avail.subtract(symmetric[v]);
    }
  }
  return current_k + std::min(colours, candidates.count());
}

// --- symmetry reduction -----------------------------------------------------

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a; else parent[a] = b;
  }
};

std::vector<Matrix> general_linear_group(const Space& space) {
  const std::size_t n = space.dim();
  const std::uint64_t q = space.q();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n * n; ++i) total *= q;
  std::vector<Matrix> out;
  Matrix m(n, n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) {
        m(r, k) = static_cast<Elem>(c % q);
        c /= q;
      }
    }
    if (rank(space.field(), m) == n) out.push_back(m);
  }
  return out;
}

std::uint64_t group_work(const Space& space, bool affine, std::size_t items,
                         std::uint64_t cap) {
  // q^{n^2} candidate matrices (times q^n translations for the affine group).
  boost::multiprecision::cpp_int w = 1;
  const std::size_t n = space.dim();
  for (std::size_t i = 0; i < n * n + (affine ? n : 0); ++i) w *= space.q();
  w *= items;
  if (w > cap) {
    throw Error(ErrorKind::BudgetExceeded, "orbit computation exceeds the work budget");
  }
  return static_cast<std::uint64_t>(w);
}

Matrix image_rows(const Field& f, const Matrix& g, const Matrix& rows) {
  Matrix out(0, rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r) out.append_row(mat_vec(f, g, rows.row(r)));
  return out;
}

struct SubsetHash {
  std::size_t operator()(const AffineSubspace& s) const noexcept { return s.hash(); }
  std::size_t operator()(const ProjectiveSubspace& s) const noexcept { return s.carrier().hash(); }
};

template <class Subset, class ForEachMap>
std::vector<std::size_t> orbit_minima(const GroundSet<Subset>& g, ForEachMap&& for_each_map) {
  std::unordered_map<Subset, std::size_t, SubsetHash> index;
  for (std::size_t i = 0; i < g.subsets.size(); ++i) index.emplace(g.subsets[i], i);
  std::unordered_map<std::uint64_t, std::size_t> node_of;
  const std::uint64_t stride = g.subsets.size();
  for (const auto& n : g.nodes) node_of.emplace(n.a_index * stride + n.b_index, n.id);

  UnionFind uf(g.nodes.size());
  std::vector<std::size_t> perm(g.subsets.size());
  for_each_map([&](auto&& apply) {
    for (std::size_t i = 0; i < g.subsets.size(); ++i) {
      const auto it = index.find(apply(g.subsets[i]));
      if (it == index.end()) {
        // Dimension filters are group invariant, so images stay inside.
        throw InternalInconsistency("group image left the enumerated subsets");
      }
      perm[i] = it->second;
    }
    for (const auto& n : g.nodes) {
      const auto it = node_of.find(perm[n.a_index] * stride + perm[n.b_index]);
      if (it == node_of.end()) throw InternalInconsistency("group image of a node is not a node");
      uf.unite(n.id, it->second);
    }
  });
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (uf.find(i) == i) seeds.push_back(i);
  }
  return seeds;
}

}  // namespace

std::vector<std::size_t> canonical_seeds(const AffineGroundSet& g, std::uint64_t work_budget) {
  const Space& space = g.space;
  group_work(space, true, g.subsets.size() + g.nodes.size(), work_budget);
  const Field& f = space.field();
  const auto gl = general_linear_group(space);
  return orbit_minima(g, [&](auto&& visit) {
    for (const auto& m : gl) {
      for (std::uint64_t t = 0; t < space.point_count(); ++t) {
        const Vec shift = point_unindex(space, t);
        visit([&](const AffineSubspace& s) {
          const Vec base = vec_add(f, mat_vec(f, m, s.base()), shift);
          return affine_canon(space, image_rows(f, m, s.direction().basis()), base);
        });
      }
    }
  });
}

std::vector<std::size_t> canonical_seeds(const ProjectiveGroundSet& g,
                                         std::uint64_t work_budget) {
  const Space& space = g.space;
  group_work(space, false, g.subsets.size() + g.nodes.size(), work_budget);
  const Field& f = space.field();
  const auto gl = general_linear_group(space);
  return orbit_minima(g, [&](auto&& visit) {
    for (const auto& m : gl) {
      visit([&](const ProjectiveSubspace& s) {
        return ProjectiveSubspace::make(space, image_rows(f, m, s.carrier().basis()));
      });
    }
  });
}

// --- branch and bound -------------------------------------------------------

namespace {

struct Checkpoint {
  std::vector<std::size_t> exhausted;
  std::size_t best_m = 0;
  std::vector<std::size_t> witness;
};

nlohmann::json checkpoint_header(const Space& space, Geometry geometry, const DimFilter& da,
                                 const DimFilter& db, bool seeding, std::size_t node_count) {
  nlohmann::json j;
  j["dims_a"] = da;
  j["dims_b"] = db;
  j["format_version"] = 1;
  j["geometry"] = std::string(to_string(geometry));
  j["kind"] = "search-checkpoint";
  j["n"] = geometry == Geometry::Projective ? space.dim() - 1 : space.dim();
  j["node_count"] = node_count;
  j["q"] = space.q();
  j["seeding"] = seeding;
  return j;
}

std::optional<Checkpoint> load_checkpoint(const std::string& path, const nlohmann::json& header) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "checkpoint " + path + ": " + e.what());
  }
  if (!j.is_object() || j.value("format_version", 0) != 1) {
    throw Error(ErrorKind::VersionMismatch, "checkpoint " + path + " has an unsupported version");
  }
  for (const auto& [key, value] : header.items()) {
    if (!j.contains(key) || j[key] != value) {
      throw Error(ErrorKind::ContextMismatch,
                  "checkpoint " + path + " was written for different parameters (" + key + ")");
    }
  }
  Checkpoint cp;
  cp.exhausted = j.at("exhausted_seeds").get<std::vector<std::size_t>>();
  cp.best_m = j.at("best_m").get<std::size_t>();
  cp.witness = j.at("witness_nodes").get<std::vector<std::size_t>>();
  if (cp.witness.size() != cp.best_m) {
    throw Error(ErrorKind::ParseError, "checkpoint witness length differs from best_m");
  }
  return cp;
}

void save_checkpoint(const std::string& path, nlohmann::json header, const Checkpoint& cp) {
  std::vector<std::size_t> exhausted = cp.exhausted;
  std::sort(exhausted.begin(), exhausted.end());
  header["best_m"] = cp.best_m;
  header["exhausted_seeds"] = exhausted;
  header["witness_nodes"] = cp.witness;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << header.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

struct EngineOutput {
  std::size_t best_m = 0;
  std::vector<std::size_t> witness;
  bool optimal = true;
  SearchStats stats;
};

class Engine {
 public:
  Engine(const std::vector<Bitset>& out, const SearchLimits& limits)
      : out_(out), sym_(symmetrize(out)), limits_(limits) {}

  EngineOutput run(const std::vector<std::size_t>& seeds, const Checkpoint& resume,
                   const std::function<void(const Checkpoint&)>& on_progress) {
    best_.store(resume.best_m);
    best_witness_ = resume.witness;
    exhausted_ = resume.exhausted;
    std::vector<bool> skip(out_.size(), false);
    for (auto s : resume.exhausted) {
      if (s < skip.size()) skip[s] = true;
    }
    std::vector<std::size_t> todo;
    for (auto s : seeds) {
      if (!skip[s]) todo.push_back(s);
    }

    std::atomic<std::size_t> next{0};
    std::vector<SearchStats> per_worker(std::max(1U, limits_.workers));
    auto work = [&](SearchStats& stats) {
      WorkerState ws{&stats, {}};
      std::vector<std::size_t> prefix;
      while (!abort_.load()) {
        const std::size_t k = next.fetch_add(1);
        if (k >= todo.size()) break;
        const std::size_t s = todo[k];
        prefix.assign(1, s);
        dfs(out_[s], prefix, ws);
        if (abort_.load()) break;
        std::lock_guard lock(mu_);
        exhausted_.push_back(s);
        if (on_progress) on_progress({exhausted_, best_.load(), best_witness_});
      }
    };
    if (per_worker.size() == 1) {
      work(per_worker[0]);
    } else {
      std::vector<std::thread> pool;
      for (auto& st : per_worker) pool.emplace_back(work, std::ref(st));
      for (auto& t : pool) t.join();
    }

    EngineOutput res;
    res.best_m = best_.load();
    res.witness = best_witness_;
    res.optimal = !abort_.load();
    for (const auto& st : per_worker) {
      res.stats.nodes_expanded += st.nodes_expanded;
      res.stats.prunes_size += st.prunes_size;
      res.stats.prunes_coloring += st.prunes_coloring;
      res.stats.prunes_degree += st.prunes_degree;
      res.stats.prunes_memo += st.prunes_memo;
    }
    return res;
  }

 private:
  void record(const std::vector<std::size_t>& prefix) {
    std::lock_guard lock(mu_);
    if (prefix.size() > best_.load()) {
      best_witness_ = prefix;
      best_.store(prefix.size());
    }
  }

  struct WorkerState {
    SearchStats* stats;
    // Candidate set -> upper bound on how many more nodes can follow it.
    std::unordered_map<Bitset, std::size_t, BitsetHash> memo;
  };

  /// Largest r such that r candidates can have out-degrees (inside the
  /// candidate set) of at least r-1, r-2, ..., 0: the i-th element of any
  /// extension points at all later ones.
  static std::size_t degree_bound(const std::vector<std::pair<std::size_t, std::size_t>>& order) {
    std::size_t g = std::numeric_limits<std::size_t>::max();
    std::size_t r = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      g = std::min(g, order[i].first + i + 1);
      if (g < i + 1) break;
      r = i + 1;
    }
    return r;
  }

  void dfs(const Bitset& cand, std::vector<std::size_t>& prefix, WorkerState& ws) {
    SearchStats& stats = *ws.stats;
    if (limits_.max_expansions != 0 &&
        expansions_.fetch_add(1) >= limits_.max_expansions) {
      abort_.store(true);
      return;
    }
    ++stats.nodes_expanded;
    const std::size_t k = prefix.size();
    if (k > best_.load()) record(prefix);

    const std::size_t size = cand.count();
    if (size == 0) return;
    if (k + size <= best_.load()) {
      ++stats.prunes_size;
      return;
    }
    if (const auto it = ws.memo.find(cand); it != ws.memo.end() && k + it->second <= best_.load()) {
      ++stats.prunes_memo;
      return;
    }

    // Fail-first: high out-degree inside the candidate set first.
    std::vector<std::pair<std::size_t, std::size_t>> order;
    order.reserve(size);
    cand.for_each([&](std::size_t c) { order.emplace_back(out_[c].and_count(cand), c); });
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    if (k + degree_bound(order) <= best_.load()) {
      ++stats.prunes_degree;
      return;
    }
    if (size > kNaiveBoundLimit && prune_bound(k, cand, sym_) <= best_.load()) {
      ++stats.prunes_coloring;
      return;
    }
    for (const auto& [deg, c] : order) {
      if (abort_.load()) return;
      if (k + 1 + deg <= best_.load()) {
        ++stats.prunes_size;
        continue;
      }
      prefix.push_back(c);
      dfs(cand & out_[c], prefix, ws);
      prefix.pop_back();
    }
    if (abort_.load()) return;
    // Every extension of this candidate set is now known to end at or below
    // the current best.
    if (ws.memo.size() < kMemoCapacity) ws.memo.emplace(cand, best_.load() - k);
  }

  const std::vector<Bitset>& out_;
  std::vector<Bitset> sym_;
  SearchLimits limits_;
  std::atomic<std::size_t> best_{0};
  std::atomic<std::uint64_t> expansions_{0};
  std::atomic<bool> abort_{false};
  std::mutex mu_;
  std::vector<std::size_t> best_witness_;
  std::vector<std::size_t> exhausted_;
};

template <class Subset>
SearchResult<Subset> run_search(const GroundSet<Subset>& g, const SearchLimits& limits,
                                Geometry geometry) {
  if (g.nodes.empty()) throw Error(ErrorKind::Usage, "empty ground set");
  const auto start = std::chrono::steady_clock::now();
  SearchResult<Subset> res;

  std::vector<std::size_t> seeds;
  bool fallback = false;
  if (limits.use_seeds) {
    try {
      seeds = canonical_seeds(g);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      fallback = true;
    }
  }
  if (seeds.empty()) {
    seeds.resize(g.nodes.size());
    std::iota(seeds.begin(), seeds.end(), 0);
  }

  const auto header = checkpoint_header(g.space, geometry, g.dims_a, g.dims_b,
                                        limits.use_seeds && !fallback, g.nodes.size());
  Checkpoint resume;
  if (limits.checkpoint_path) {
    if (auto cp = load_checkpoint(*limits.checkpoint_path, header)) resume = std::move(*cp);
    for (auto id : resume.witness) {
      if (id >= g.nodes.size()) throw Error(ErrorKind::ParseError, "checkpoint node id out of range");
    }
  }

  const auto adj = g.adjacency();
  Engine engine(adj, limits);
  std::function<void(const Checkpoint&)> progress;
  if (limits.checkpoint_path) {
    progress = [&](const Checkpoint& cp) { save_checkpoint(*limits.checkpoint_path, header, cp); };
  }
  auto out = engine.run(seeds, resume, progress);

  res.best_m = out.best_m;
  res.witness_nodes = out.witness;
  res.optimal = out.optimal;
  res.stats = out.stats;
  res.stats.ground_nodes = g.nodes.size();
  res.stats.seeds_total = seeds.size();
  res.stats.seeds_resumed = resume.exhausted.size();
  res.stats.seeding_fallback = fallback;
  res.witness.mode = Mode::Skew;
  for (auto id : out.witness) res.witness.pairs.emplace_back(g.a(id), g.b(id));

  if (!verify_cross_intersecting(res.witness).empty()) {
    throw InternalInconsistency("search witness fails the skew verifier");
  }
  res.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

bool admits(const DimFilter& f, std::size_t d) {
  return f.empty() || std::find(f.begin(), f.end(), d) != f.end();
}

}  // namespace

AffineSearchResult search_max(const AffineGroundSet& ground, const SearchLimits& limits) {
  auto res = run_search(ground, limits, Geometry::Affine);
  const Space& space = ground.space;
  const std::uint64_t q = space.q();
  res.lower_bound = (space.point_count() - 1) / (q - 1);
  if (q >= 3) res.upper_bound = space.point_count() + 1;
  if (res.optimal) {
    if (res.upper_bound && res.best_m > *res.upper_bound) {
      throw InternalInconsistency("exact search exceeded q^n + 1");
    }
    const std::size_t h = space.dim() - 1;
    if (admits(ground.dims_a, h) && admits(ground.dims_b, h) && res.best_m < res.lower_bound) {
      throw InternalInconsistency("exact search fell below the hyperplane construction");
    }
  }
  return res;
}

ProjectiveSearchResult search_max(const ProjectiveGroundSet& ground, const SearchLimits& limits) {
  auto res = run_search(ground, limits, Geometry::Projective);
  const std::size_t n = ground.space.dim() - 1;
  res.upper_bound = (std::uint64_t{1} << (n + 1)) - 2;
  return res;
}

ProjectiveSearchResult search_projective(const Space& homogeneous, const SearchLimits& limits,
                                         const DimFilter& dims_a, const DimFilter& dims_b) {
  if (homogeneous.dim() < 2) {
    throw Error(ErrorKind::DimensionMismatch, "PG(n, q) needs n >= 1");
  }
  return search_max(build_projective_ground_set(homogeneous, dims_a, dims_b), limits);
}

}  // namespace affbol
