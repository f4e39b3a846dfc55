#include "affbol/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "affbol/certificate.hpp"
#include "affbol/construction.hpp"
#include "affbol/errors.hpp"
#include "affbol/families.hpp"
#include "affbol/io.hpp"
#include "affbol/search.hpp"

#ifndef AFFBOL_VERSION
#define AFFBOL_VERSION "0.0.0"
#endif

namespace affbol::cli {

using nlohmann::json;

namespace {

struct Outcome {
  int code = kOk;
  std::string verdict;
  json result;
  std::string summary;
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::QEqualsTwo:
    case ErrorKind::InvalidP:
    case ErrorKind::NotVerified:
      return kFailed;
    case ErrorKind::BudgetExceeded:
    case ErrorKind::BudgetExhausted:
      return kBudget;
    default:
      return kUsage;
  }
}

json violations_json(const std::vector<Violation>& vs) {
  json arr = json::array();
  for (const auto& v : vs) {
    json o{{"i", v.i}, {"j", v.j}, {"kind", std::string(to_string(v.kind))}};
    if (v.witness) o["witness"] = *v.witness;
    arr.push_back(std::move(o));
  }
  return arr;
}

std::string rational_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Usage, "cannot write " + path);
  out << data;
}

Space make_space(std::uint32_t q, std::size_t n) { return Space::make(Field::make(q), n); }

// --- subcommands ------------------------------------------------------------

Outcome do_verify(const std::string& path, const std::optional<std::string>& mode_flag) {
  FamilyFile file = load_family(path);
  if (mode_flag) {
    const Mode mode = *mode_flag == "symmetric" ? Mode::Symmetric : Mode::Skew;
    std::visit([&](auto& f) { f.mode = mode; }, file.family);
  }
  Outcome o;
  o.result["geometry"] = std::string(to_string(file.geometry()));
  o.result["mode"] = std::string(to_string(file.mode()));
  o.result["m"] = file.size();
  if (file.space) {
    o.result["n"] = file.file_n();
    o.result["q"] = file.space->q();
  }
  std::vector<Violation> vs;
  if (const auto* lin = std::get_if<LinearFamily>(&file.family)) {
    const auto lp = LinearPairFamily::from(*lin);
    vs = verify_linear_pairs(lp);
    if (lp.uniform) {
      o.result["uniform"] = json{{"r", lp.uniform->first},
                                 {"s", lp.uniform->second},
                                 {"bound", uniform_bound(lp.uniform->first, lp.uniform->second).str()}};
    }
  } else {
    vs = std::visit([](const auto& f) { return verify_cross_intersecting(f); }, file.family);
  }
  o.result["ok"] = vs.empty();
  o.result["violations"] = violations_json(vs);
  o.code = vs.empty() ? kOk : kFailed;
  o.verdict = vs.empty() ? "ok" : "violations";
  o.summary = "verify: " + o.verdict + " (m = " + std::to_string(file.size()) + ", " +
              std::to_string(vs.size()) + " violations)";
  return o;
}

Outcome do_construct(std::size_t n, std::uint32_t q, const std::optional<std::string>& out_path) {
  const Space space = make_space(q, n);
  auto c = build_construction(space);
  const FamilyFile file = make_family_file(space, c.family);
  Outcome o;
  o.result["m"] = c.family.size();
  o.result["expected_m"] = (space.point_count() - 1) / (q - 1);
  o.result["verified"] = verify_cross_intersecting(c.family).empty();
  json shifts = json::array();
  for (const auto& b : c.shifts) shifts.push_back(b);
  o.result["shifts"] = std::move(shifts);
  json normals = json::array();
  for (const auto& v : normalized_normals(space)) normals.push_back(v);
  o.result["normals"] = std::move(normals);
  if (out_path) {
    write_file(*out_path, serialize_family(file));
    o.result["output"] = *out_path;
  } else {
    o.result["family"] = family_to_json(file);
  }
  o.verdict = "ok";
  o.summary = "construct: m = " + std::to_string(c.family.size());
  return o;
}

Outcome do_certify(const std::string& path, const std::optional<std::uint32_t>& p_flag) {
  const FamilyFile file = load_family(path);
  const auto* fam = std::get_if<AffineFamily>(&file.family);
  if (fam == nullptr) throw Error(ErrorKind::Usage, "certify requires an affine family");
  const Space& space = *file.space;
  const std::uint32_t p = p_flag ? *p_flag : default_certificate_prime(space.q());
  const auto cert = build_certificate(space, *fam, p);
  const auto rows = certificate_rows(cert);
  const std::size_t rk = rank_crosscheck(rows, p);
  const bool same_matrix = evaluation_matrix_from_intersections(*fam, p) == cert.matrix;

  Outcome o;
  o.result["q"] = cert.q;
  o.result["n"] = cert.n;
  o.result["p"] = cert.p;
  o.result["m"] = cert.m;
  o.result["valid"] = cert.valid;
  o.result["implied_bound"] = cert.implied_bound;
  o.result["bound_holds"] = cert.m <= cert.implied_bound;
  o.result["rank"] = rk;
  o.result["rank_equals_m"] = rk == cert.m;
  o.result["intersection_crosscheck"] = same_matrix;
  if (cert.m <= 64) o.result["matrix"] = cert.matrix;
  if (cert.valid && (rk != cert.m || !same_matrix)) {
    throw InternalInconsistency("valid certificate failed its rank or intersection cross-check");
  }
  o.code = cert.valid ? kOk : kFailed;
  o.verdict = cert.valid ? "valid" : "invalid";
  o.summary = "certify: " + o.verdict + " (p = " + std::to_string(p) + ", m = " +
              std::to_string(cert.m) + " <= " + std::to_string(cert.implied_bound) + ")";
  return o;
}

struct SearchArgs {
  std::size_t n = 1;
  std::uint32_t q = 2;
  std::string geometry = "affine";
  DimFilter dims_a;
  DimFilter dims_b;
  std::uint64_t budget = 0;
  unsigned workers = 1;
  std::optional<std::string> checkpoint;
  std::optional<std::string> out_path;
  bool no_seeding = false;
  bool timing = false;
};

template <class Result>
json stats_json(const Result& r, bool timing) {
  json s{{"nodes_expanded", r.stats.nodes_expanded},
         {"prunes_size", r.stats.prunes_size},
         {"prunes_coloring", r.stats.prunes_coloring},
         {"prunes_degree", r.stats.prunes_degree},
         {"prunes_memo", r.stats.prunes_memo},
         {"ground_nodes", r.stats.ground_nodes},
         {"seeds_total", r.stats.seeds_total},
         {"seeds_resumed", r.stats.seeds_resumed},
         {"seeding_fallback", r.stats.seeding_fallback}};
  if (timing) s["wall_seconds"] = r.stats.wall_seconds;
  return s;
}

Outcome do_search(const SearchArgs& a) {
  SearchLimits limits;
  limits.max_expansions = a.budget;
  limits.workers = std::max(1U, a.workers);
  limits.use_seeds = !a.no_seeding;
  limits.checkpoint_path = a.checkpoint;

  Outcome o;
  FamilyFile witness;
  std::size_t best = 0;
  bool optimal = false;
  if (a.geometry == "affine") {
    const Space space = make_space(a.q, a.n);
    const auto ground = build_ground_set(space, a.dims_a, a.dims_b);
    const auto r = search_max(ground, limits);
    best = r.best_m;
    optimal = r.optimal;
    o.result["stats"] = stats_json(r, a.timing);
    json bounds{{"lower", r.lower_bound}};
    if (r.upper_bound) bounds["upper"] = *r.upper_bound;
    o.result["bounds"] = bounds;
    if (r.upper_bound) {
      o.result["sandwich_holds"] = r.lower_bound <= best && best <= *r.upper_bound;
    } else {
      o.result["note"] = "q = 2: no upper bound is known; value reported as a finding";
    }
    witness = make_family_file(space, r.witness);
  } else if (a.geometry == "projective") {
    const Space homogeneous = make_space(a.q, a.n + 1);
    const auto r = search_projective(homogeneous, limits, a.dims_a, a.dims_b);
    best = r.best_m;
    optimal = r.optimal;
    o.result["stats"] = stats_json(r, a.timing);
    o.result["conjecture"] = json{{"bound", *r.upper_bound},
                                  {"exceeds", best > *r.upper_bound},
                                  {"counterexample_candidate", best > *r.upper_bound}};
    witness = make_family_file(homogeneous, r.witness);
  } else {
    throw Error(ErrorKind::Usage, "unknown geometry '" + a.geometry + "'");
  }
  o.result["best_m"] = best;
  o.result["optimal"] = optimal;
  o.result["witness_verified"] =
      std::visit([](const auto& f) { return verify_cross_intersecting(f).empty(); }, witness.family);
  if (a.out_path) {
    write_file(*a.out_path, serialize_family(witness));
    o.result["output"] = *a.out_path;
  }
  o.result["witness"] = family_to_json(witness);
  o.code = optimal ? kOk : kBudget;
  o.verdict = optimal ? "optimal" : "budget_exhausted";
  o.summary = "search: best_m = " + std::to_string(best) + (optimal ? " (optimal)" : " (incomplete)");
  return o;
}

Outcome do_enumerate(std::size_t n, std::uint32_t q, DimFilter dims, bool list) {
  const Space space = make_space(q, n);
  if (dims.empty()) {
    for (std::size_t d = 0; d <= n; ++d) dims.push_back(d);
  }
  const auto subs = enumerate_affine_subspaces(space, dims);
  Outcome o;
  json counts = json::array();
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  bool all_match = true;
  for (auto d : dims) {
    const auto found = std::count_if(subs.begin(), subs.end(), [&](const auto& s) { return s.dim() == d; });
    const auto expected = affine_subspace_count(n, d, q);
    all_match = all_match && static_cast<std::uint64_t>(found) == expected;
    counts.push_back(json{{"dim", d},
                          {"count", found},
                          {"expected", expected},
                          {"linear_subspaces", gaussian_binomial(n, d, q)}});
  }
  o.result["counts"] = std::move(counts);
  o.result["total"] = subs.size();
  o.result["counts_match_formula"] = all_match;
  if (list) {
    json arr = json::array();
    for (const auto& s : subs) {
      json rows = json::array();
      for (std::size_t r = 0; r < s.direction().basis().rows(); ++r) {
        rows.push_back(s.direction().basis().row_vec(r));
      }
      arr.push_back(json{{"base", s.base()}, {"basis", std::move(rows)}});
    }
    o.result["subspaces"] = std::move(arr);
  }
  o.code = all_match ? kOk : kInternal;
  o.verdict = all_match ? "ok" : "count_mismatch";
  o.summary = "enumerate: " + std::to_string(subs.size()) + " affine subspaces";
  return o;
}

Outcome do_sum(const std::string& path) {
  const FamilyFile file = load_family(path);
  const auto* fam = std::get_if<SetFamily>(&file.family);
  if (fam == nullptr) throw Error(ErrorKind::Usage, "sum requires a sets family");
  const Rational s = bollobas_sum(*fam);
  Outcome o;
  o.result["m"] = fam->size();
  o.result["sum"] = rational_string(s);
  o.result["at_most_one"] = s <= 1;
  if (s > 1) throw InternalInconsistency("Bollobas sum exceeds 1 on a verified family");
  o.verdict = "ok";
  o.summary = "sum: " + rational_string(s);
  return o;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-intersecting families of affine and projective subspaces over F_q", "affbol"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Include wall time in the report");

  json params;
  std::string family_path;
  std::optional<std::string> mode_flag;
  auto* verify = app.add_subcommand("verify", "Check the cross-intersecting conditions");
  verify->add_option("family", family_path, "Family file")->required();
  verify->add_option("--mode", mode_flag, "Override the file's mode")
      ->check(CLI::IsMember({"skew", "symmetric"}));

  std::size_t n = 1;
  std::uint32_t q = 2;
  std::optional<std::string> out_path;
  auto* construct = app.add_subcommand("construct", "Build the hyperplane construction");
  construct->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);
  construct->add_option("--q", q, "Field order")->required();
  construct->add_option("-o,--output", out_path, "Write the family file here");

  std::optional<std::uint32_t> p_flag;
  auto* certify = app.add_subcommand("certify", "Build the polynomial-method evaluation certificate");
  certify->add_option("family", family_path, "Affine family file")->required();
  certify->add_option("--p", p_flag, "Prime divisor of q - 1 (default: smallest)");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Exact branch-and-bound search for m(n,q)");
  search->add_option("--n", sa.n, "Dimension (projective dimension for --geometry projective)")
      ->required()
      ->check(CLI::PositiveNumber);
  search->add_option("--q", sa.q, "Field order")->required();
  search->add_option("--geometry", sa.geometry)->check(CLI::IsMember({"affine", "projective"}));
  search->add_option("--dims-a", sa.dims_a, "Allowed dimensions of A_i")->delimiter(',');
  search->add_option("--dims-b", sa.dims_b, "Allowed dimensions of B_i")->delimiter(',');
  search->add_option("--budget", sa.budget, "Maximum node expansions (0 = unlimited)");
  search->add_option("--workers", sa.workers, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("--checkpoint", sa.checkpoint, "Checkpoint file (resumed if present)");
  search->add_flag("--no-seeding", sa.no_seeding, "Search all first elements, no orbit reduction");
  search->add_option("-o,--output", sa.out_path, "Write the witness family here");

  DimFilter enum_dims;
  bool list = false;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate affine subspaces");
  enumerate->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--q", q, "Field order")->required();
  enumerate->add_option("--dims", enum_dims, "Dimensions to enumerate")->delimiter(',');
  enumerate->add_flag("--list", list, "Include every subspace in the report");

  auto* sum = app.add_subcommand("sum", "Bollobas sum of a set family");
  sum->add_option("family", family_path, "Sets family file")->required();

  std::vector<std::string> argv_store{"affbol"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  json report;
  report["tool_version"] = AFFBOL_VERSION;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    report["command"] = subs.empty() ? "" : subs.front()->get_name();
    report["error"] = json{{"kind", "Usage"}, {"message", e.what()}};
    report["verdict"] = "error";
    out << serialize_json(report);
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const auto* cmd = app.get_subcommands().front();
  report["command"] = cmd->get_name();
  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    Outcome o;
    if (cmd == verify) {
      params = json{{"family", family_path}};
      if (mode_flag) params["mode"] = *mode_flag;
      o = do_verify(family_path, mode_flag);
    } else if (cmd == construct) {
      params = json{{"n", n}, {"q", q}};
      if (out_path) params["output"] = *out_path;
      o = do_construct(n, q, out_path);
    } else if (cmd == certify) {
      params = json{{"family", family_path}};
      if (p_flag) params["p"] = *p_flag;
      o = do_certify(family_path, p_flag);
    } else if (cmd == search) {
      sa.timing = timing;
      params = json{{"n", sa.n},
                    {"q", sa.q},
                    {"geometry", sa.geometry},
                    {"dims_a", sa.dims_a},
                    {"dims_b", sa.dims_b},
                    {"budget", sa.budget},
                    {"workers", sa.workers},
                    {"seeding", !sa.no_seeding}};
      if (sa.checkpoint) params["checkpoint"] = *sa.checkpoint;
      o = do_search(sa);
    } else if (cmd == enumerate) {
      params = json{{"n", n}, {"q", q}, {"dims", enum_dims}, {"list", list}};
      o = do_enumerate(n, q, enum_dims, list);
    } else {
      params = json{{"family", family_path}};
      o = do_sum(family_path);
    }
    report["result"] = std::move(o.result);
    report["verdict"] = o.verdict;
    code = o.code;
    err << o.summary << "\n";
  } catch (const Error& e) {
    report["error"] = json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    report["verdict"] = "error";
    code = exit_code_for(e.kind());
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
  } catch (const InternalInconsistency& e) {
    report["error"] = json{{"kind", "InternalInconsistency"}, {"message", e.what()}};
    report["verdict"] = "error";
    code = kInternal;
    err << "fatal: " << e.what() << "\n";
  }
  report["parameters"] = std::move(params);
  if (timing) {
    report["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  out << serialize_json(report);
  return code;
}

}  // namespace affbol::cli
