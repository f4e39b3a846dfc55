#include "affbol/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "affbol/errors.hpp"

namespace affbol {

using nlohmann::json;

Geometry FamilyFile::geometry() const noexcept {
  switch (family.index()) {
    case 0: return Geometry::Sets;
    case 1: return Geometry::Linear;
    case 2: return Geometry::Affine;
    default: return Geometry::Projective;
  }
}

Mode FamilyFile::mode() const noexcept {
  return std::visit([](const auto& f) { return f.mode; }, family);
}

std::size_t FamilyFile::size() const noexcept {
  return std::visit([](const auto& f) { return f.size(); }, family);
}

std::size_t FamilyFile::file_n() const {
  if (!space) return 0;
  return geometry() == Geometry::Projective ? space->dim() - 1 : space->dim();
}

FamilyFile make_family_file(SetFamily fam) { return {std::nullopt, std::move(fam)}; }
FamilyFile make_family_file(const Space& space, LinearFamily fam) { return {space, std::move(fam)}; }
FamilyFile make_family_file(const Space& space, AffineFamily fam) { return {space, std::move(fam)}; }
FamilyFile make_family_file(const Space& homogeneous, ProjectiveFamily fam) {
  return {homogeneous, std::move(fam)};
}

namespace {

json rows_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vec(r));
  return rows;
}

json subset_json(const FiniteSet& s) { return s.elements(); }
json subset_json(const LinearSubspace& s) { return json{{"basis", rows_json(s.basis())}}; }
json subset_json(const ProjectiveSubspace& s) {
  return json{{"basis", rows_json(s.carrier().basis())}};
}
json subset_json(const AffineSubspace& s) {
  return json{{"base", s.base()}, {"basis", rows_json(s.direction().basis())}};
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail("unknown field '" + key + "' in " + where);
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail("missing field '" + std::string(key) + "' in " + where);
  return obj.at(key);
}

std::int64_t integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail("expected an integer in " + where);
  return v.get<std::int64_t>();
}

Vec vector_of(const json& v, const Space& space, const std::string& where) {
  if (!v.is_array()) fail("expected an array in " + where);
  if (v.size() != space.dim()) {
    fail("vector of length " + std::to_string(v.size()) + " in " + where + ", expected " +
         std::to_string(space.dim()));
  }
  Vec out;
  for (const auto& x : v) {
    const auto e = integer(x, where);
    if (e < 0 || e >= static_cast<std::int64_t>(space.q())) {
      fail("field element " + std::to_string(e) + " out of range in " + where);
    }
    out.push_back(static_cast<Elem>(e));
  }
  return out;
}

Matrix matrix_of(const json& v, const Space& space, const std::string& where) {
  if (!v.is_array()) fail("expected a list of rows in " + where);
  Matrix m(0, space.dim());
  for (const auto& row : v) m.append_row(vector_of(row, space, where));
  return m;
}

FiniteSet set_of(const json& v, const std::string& where) {
  if (!v.is_array()) fail("expected an element list in " + where);
  std::vector<std::int64_t> elems;
  for (const auto& x : v) {
    const auto e = integer(x, where);
    if (e < 0) fail("negative element in " + where);
    elems.push_back(e);
  }
  return FiniteSet(std::move(elems));
}

AffineSubspace affine_of(const json& v, const Space& space, const std::string& where) {
  if (!v.is_object()) fail("expected an object in " + where);
  reject_unknown(v, {"base", "basis"}, where);
  return affine_canon(space, matrix_of(member(v, "basis", where), space, where),
                      vector_of(member(v, "base", where), space, where));
}

LinearSubspace linear_of(const json& v, const Space& space, const std::string& where) {
  if (!v.is_object()) fail("expected an object in " + where);
  reject_unknown(v, {"basis"}, where);
  return LinearSubspace::span(space, matrix_of(member(v, "basis", where), space, where));
}

ProjectiveSubspace projective_of(const json& v, const Space& space, const std::string& where) {
  auto carrier = linear_of(v, space, where);
  if (carrier.dim() == 0) fail("empty projective subspace in " + where);
  return ProjectiveSubspace::from_carrier(std::move(carrier));
}

template <class Subset, class Read>
PairFamily<Subset> read_pairs(const json& pairs, Mode mode, Read&& read) {
  if (!pairs.is_array()) fail("'pairs' must be an array");
  PairFamily<Subset> fam;
  fam.mode = mode;
  std::size_t i = 0;
  for (const auto& p : pairs) {
    ++i;
    const std::string where = "pair " + std::to_string(i);
    if (!p.is_object()) fail("expected an object for " + where);
    reject_unknown(p, {"A", "B"}, where);
    fam.pairs.emplace_back(read(member(p, "A", where), where + ".A"),
                           read(member(p, "B", where), where + ".B"));
  }
  return fam;
}

Geometry geometry_from(const std::string& s) {
  if (s == "sets") return Geometry::Sets;
  if (s == "linear") return Geometry::Linear;
  if (s == "affine") return Geometry::Affine;
  if (s == "projective") return Geometry::Projective;
  fail("unknown geometry '" + s + "'");
}

Mode mode_from(const std::string& s) {
  if (s == "skew") return Mode::Skew;
  if (s == "symmetric") return Mode::Symmetric;
  fail("unknown mode '" + s + "'");
}

}  // namespace

json family_to_json(const FamilyFile& file) {
  json j;
  j["format_version"] = kFormatVersion;
  j["geometry"] = std::string(to_string(file.geometry()));
  j["mode"] = std::string(to_string(file.mode()));
  if (file.space) {
    j["n"] = file.file_n();
    j["q"] = file.space->q();
  }
  json pairs = json::array();
  std::visit(
      [&](const auto& fam) {
        for (const auto& [a, b] : fam.pairs) {
          pairs.push_back(json{{"A", subset_json(a)}, {"B", subset_json(b)}});
        }
      },
      file.family);
  j["pairs"] = std::move(pairs);
  return j;
}

FamilyFile family_from_json(const json& j) {
  if (!j.is_object()) fail("family file must be a JSON object");
  if (!j.contains("format_version") || !j["format_version"].is_number_integer()) {
    fail("missing integer 'format_version'");
  }
  if (j["format_version"].get<std::int64_t>() != kFormatVersion) {
    throw Error(ErrorKind::VersionMismatch,
                "format_version " + j["format_version"].dump() + " is not supported (expected " +
                    std::to_string(kFormatVersion) + ")");
  }
  const auto& g = member(j, "geometry", "family file");
  const auto& md = member(j, "mode", "family file");
  if (!g.is_string() || !md.is_string()) fail("'geometry' and 'mode' must be strings");
  const Geometry geometry = geometry_from(g.get<std::string>());
  const Mode mode = mode_from(md.get<std::string>());
  const json& pairs = member(j, "pairs", "family file");

  if (geometry == Geometry::Sets) {
    reject_unknown(j, {"format_version", "geometry", "mode", "pairs"}, "family file");
    return make_family_file(read_pairs<FiniteSet>(pairs, mode, [](const json& v, const std::string& w) {
      return set_of(v, w);
    }));
  }

  reject_unknown(j, {"format_version", "geometry", "mode", "n", "pairs", "q"}, "family file");
  const auto q = integer(member(j, "q", "family file"), "q");
  const auto n = integer(member(j, "n", "family file"), "n");
  if (q < 2 || q > 0xffffffffLL) fail("q out of range");
  if (n < 1) fail("n must be at least 1");
  const Field field = Field::make(static_cast<std::uint32_t>(q));
  const std::size_t dim = static_cast<std::size_t>(n) + (geometry == Geometry::Projective ? 1 : 0);
  const Space space = Space::make(field, dim);

  switch (geometry) {
    case Geometry::Linear:
      return make_family_file(space, read_pairs<LinearSubspace>(pairs, mode, [&](const json& v, const std::string& w) {
        return linear_of(v, space, w);
      }));
    case Geometry::Affine:
      return make_family_file(space, read_pairs<AffineSubspace>(pairs, mode, [&](const json& v, const std::string& w) {
        return affine_of(v, space, w);
      }));
    case Geometry::Projective:
      return make_family_file(space, read_pairs<ProjectiveSubspace>(pairs, mode, [&](const json& v, const std::string& w) {
        return projective_of(v, space, w);
      }));
    case Geometry::Sets:
      break;
  }
  fail("unreachable geometry");
}

std::string serialize_json(const json& j) { return j.dump(2) + "\n"; }

std::string serialize_family(const FamilyFile& file) { return serialize_json(family_to_json(file)); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + ": " + e.what());
  }
}

FamilyFile parse_family(std::string_view text) { return family_from_json(parse_json(text)); }

FamilyFile load_family(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_family(ss.str());
}

}  // namespace affbol
