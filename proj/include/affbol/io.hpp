#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "affbol/families.hpp"
#include "affbol/geometry.hpp"

namespace affbol {

inline constexpr int kFormatVersion = 1;

/// In-memory form of a family file. `space` is absent for set families; for
/// projective families it is the homogeneous space F_q^{n+1}.
struct FamilyFile {
  std::optional<Space> space;
  std::variant<SetFamily, LinearFamily, AffineFamily, ProjectiveFamily> family;

  [[nodiscard]] Geometry geometry() const noexcept;
  [[nodiscard]] Mode mode() const noexcept;
  [[nodiscard]] std::size_t size() const noexcept;
  /// The n written to the file (projective dimension for projective files).
  [[nodiscard]] std::size_t file_n() const;

  friend bool operator==(const FamilyFile&, const FamilyFile&) = default;
};

FamilyFile make_family_file(SetFamily fam);
FamilyFile make_family_file(const Space& space, LinearFamily fam);
FamilyFile make_family_file(const Space& space, AffineFamily fam);
FamilyFile make_family_file(const Space& homogeneous, ProjectiveFamily fam);

nlohmann::json family_to_json(const FamilyFile& file);
FamilyFile family_from_json(const nlohmann::json& j);

/// Sorted keys, two-space indent, trailing newline. Equal input, equal bytes.
std::string serialize_family(const FamilyFile& file);
std::string serialize_json(const nlohmann::json& j);

/// Throws Error{ParseError} (with line/column for syntax errors),
/// Error{VersionMismatch}, or the field's Error{NotPrimePower}.
FamilyFile parse_family(std::string_view text);
FamilyFile load_family(const std::string& path);

/// Parses JSON text, mapping syntax errors to Error{ParseError} with line and column.
nlohmann::json parse_json(std::string_view text);

}  // namespace affbol
