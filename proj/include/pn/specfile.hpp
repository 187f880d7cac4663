#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pn/groupoid.hpp"
#include "pn/tensor.hpp"

namespace pn {

/// Parse failure in a declarative check file; positions are 1-based.
struct SpecFileError : Error {
  SpecFileError(const std::string& what, int line_, int col_)
      : Error(what), line(line_), col(col_) {}
  int line;
  int col;
};

/// One requested check, in file order.
struct CheckRequest {
  enum class Kind { Algebroid, Groupoid, Correspondence, Oracle };
  Kind kind = Kind::Algebroid;
  std::string bivector;  // tensor checks
  std::string endo;
  std::optional<Convention> convention;
  std::optional<int> trials;  // oracle
  std::optional<std::uint64_t> seed;
};

/// A fully resolved check file: named charts, named tensors bound to them,
/// and an ordered list of checks referencing the tensors.
struct SpecFile {
  struct Space {
    std::string name;
    ChartPtr chart;
  };
  struct NamedBivector {
    std::string name;
    std::string space;
    Bivector value;
  };
  struct NamedEndo {
    std::string name;
    std::string space;
    EndoField value;
  };
  struct NamedVector {
    std::string name;
    std::string space;
    VectorField value;
  };

  std::vector<Space> spaces;
  std::vector<NamedBivector> bivectors;
  std::vector<NamedEndo> endos;
  std::vector<NamedVector> vectors;
  std::vector<CheckRequest> checks;

  const Space* find_space(std::string_view name) const;
  const NamedBivector* find_bivector(std::string_view name) const;
  const NamedEndo* find_endo(std::string_view name) const;
};

/// Line-oriented format, '#' starts a comment:
///   space <name> dim=<n> coords=<c1,...,cn>
///   bivector <name> on <space>    then indented "<i> <j>: <expr>", i < j
///   endo <name> on <space>        then indented "<i> <j>: <expr>"
///   vector <name> on <space>      then indented "<i>: <expr>"
///   check algebroid <bivector> <endo>
///   check groupoid <bivector> <endo> [convention=right|left]
///   check correspondence <bivector> <endo> [convention=right|left]
///   check oracle [trials=<k>] [seed=<s>]
/// Unspecified components default to zero. Throws SpecFileError.
SpecFile parse_specfile(std::string_view text);

/// Canonical text for a parsed file; parse . format is idempotent.
std::string format_specfile(const SpecFile& file);

}  // namespace pn
