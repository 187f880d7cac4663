#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pn {

class ChartSpace;
using ChartPtr = std::shared_ptr<const ChartSpace>;

/// A coordinate chart: an ordered list of distinct coordinate names.
/// Every tensor and polynomial in this library is bound to one chart.
/// Charts compare by content, so independently built equal charts are
/// interchangeable.
class ChartSpace {
 public:
  /// Validates that names are nonempty, unique identifiers.
  static ChartPtr create(std::vector<std::string> coord_names);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view name) const;

  bool same(const ChartSpace& other) const { return names_ == other.names_; }

 private:
  explicit ChartSpace(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

/// True when `s` matches [A-Za-z_][A-Za-z0-9_]*.
bool valid_identifier(std::string_view s);

/// True when the two handles denote the same chart (pointer or content).
bool same_chart(const ChartPtr& a, const ChartPtr& b);

/// Throws ChartMismatchError naming `where` unless same_chart(a, b).
void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* where);

}  // namespace pn
