#include "pn/chart.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pn/error.hpp"

namespace pn {

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!std::isalpha(head) && s[0] != '_') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

ChartPtr ChartSpace::create(std::vector<std::string> coord_names) {
  if (coord_names.empty()) throw Error("chart must have at least one coordinate");
  std::set<std::string> seen;
  for (const auto& n : coord_names) {
    if (!valid_identifier(n)) throw Error("invalid coordinate name: '" + n + "'");
    if (!seen.insert(n).second) throw Error("duplicate coordinate name: '" + n + "'");
  }
  return ChartPtr(new ChartSpace(std::move(coord_names)));
}

std::optional<int> ChartSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same(*b);
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* where) {
  if (!same_chart(a, b)) {
    throw ChartMismatchError(std::string(where) + ": operands live on different charts");
  }
}

}  // namespace pn
