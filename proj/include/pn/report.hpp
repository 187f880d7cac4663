#pragma once

#include <string>
#include <vector>

namespace pn {

enum class Verdict { Pass, Fail, Error };

const char* verdict_name(Verdict v);

/// One named check outcome. `witness` is a printable expression (or point)
/// in the canonical grammar when the verdict is Fail/Error; `note` carries
/// free-form context. Informational entries are reported but do not count
/// toward exit codes or suite summaries.
struct CheckEntry {
  std::string id;
  Verdict verdict = Verdict::Pass;
  std::string witness;
  std::string note;
  bool informational = false;
};

/// Ordered list of verdicts; order is deterministic for identical inputs.
class CheckReport {
 public:
  void add(CheckEntry entry) { entries_.push_back(std::move(entry)); }
  void add(std::string id, Verdict v, std::string witness = "", std::string note = "");
  void add_info(std::string id, Verdict v, std::string witness = "", std::string note = "");

  /// Appends another report's entries, prefixing their ids with `prefix`.
  void absorb(const CheckReport& other, const std::string& prefix = "");

  const std::vector<CheckEntry>& entries() const { return entries_; }

  int count(Verdict v) const;        // non-informational entries only
  int informational_count() const;
  bool all_required_pass() const;

 private:
  std::vector<CheckEntry> entries_;
};

}  // namespace pn
