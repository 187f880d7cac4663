#include "pn/report.hpp"

#include <algorithm>

namespace pn {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Error: return "error";
  }
  return "unknown";
}

void CheckReport::add(std::string id, Verdict v, std::string witness, std::string note) {
  entries_.push_back({std::move(id), v, std::move(witness), std::move(note), false});
}

void CheckReport::add_info(std::string id, Verdict v, std::string witness, std::string note) {
  entries_.push_back({std::move(id), v, std::move(witness), std::move(note), true});
}

void CheckReport::absorb(const CheckReport& other, const std::string& prefix) {
  for (CheckEntry e : other.entries_) {
    e.id = prefix + e.id;
    entries_.push_back(std::move(e));
  }
}

int CheckReport::count(Verdict v) const {
  return static_cast<int>(std::count_if(entries_.begin(), entries_.end(), [v](const CheckEntry& e) {
    return !e.informational && e.verdict == v;
  }));
}

int CheckReport::informational_count() const {
  return static_cast<int>(std::count_if(entries_.begin(), entries_.end(),
                                        [](const CheckEntry& e) { return e.informational; }));
}

bool CheckReport::all_required_pass() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CheckEntry& e) {
    return e.informational || e.verdict == Verdict::Pass;
  });
}

}  // namespace pn
