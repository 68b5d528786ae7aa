#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace qcycle {

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;  // first failing location, empty on success
};

// Named pass/fail list shared by every verification suite.
class Report {
 public:
  void add(std::string name, bool ok, std::string detail = {}) {
    checks_.push_back({std::move(name), ok, std::move(detail)});
  }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.ok, c.detail});
  }

  bool ok() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.ok; });
  }
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool passed(const std::string& name) const {
    const Check* c = find(name);
    return c != nullptr && c->ok;
  }

  void print(std::ostream& os) const {
    for (const auto& c : checks_) {
      os << (c.ok ? "  ok    " : "  FAIL  ") << c.name;
      if (!c.detail.empty()) os << "  (" << c.detail << ")";
      os << '\n';
    }
  }

 private:
  std::vector<Check> checks_;
};

// Records the first failing location of a scan; later failures are ignored.
class FirstFailure {
 public:
  void note(const std::string& where) {
    if (ok_) {
      ok_ = false;
      where_ = where;
    }
  }
  bool ok() const { return ok_; }
  const std::string& where() const { return where_; }

 private:
  bool ok_ = true;
  std::string where_;
};

}  // namespace qcycle
