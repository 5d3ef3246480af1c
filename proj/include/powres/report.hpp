#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace powres {

/// Outcome of one named verification pass.
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> violations;  // capped

  /// Records a violation and clears `passed`; keeps the first 20 messages.
  void fail(std::string message) {
    passed = false;
    if (violations.size() < 20) violations.push_back(std::move(message));
  }
};

}  // namespace powres
