#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace topos {

// One named check; failures always carry a witness.
struct Verdict {
  std::string check;
  bool pass = false;
  std::string witness;
};

struct Certificate {
  std::vector<Verdict> verdicts;

  /// The witness explains a failure and is dropped when the check passes.
  void add(std::string check, bool pass, std::string witness = {}) {
    verdicts.push_back({std::move(check), pass, pass ? std::string{} : std::move(witness)});
  }
  void append(const Certificate& other, const std::string& prefix = {}) {
    for (const auto& v : other.verdicts) verdicts.push_back({prefix + v.check, v.pass, v.witness});
  }
  bool passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
  }
  const Verdict* find(const std::string& check) const {
    for (const auto& v : verdicts)
      if (v.check == check) return &v;
    return nullptr;
  }
};

}  // namespace topos
