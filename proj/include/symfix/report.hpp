#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace symfix {

/// One named check with a pass/fail verdict and a human-readable detail
/// line (the witness on failure, the certified value on success).
struct Certificate {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Returns the first failed certificate, or nullptr if all passed.
inline const Certificate* first_failure(const std::vector<Certificate>& certs) {
  for (const auto& c : certs)
    if (!c.passed) return &c;
  return nullptr;
}

/// One counted constituent of a fixed locus: where it comes from and what
/// it is.
struct CensusItem {
  std::string provenance;
  std::string description;
};

/// Census of a fixed locus: the number of isolated points, K3 surfaces and
/// abelian surfaces, with one item per counted constituent.
struct CensusReport {
  long n = 0;        // isolated fixed points
  long k = 0;        // fixed K3 surfaces
  long abelian = 0;  // fixed abelian surfaces
  std::vector<CensusItem> items;
  std::vector<std::string> notes;

  /// Every counted constituent must be covered by exactly one item.
  bool items_cover_counts() const {
    return static_cast<long>(items.size()) == n + k + abelian;
  }
};

}  // namespace symfix
