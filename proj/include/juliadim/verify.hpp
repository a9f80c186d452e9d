#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "juliadim/report.hpp"
#include "juliadim/rescaling.hpp"

namespace juliadim {

enum class VerifyLevel { fast, full };

// Throws DomainError for anything but "fast" or "full".
VerifyLevel parse_verify_level(const std::string& s);
const char* verify_level_name(VerifyLevel level);

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  // Only changed to demonstrate that the suite notices a wrong hyperbola.
  double hyperbola_coefficient = kHyperbolaCoefficient;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0.0;
};

using NamedTable = std::pair<std::string, CsvTable>;

struct VerifyReport {
  VerifyLevel level = VerifyLevel::fast;
  std::vector<CriterionResult> results;
  std::vector<NamedTable> tables;

  // Skipped criteria do not count as failures.
  bool all_passed() const;
};

inline constexpr int kCriterionCount = 12;

const char* criterion_name(int id);
bool criterion_in_level(int id, VerifyLevel level);

// Runs one criterion; tables it produces are appended to `tables`.
CriterionResult run_criterion(int id, const VerifyOptions& opt,
                              std::vector<NamedTable>* tables = nullptr);

VerifyReport run_verify(const VerifyOptions& opt);

// Small, quick tables whose numeric content must not depend on the
// thread count.
std::vector<NamedTable> determinism_tables(int threads);

// "criterion  7 PASS  name  (12.3 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace juliadim
