#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcv/ambient.hpp"

namespace bcv::app {

/// How max_residual is compared with the tolerance.
enum class Bound {
  Below,    ///< pass iff max_residual < tolerance
  Exceeds,  ///< pass iff every sample exceeds the tolerance; max_residual
            ///< then holds the smallest sample
};

struct SuiteEntry {
  std::string name;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::Below;
  /// Samples that threw or produced a non-finite value; any makes the entry fail.
  std::size_t errors = 0;
  bool pass = false;
};

/// Accumulates residuals and settles pass/fail.
class EntryBuilder {
 public:
  EntryBuilder(std::string name, double tolerance, Bound bound = Bound::Below);

  void add(double residual);
  void add_error() {
    ++samples_;
    ++errors_;
  }
  SuiteEntry finish() const;

 private:
  std::string name_;
  double tolerance_;
  Bound bound_;
  std::size_t samples_ = 0;
  std::size_t errors_ = 0;
  double max_ = 0.0;
};

struct VerifyReport {
  BcvParams params;
  std::uint64_t seed = 42;
  std::vector<SuiteEntry> entries;
  std::optional<double> wall_time_seconds;

  bool pass() const;
};

/// Fixed 17-significant-digit rendering used by every text output.
std::string format_real(double value);

/// Pretty JSON with stable key order and a trailing newline.
std::string to_json(const VerifyReport& report);

}  // namespace bcv::app
