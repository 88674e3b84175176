#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stablab/common.hpp"

namespace stablab {

/// Bad experiment configuration; `field` names the offending key.
class UsageError : public InvalidArgument {
 public:
  UsageError(std::string field, const std::string& message)
      : InvalidArgument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// One experiment run: the subcommand plus flat key=value parameters.
struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> params;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::filesystem::path out_dir = "out";

  /// Reads "key = value" lines; '#' starts a comment. The keys seed, out and
  /// tolerance fill the dedicated fields.
  static ExperimentConfig from_file(const std::filesystem::path& path);
  /// Applies `key=value` (same key rules as the file); later calls win.
  void set(const std::string& key, const std::string& value);
};

/// Subcommands accepted by run().
const std::vector<std::string>& experiment_names();

/// Runs the experiment, writing its tables under out_dir. Returns 0 when
/// every check of the experiment holds and 1 otherwise. Throws UsageError
/// for invalid configurations.
int run(const ExperimentConfig& config, std::ostream& log);

/// Writes through a temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace stablab
