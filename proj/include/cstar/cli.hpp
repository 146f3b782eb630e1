#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cstar::cli {

enum class OutputStyle { json, pretty };

/// Tolerances pinned per experiment. Precedence: defaults, then the config
/// file (--config, else $CSTAR_CONFIG), then command-line flags.
struct CliConfig {
  std::optional<double> default_tolerance;  // empty: 1e-8 * (1 + ||a||)
  double cluster_tol = 1e-10;
  double rank_threshold = 1e-10;
  double tail_fraction = 0.5;
  OutputStyle output = OutputStyle::json;

  /// Throws ParseError for malformed documents, PreconditionError for
  /// out-of-range values.
  void merge(const nlohmann::json& doc);
  void validate() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitUsage = 64;

const std::vector<std::string>& command_names();

/// Runs one command. args excludes the program name. A file argument "-"
/// reads the document from in. Exactly one document is written to out.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out);

}  // namespace cstar::cli
