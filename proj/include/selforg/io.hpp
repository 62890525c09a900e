#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "selforg/model.hpp"

namespace selforg {

inline constexpr const char* version_string = "0.1.0";

/// Parses the flat parameter document.  Every field is optional (defaults
/// from SystemParams); unknown keys are rejected with ConfigError.
SystemParams params_from_json_text(const std::string& text);
std::string params_to_json_text(const SystemParams& params);
SystemParams load_params(const std::filesystem::path& path);

/// Stable 64-bit FNV-1a hash, printed in provenance lines.
std::uint64_t fnv1a64(const std::string& bytes);

/// "# selforg <version> config_hash=<hex> <extra>" followed by a newline.
void write_provenance(std::ostream& os, std::uint64_t config_hash, const std::string& extra = {});

/// Chain state table: j, z, p, re_sigma, im_sigma.
void write_state_csv(std::ostream& os, const ChainState& state);

/// Reads a state table written by write_state_csv; '#' lines are skipped.
/// Throws ConfigError on malformed input and DegenerateConfigurationError /
/// OrderingViolationError on unusable positions.
ChainState read_state_csv(std::istream& is);
ChainState load_state_csv(const std::filesystem::path& path);

/// printf-style "%.17g" for lossless, locale-independent doubles.
std::string format_double(double x);

} // namespace selforg
