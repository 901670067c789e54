#pragma once

#include <iosfwd>
#include <string>

#include "hofloq/io.hpp"

namespace hofloq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConsistency = 3;

/// Runs one command from a flat configuration: validates it, fills defaults,
/// writes the schema files and manifest.cfg into output.dir. Outputs of a run
/// that throws are removed.
int run_command(const std::string& command, const RunConfig& config, std::ostream& log);

/// Full command line: hofloq <command> [flags] or hofloq replay <manifest>.
int run(int argc, const char* const* argv, std::ostream& log);

}  // namespace hofloq::cli
