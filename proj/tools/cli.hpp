// Copyright 2026 The rwrs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The rwrs command-line front end. `run` is the whole program; main() only
// forwards argv and the standard streams.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rwrs::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,  // smalltest found a violated assertion
  kUsage = 2,   // bad flags or an infeasible configuration
  kIo = 3,
};

struct RunManifest {
  std::string tool_version;
  std::string subcommand;
  std::string config;  // resolved configuration, canonical text
  std::uint64_t config_digest = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;
};

std::string tool_version();

/// Sixteen lowercase hex digits.
std::string format_digest(std::uint64_t digest);

/// The `#` comment header written at the top of every CSV file.
std::string csv_header(const RunManifest& manifest);

/// Reads the comment header of a CSV produced by `run`. Returns nullopt if
/// a required field is missing or malformed.
std::optional<RunManifest> parse_manifest(std::istream& csv);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rwrs::cli
