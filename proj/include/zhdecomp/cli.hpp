#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace zhdecomp {

// Defaults shared by all subcommands. A config file (key=value lines, '#'
// comments) can override them; command-line flags override the file.
//
//   ids=path/to/ids.txt      region=G          level=1
//   boundary=prefix|sep|none top_n_word=30000  top_n_char=2500
//   top_n_radical=1000       threshold=0.85    min_freq=1
struct PipelineConfig {
  std::string ids_path;
  std::string region_preference = "G";
  std::size_t level = 1;
  std::string boundary = "prefix";
  std::size_t top_n_word = 30000;
  std::size_t top_n_char = 2500;
  std::size_t top_n_radical = 1000;
  double mwe_threshold = 0.85;
  std::size_t min_freq = 1;

  // Throws std::invalid_argument on unknown keys or unparsable values.
  static PipelineConfig load(const std::string& path);
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2 };

// Runs one subcommand. `in` stands in for stdin when no input file is given.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace zhdecomp
