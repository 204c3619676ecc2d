#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace killform::cli {

enum class Format { json, text };

struct RunConfig {
  std::string subcommand;
  std::string spec;  // group spec, or the theorem tag for verify
  std::string selector;
  std::optional<Format> format;  // unset: text on a terminal, JSON otherwise
  std::string csv_path;
  std::string dot_path;
  std::uint64_t max_order = 5000000;
  std::optional<std::size_t> max_class;
  unsigned threads = 0;  // 0: KILLFORM_THREADS or hardware
  std::vector<std::uint32_t> triple;
  bool exact = false;
  // verify parameters
  std::string family;
  std::string group;
  std::uint64_t q = 0, n = 0, p = 0;
};

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kCap = 3 };

/// args excludes the program name. stdout_is_tty picks the default format.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool stdout_is_tty = false);

}  // namespace killform::cli
