#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pathalg::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Worker count: the request (0 = hardware concurrency) capped by QF_THREADS.
unsigned effective_threads(unsigned requested);

// "gf2", "gf4", ... or the plain order; returns the extension degree.
int parse_field(const std::string& text);

}  // namespace pathalg::cli
