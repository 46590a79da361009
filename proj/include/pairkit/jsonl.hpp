#pragma once
// Small line-delimited-JSON and file-writing helpers shared by the IO paths.

#include <filesystem>
#include <functional>
#include <string>

namespace pairkit::jsonl {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

// Calls fn(line_number, line) for every non-blank line. Line numbers are
// 1-based and count every physical line, blanks included.
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(std::size_t, const std::string&)>& fn);

// Write-temp-then-rename; readers never observe a partially written file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace pairkit::jsonl
