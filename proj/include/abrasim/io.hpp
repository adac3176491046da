#ifndef ABRASIM_IO_HPP
#define ABRASIM_IO_HPP

#include <string>
#include <utility>
#include <vector>

namespace abrasim {

// Write-to-temp then rename, so a failed invocation never leaves a partly
// written or clobbered output file.  Throws std::runtime_error.
void atomic_write_file(const std::string& path, const std::string& content);

// All-or-nothing variant for multiple outputs: every temp file is written
// before any rename happens.
void atomic_write_files(const std::vector<std::pair<std::string, std::string>>& files);

// Throws std::runtime_error when the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace abrasim

#endif  // ABRASIM_IO_HPP
