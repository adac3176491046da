#include "abrasim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace abrasim {

namespace {

void write_temp(const std::string& tmp, const std::string& content) {
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + tmp);
}

}  // namespace

void atomic_write_file(const std::string& path, const std::string& content) {
  atomic_write_files({{path, content}});
}

void atomic_write_files(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::string> temps;
  temps.reserve(files.size());
  try {
    for (const auto& [path, content] : files) {
      temps.push_back(path + ".tmp");
      write_temp(temps.back(), content);
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (std::rename(temps[i].c_str(), files[i].first.c_str()) != 0)
        throw std::runtime_error("cannot rename into place: " + files[i].first);
    }
  } catch (...) {
    for (const auto& t : temps) std::remove(t.c_str());
    throw;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace abrasim
