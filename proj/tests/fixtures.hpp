#pragma once
#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fzdr/sparse_matrix.hpp"

namespace fixture {

/// The 5 x 10 worked-example document-term matrix.
inline fzdr::SparseMatrix worked_example() {
  fzdr::DenseMatrix d(5, 10);
  d << 1, 0, 0, 1, 0, 0, 1, 2, 1, 0,  //
      2, 0, 1, 0, 0, 1, 0, 0, 0, 1,   //
      1, 0, 0, 2, 1, 0, 0, 1, 1, 0,   //
      1, 1, 0, 0, 0, 1, 1, 1, 0, 1,   //
      0, 0, 0, 1, 0, 1, 0, 0, 0, 0;
  return fzdr::SparseMatrix::from_dense(d);
}

inline std::string data_path(const std::string& name) { return std::string(FZDR_TEST_DATA) + "/" + name; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("fzdr-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace fixture
