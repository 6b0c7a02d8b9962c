#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cf/common/jsonl.hpp"
#include "cf/corpus/types.hpp"

namespace cf::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

/// Single-spaced lowercase ASCII words.
std::string random_sentence(std::mt19937_64& rng, std::size_t min_words, std::size_t max_words);

/// Every text has exactly `words` words.
corpus::SADataset make_sa(std::size_t n, std::uint64_t seed, std::size_t words = 8);
/// Choice counts cycle through 2..6.
corpus::MCQADataset make_mcqa(std::size_t n, std::uint64_t seed);

/// Config with endpoints "mt" (translate), "bt" (translate), "embed" and "chat", relative paths.
Json pipeline_config_json(std::string_view task, const std::string& dataset, const std::string& checkpoint_dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Relative path -> content for every regular file below `dir`, skipping `exclude` names.
std::map<std::string, std::string> snapshot(const std::filesystem::path& dir,
                                            const std::vector<std::string>& exclude = {});

}  // namespace cf::testing
