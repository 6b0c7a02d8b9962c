#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

namespace cf::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("cf-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "albergo", "camera", "pulita", "colazione", "ottima", "personale", "gentile", "posizione", "centrale",
      "rumore", "strada", "vista", "lago",  "montagna", "cena",     "piatti",   "caldo",    "freddo",
      "letto",  "bagno",  "piccolo", "grande", "prezzo", "alto",    "basso",    "torneremo", "mai",
      "sempre", "bella",  "brutta"};
  return words;
}

}  // namespace

std::string random_sentence(std::mt19937_64& rng, std::size_t min_words, std::size_t max_words) {
  std::uniform_int_distribution<std::size_t> len(min_words, max_words);
  std::uniform_int_distribution<std::size_t> pick(0, vocabulary().size() - 1);
  const auto n = len(rng);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += vocabulary()[pick(rng)];
  }
  return out;
}

corpus::SADataset make_sa(std::size_t n, std::uint64_t seed, std::size_t words) {
  std::mt19937_64 rng(seed);
  corpus::SADataset out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({"sa-" + std::to_string(i), random_sentence(rng, words, words), static_cast<int>(rng() % 2)});
  return out;
}

corpus::MCQADataset make_mcqa(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  corpus::MCQADataset out;
  for (std::size_t i = 0; i < n; ++i) {
    corpus::MCQAEntry e;
    e.id = "q-" + std::to_string(i);
    e.question = random_sentence(rng, 4, 9) + " ?";
    const std::size_t k = 2 + i % 5;
    for (std::size_t c = 0; c < k; ++c) e.choices.push_back("opzione " + std::to_string(c) + " " + random_sentence(rng, 1, 4));
    e.answer = static_cast<int>(rng() % k);
    out.push_back(std::move(e));
  }
  return out;
}

Json pipeline_config_json(std::string_view task, const std::string& dataset, const std::string& checkpoint_dir) {
  auto ep = [](const char* kind, std::size_t batch, std::size_t in_flight) {
    Json e;
    e["base_url"] = "http://mock.invalid";
    e["kind"] = kind;
    e["timeout"] = 5;
    e["max_retries"] = 0;
    e["batch_size"] = batch;
    e["max_in_flight"] = in_flight;
    return e;
  };
  Json j;
  j["task"] = task;
  j["dataset"] = dataset;
  j["src_lang"] = "ita_Latn";
  j["tgt_lang"] = "lld_Latn";
  j["checkpoint_dir"] = checkpoint_dir;
  j["seed"] = 7;
  j["endpoints"] = Json{{"mt", ep("translate", 16, 2)}, {"bt", ep("translate", 16, 1)},
                        {"embed", ep("embed", 8, 2)}, {"chat", ep("chat", 1, 1)}};
  Json stages;
  stages["preprocess"] = Json{{"length_filter", true}};
  stages["translate"] = Json{{"endpoint", "mt"}};
  stages["filter_similarity"] = Json{{"endpoint", "embed"}, {"mode", "fixed"}, {"threshold", 0.68}};
  stages["backtranslate"] = Json{{"endpoint", "bt"}};
  stages["filter_roundtrip"] = Json{{"mode", "data_mean"}};
  j["stages"] = stages;
  return j;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::map<std::string, std::string> snapshot(const fs::path& dir, const std::vector<std::string>& exclude) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (std::find(exclude.begin(), exclude.end(), name) != exclude.end()) continue;
    out[fs::relative(entry.path(), dir).generic_string()] = read_file(entry.path());
  }
  return out;
}

}  // namespace cf::testing
