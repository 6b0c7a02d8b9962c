#include "cf/corpus/io.hpp"

#include <cstdio>
#include <unordered_set>

#include "cf/common/error.hpp"

namespace cf::corpus {

namespace {

class RecordReader {
public:
  RecordReader(std::string path, std::size_t line, const Json& obj)
      : path_(std::move(path)), line_(line), obj_(obj) {}

  [[noreturn]] void fail(const std::string& what) const { throw SchemaError(path_, line_, what); }

  void only_keys(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, _] : obj_.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) fail("unexpected field '" + key + "'");
    }
  }

  std::string id() const {
    auto it = obj_.find("id");
    if (it == obj_.end() || it->is_null()) return auto_id(line_);
    if (!it->is_string()) fail("field 'id' must be a string");
    auto s = it->get<std::string>();
    if (s.empty()) fail("field 'id' is empty");
    return s;
  }

  std::string string(const char* key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) fail(std::string("missing field '") + key + "'");
    if (!it->is_string()) fail(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
  }

  int integer(const char* key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) fail(std::string("missing field '") + key + "'");
    if (!it->is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
    const auto v = it->get<long long>();
    if (v < -1'000'000 || v > 1'000'000) fail(std::string("field '") + key + "' out of range");
    return static_cast<int>(v);
  }

  std::vector<std::string> strings(const char* key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) fail(std::string("missing field '") + key + "'");
    if (!it->is_array()) fail(std::string("field '") + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : *it) {
      if (!v.is_string()) fail(std::string("field '") + key + "' must be an array of strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  void check(const std::string& violation) const {
    if (!violation.empty()) fail(violation);
  }

private:
  std::string path_;
  std::size_t line_;
  const Json& obj_;
};

template <typename Entry, typename Parse>
std::vector<Entry> load_records(const std::filesystem::path& path, Parse&& parse) {
  std::vector<Entry> out;
  std::unordered_set<std::string> ids;
  for (const auto& [line, obj] : jsonl::read_objects(path)) {
    RecordReader r(path.string(), line, obj);
    Entry e = parse(r);
    if (!ids.insert(e.id).second) r.fail("duplicate id '" + e.id + "'");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::string auto_id(std::size_t line_number) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08zu", line_number);
  return buf;
}

SADataset load_sa(const std::filesystem::path& path, LoadOptions options) {
  return load_records<SAEntry>(path, [&](const RecordReader& r) {
    r.only_keys({"id", "text", "label"});
    SAEntry e{r.id(), r.string("text"), r.integer("label")};
    r.check(validate(e, options.strictness));
    return e;
  });
}

MCQADataset load_mcqa(const std::filesystem::path& path, LoadOptions options) {
  return load_records<MCQAEntry>(path, [&](const RecordReader& r) {
    r.only_keys({"id", "question", "choices", "answer"});
    MCQAEntry e{r.id(), r.string("question"), r.strings("choices"), r.integer("answer")};
    r.check(validate(e, options.strictness));
    return e;
  });
}

ParallelCorpus load_parallel(const std::filesystem::path& path, LoadOptions options) {
  return load_records<ParallelPair>(path, [&](const RecordReader& r) {
    r.only_keys({"id", "src", "tgt", "src_lang", "tgt_lang"});
    ParallelPair p{r.id(), r.string("src"), r.string("tgt"), r.string("src_lang"), r.string("tgt_lang")};
    r.check(validate(p, options.strictness));
    return p;
  });
}

Dataset load_dataset(const std::filesystem::path& path, DatasetKind kind, LoadOptions options) {
  switch (kind) {
    case DatasetKind::sa: return load_sa(path, options);
    case DatasetKind::mcqa: return load_mcqa(path, options);
    case DatasetKind::parallel: return load_parallel(path, options);
  }
  throw ValidationError("unknown dataset kind");
}

Json to_json(const SAEntry& e) {
  Json j;
  j["id"] = e.id;
  j["text"] = e.text;
  j["label"] = e.label;
  return j;
}

Json to_json(const MCQAEntry& e) {
  Json j;
  j["id"] = e.id;
  j["question"] = e.question;
  j["choices"] = e.choices;
  j["answer"] = e.answer;
  return j;
}

Json to_json(const ParallelPair& p) {
  Json j;
  j["id"] = p.id;
  j["src"] = p.src;
  j["tgt"] = p.tgt;
  j["src_lang"] = p.src_lang;
  j["tgt_lang"] = p.tgt_lang;
  return j;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::vector<std::string> lines;
  std::visit(
      [&](const auto& records) {
        lines.reserve(records.size());
        for (const auto& r : records) lines.push_back(jsonl::dump(to_json(r)));
      },
      dataset);
  jsonl::write_lines(path, lines);
}

}  // namespace cf::corpus
