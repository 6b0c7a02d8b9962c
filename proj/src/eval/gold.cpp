#include "cf/eval/gold.hpp"

#include <set>
#include <unordered_map>

#include "cf/common/error.hpp"
#include "cf/metrics/cosine.hpp"

namespace cf::eval {

double compare_to_gold(const corpus::ParallelCorpus& synthetic, const corpus::ParallelCorpus& gold,
                       const backends::BackendClient& embed) {
  if (gold.empty()) throw ValidationError("gold corpus is empty");
  std::unordered_map<std::string, const corpus::ParallelPair*> by_id;
  for (const auto& p : synthetic) by_id.emplace(p.id, &p);

  std::vector<std::string> syn;
  std::vector<std::string> ref;
  std::set<std::string> missing;
  for (const auto& g : gold) {
    auto it = by_id.find(g.id);
    if (it == by_id.end()) {
      missing.insert(g.id);
      continue;
    }
    syn.push_back(it->second->tgt);
    ref.push_back(g.tgt);
    by_id.erase(it);
  }
  if (!missing.empty() || !by_id.empty()) {
    std::string msg = "synthetic and gold corpora are not aligned by id; unmatched:";
    std::set<std::string> all(missing);
    for (const auto& [id, _] : by_id) all.insert(id);
    for (const auto& id : all) msg += " " + id;
    throw DataError(msg);
  }

  const auto a = backends::embed_batch(embed, syn);
  const auto b = backends::embed_batch(embed, ref);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].dim() != b[i].dim()) throw ProtocolError("embedding dimension changed between requests");
    try {
      sum += metrics::cosine_similarity(a[i], b[i]);
    } catch (const ValidationError& e) {
      throw ProtocolError(std::string("unusable embedding: ") + e.what());
    }
  }
  return 100.0 * sum / static_cast<double>(a.size());
}

}  // namespace cf::eval
