#pragma once

#include "cf/backends/client.hpp"
#include "cf/corpus/types.hpp"

namespace cf::eval {

/// 100 * mean cosine between embed(synthetic.tgt) and embed(gold.tgt) over pairs matched
/// by id, in [-100, 100]. Throws DataError listing ids that occur on one side only.
double compare_to_gold(const corpus::ParallelCorpus& synthetic, const corpus::ParallelCorpus& gold,
                       const backends::BackendClient& embed);

}  // namespace cf::eval
