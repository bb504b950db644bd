#pragma once

#include "ecros/base/zmat.hpp"

namespace ecros {

// LLL-reduce the rows of B (exact rational Gram-Schmidt, Lovasz delta).
// Zero rows are dropped; input rows need not be independent.
ZMat lll_reduce(const ZMat& B, long delta_num = 99, long delta_den = 100);

// squared Gram-Schmidt norms of the rows (rows must be independent)
std::vector<Rat> gs_norms2(const ZMat& B);

}  // namespace ecros
