#ifndef KSUB_IO_HPP
#define KSUB_IO_HPP

#include <string>

#include "ksub/full_vector.hpp"
#include "ksub/signed_vector.hpp"
#include "ksub/valued_function.hpp"

namespace ksub {

// Dense-table format:
//   ksub 1
//   k=<k> n=<n>
//   <n labeling tokens> <value>     (one line per labeling, any order)
// Values are integers or p/q fractions; labeling tokens lie in 0..k with 0
// for the root. Duplicate or missing labelings raise ParseError with a line
// number.
ValuedFunction parse_table(const std::string& text);

// Sum-of-terms format:
//   ksum 1
//   k=<k> n=<n>
//   term <arity> <i1> ... <ia>      (1-based distinct coordinates)
//   <arity tokens> <value>          ((k+1)^arity lines per term)
ValuedFunction parse_sum(const std::string& text);

// Dispatches on the header tag.
ValuedFunction parse_instance(const std::string& text);

std::string serialize_table(const ValuedFunction& f,
                            std::uint64_t budget = kDefaultBudget);
// Requires a sum-of-terms backend.
std::string serialize_sum(const ValuedFunction& f);
// Picks the format matching the backend.
std::string serialize_instance(const ValuedFunction& f,
                               std::uint64_t budget = kDefaultBudget);

// Two lines: n rationals, then n leaf indices.
std::string serialize_signed(const SignedVector& v);
// n rows of k rationals.
std::string serialize_full(const FullVector& x);

}  // namespace ksub

#endif  // KSUB_IO_HPP
