#ifndef KSUB_EXACT_LINALG_HPP
#define KSUB_EXACT_LINALG_HPP

#include <optional>
#include <vector>

#include "ksub/rational.hpp"

namespace ksub {

using Matrix = std::vector<std::vector<Rational>>;

int matrix_rank(Matrix a);

// Unique solution of the square system a x = b, or nullopt when singular.
std::optional<std::vector<Rational>> solve_unique(Matrix a, std::vector<Rational> b);

// Some nonzero x with a x = 0, or nullopt when the columns are independent.
std::optional<std::vector<Rational>> nullspace_vector(Matrix a);

// Greedily keeps input rows that increase the rank; returns their indices.
std::vector<std::size_t> independent_rows(const Matrix& a);

}  // namespace ksub

#endif  // KSUB_EXACT_LINALG_HPP
