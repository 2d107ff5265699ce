#include "ksub/label.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ksub {

Label Label::leaf(int index) {
  if (index < 1) throw std::invalid_argument("leaf index must be >= 1");
  return Label(index);
}

Labeling::Labeling(int k, std::vector<Label> entries)
    : k_(k), entries_(std::move(entries)) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  for (Label s : entries_) {
    if (s.token() > k) {
      throw std::invalid_argument("leaf index " + std::to_string(s.token()) +
                                  " out of range for k=" + std::to_string(k));
    }
  }
}

Labeling Labeling::zero(int k, int n) {
  return Labeling(k, std::vector<Label>(static_cast<std::size_t>(n)));
}

Labeling Labeling::from_tokens(int k, const std::vector<int>& tokens) {
  std::vector<Label> entries;
  entries.reserve(tokens.size());
  for (int t : tokens) entries.push_back(t == 0 ? Label::root() : Label::leaf(t));
  return Labeling(k, std::move(entries));
}

bool Labeling::is_zero() const {
  for (Label s : entries_)
    if (!s.is_root()) return false;
  return true;
}

bool Labeling::all_leaves() const {
  for (Label s : entries_)
    if (!s.is_leaf()) return false;
  return true;
}

std::vector<int> Labeling::support() const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i)
    if (entries_[static_cast<std::size_t>(i)].is_leaf()) out.push_back(i);
  return out;
}

bool Labeling::operator<(const Labeling& other) const {
  return entries_ < other.entries_;
}

std::string Labeling::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n(); ++i) {
    if (i > 0) os << ' ';
    os << entries_[static_cast<std::size_t>(i)].token();
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Labeling& T) {
  return os << T.to_string();
}

namespace {

void require_same_shape(const Labeling& T, const Labeling& U) {
  if (T.k() != U.k() || T.n() != U.n())
    throw std::invalid_argument("labelings have mismatched (k, n)");
}

}  // namespace

Labeling meet_vec(const Labeling& T, const Labeling& U) {
  require_same_shape(T, U);
  std::vector<Label> out;
  out.reserve(static_cast<std::size_t>(T.n()));
  for (int i = 0; i < T.n(); ++i) out.push_back(meet(T[i], U[i]));
  return Labeling(T.k(), std::move(out));
}

Labeling join_vec(const Labeling& T, const Labeling& U) {
  require_same_shape(T, U);
  std::vector<Label> out;
  out.reserve(static_cast<std::size_t>(T.n()));
  for (int i = 0; i < T.n(); ++i) out.push_back(join(T[i], U[i]));
  return Labeling(T.k(), std::move(out));
}

bool below_vec(const Labeling& T, const Labeling& U) {
  require_same_shape(T, U);
  for (int i = 0; i < T.n(); ++i)
    if (!below(T[i], U[i])) return false;
  return true;
}

bool compatible(const Labeling& T, const Labeling& U) {
  require_same_shape(T, U);
  for (int i = 0; i < T.n(); ++i)
    if (T[i].is_leaf() && U[i].is_leaf() && T[i] != U[i]) return false;
  return true;
}

bool i_similar(const Labeling& T, const Labeling& U, int i) {
  require_same_shape(T, U);
  if (i < 0 || i >= T.n()) throw std::invalid_argument("coordinate out of range");
  for (int j = 0; j < T.n(); ++j)
    if (j != i && T[j] != U[j]) return false;
  return true;
}

std::uint64_t labeling_count(int k, int n, std::uint64_t budget) {
  if (k < 1 || n < 1) throw std::invalid_argument("k and n must be >= 1");
  std::uint64_t count = 1;
  const std::uint64_t base = static_cast<std::uint64_t>(k) + 1;
  for (int i = 0; i < n; ++i) {
    if (count > budget / base) {
      throw BudgetExceeded("(k+1)^n exceeds enumeration budget of " +
                           std::to_string(budget));
    }
    count *= base;
  }
  if (count > budget) {
    throw BudgetExceeded("(k+1)^n exceeds enumeration budget of " +
                         std::to_string(budget));
  }
  return count;
}

std::uint64_t labeling_index(const Labeling& T) {
  const std::uint64_t base = static_cast<std::uint64_t>(T.k()) + 1;
  std::uint64_t index = 0;
  for (int i = 0; i < T.n(); ++i)
    index = index * base + static_cast<std::uint64_t>(T[i].token());
  return index;
}

Labeling labeling_from_index(int k, int n, std::uint64_t index) {
  const std::uint64_t base = static_cast<std::uint64_t>(k) + 1;
  std::vector<Label> entries(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const int token = static_cast<int>(index % base);
    entries[static_cast<std::size_t>(i)] =
        token == 0 ? Label::root() : Label::leaf(token);
    index /= base;
  }
  return Labeling(k, std::move(entries));
}

LabelingRange::LabelingRange(int k, int n, std::uint64_t budget)
    : k_(k), n_(n), count_(labeling_count(k, n, budget)) {}

Labeling BelowRange::iterator::operator*() const {
  const int n = K_->n();
  std::vector<Label> entries(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const bool take = (mask_ >> (n - 1 - i)) & 1u;
    entries[static_cast<std::size_t>(i)] = take ? (*K_)[i] : Label::root();
  }
  return Labeling(K_->k(), std::move(entries));
}

BelowRange::BelowRange(const Labeling& K, std::uint64_t budget) : K_(K) {
  if (!K.all_leaves())
    throw std::invalid_argument("enumerate_below requires an all-leaf labeling");
  if (K.n() >= 63 || (std::uint64_t{1} << K.n()) > budget)
    throw BudgetExceeded("2^n exceeds enumeration budget");
  count_ = std::uint64_t{1} << K.n();
}

}  // namespace ksub
