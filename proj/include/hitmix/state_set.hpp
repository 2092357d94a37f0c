#pragma once

#include <cstdint>
#include <vector>

namespace hitmix {

// Subset of {0,...,n-1} stored as a packed bitmask.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(int n);

  static StateSet from_indices(int n, const std::vector<int>& idx);
  static StateSet from_mask(int n, std::uint64_t mask);  // n <= 64
  static StateSet full(int n);

  int n() const { return n_; }
  bool contains(int s) const;
  void insert(int s);
  void erase(int s);
  int count() const;
  bool empty() const { return count() == 0; }
  bool is_full() const { return count() == n_; }

  StateSet complement() const;
  StateSet unite(const StateSet& o) const;
  StateSet intersect(const StateSet& o) const;
  bool intersects(const StateSet& o) const;
  bool is_subset_of(const StateSet& o) const;

  // Set bits in ascending order.
  std::vector<int> indices() const;

  bool operator==(const StateSet& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const StateSet& o) const { return !(*this == o); }

 private:
  void check_index(int s) const;
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace hitmix
