#include "hitmix/state_set.hpp"

#include <bit>

#include "hitmix/error.hpp"

namespace hitmix {

namespace {
int word_count(int n) { return (n + 63) / 64; }
}  // namespace

StateSet::StateSet(int n) : n_(n), w_(word_count(n), 0) {
  if (n < 1) fail(errc::bad_input, "state set needs a positive universe size");
}

StateSet StateSet::from_indices(int n, const std::vector<int>& idx) {
  StateSet s(n);
  for (int i : idx) s.insert(i);
  return s;
}

StateSet StateSet::from_mask(int n, std::uint64_t mask) {
  if (n > 64) fail(errc::bad_input, "from_mask supports at most 64 states");
  StateSet s(n);
  if (n < 64 && (mask >> n) != 0) fail(errc::bad_input, "mask has bits beyond the state count");
  if (!s.w_.empty()) s.w_[0] = mask;
  return s;
}

StateSet StateSet::full(int n) {
  StateSet s(n);
  for (int i = 0; i < n; ++i) s.insert(i);
  return s;
}

void StateSet::check_index(int s) const {
  if (s < 0 || s >= n_) fail(errc::bad_input, "state index out of range");
}

bool StateSet::contains(int s) const {
  check_index(s);
  return (w_[s / 64] >> (s % 64)) & 1u;
}

void StateSet::insert(int s) {
  check_index(s);
  w_[s / 64] |= (std::uint64_t{1} << (s % 64));
}

void StateSet::erase(int s) {
  check_index(s);
  w_[s / 64] &= ~(std::uint64_t{1} << (s % 64));
}

int StateSet::count() const {
  int c = 0;
  for (auto word : w_) c += std::popcount(word);
  return c;
}

StateSet StateSet::complement() const {
  StateSet s(n_);
  for (std::size_t i = 0; i < w_.size(); ++i) s.w_[i] = ~w_[i];
  int tail = n_ % 64;
  if (tail != 0) s.w_.back() &= (std::uint64_t{1} << tail) - 1;
  return s;
}

StateSet StateSet::unite(const StateSet& o) const {
  if (n_ != o.n_) fail(errc::length_mismatch, "state sets over different universes");
  StateSet s(n_);
  for (std::size_t i = 0; i < w_.size(); ++i) s.w_[i] = w_[i] | o.w_[i];
  return s;
}

StateSet StateSet::intersect(const StateSet& o) const {
  if (n_ != o.n_) fail(errc::length_mismatch, "state sets over different universes");
  StateSet s(n_);
  for (std::size_t i = 0; i < w_.size(); ++i) s.w_[i] = w_[i] & o.w_[i];
  return s;
}

bool StateSet::intersects(const StateSet& o) const {
  if (n_ != o.n_) fail(errc::length_mismatch, "state sets over different universes");
  for (std::size_t i = 0; i < w_.size(); ++i)
    if ((w_[i] & o.w_[i]) != 0) return true;
  return false;
}

bool StateSet::is_subset_of(const StateSet& o) const {
  if (n_ != o.n_) fail(errc::length_mismatch, "state sets over different universes");
  for (std::size_t i = 0; i < w_.size(); ++i)
    if ((w_[i] & ~o.w_[i]) != 0) return false;
  return true;
}

std::vector<int> StateSet::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count()));
  for (int i = 0; i < n_; ++i)
    if ((w_[i / 64] >> (i % 64)) & 1u) out.push_back(i);
  return out;
}

}  // namespace hitmix
