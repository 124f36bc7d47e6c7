#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace regtor::exterior {

/// Subset of {0..31}, used to index the basis e_S of the exterior algebra.
/// Indices are 0-based internally; `to_string` prints them 1-based.
class IndexSet {
 public:
  constexpr IndexSet() = default;
  static constexpr IndexSet from_bits(std::uint32_t bits) { return IndexSet(bits); }
  static IndexSet of(std::initializer_list<std::size_t> indices);
  static constexpr IndexSet singleton(std::size_t j) { return IndexSet(std::uint32_t{1} << j); }
  static constexpr IndexSet full(std::size_t n) {
    return IndexSet(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t j) const { return (bits_ >> j) & 1u; }
  std::vector<std::size_t> elements() const;

  constexpr IndexSet with(std::size_t j) const { return IndexSet(bits_ | (std::uint32_t{1} << j)); }
  constexpr IndexSet without(std::size_t j) const { return IndexSet(bits_ & ~(std::uint32_t{1} << j)); }
  constexpr IndexSet operator|(IndexSet o) const { return IndexSet(bits_ | o.bits_); }
  constexpr IndexSet operator&(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
  constexpr IndexSet operator-(IndexSet o) const { return IndexSet(bits_ & ~o.bits_); }
  constexpr bool intersects(IndexSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool is_subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }

  /// "{1,3}" or "{}".
  std::string to_string() const;

  friend constexpr bool operator==(IndexSet a, IndexSet b) { return a.bits_ == b.bits_; }
  /// Orders by size, then lexicographically by the sorted element lists.
  friend bool operator<(IndexSet a, IndexSet b);

 private:
  explicit constexpr IndexSet(std::uint32_t bits) : bits_(bits) {}
  std::uint32_t bits_ = 0;
};

/// Number of elements of `set` smaller than j.
constexpr unsigned position(std::size_t j, IndexSet set) {
  return static_cast<unsigned>(std::popcount(set.bits() & ((std::uint32_t{1} << j) - 1)));
}

/// Sign of the shuffle putting left ++ right into increasing order, i.e.
/// e_left ∧ e_right = merge_sign * e_{left ∪ right}; 0 when they intersect.
int merge_sign(IndexSet left, IndexSet right);

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<IndexSet> subsets_of_size(std::size_t n, std::size_t k);

}  // namespace regtor::exterior
