#include "regtor/exterior/index_set.hpp"

#include <algorithm>

namespace regtor::exterior {

IndexSet IndexSet::of(std::initializer_list<std::size_t> indices) {
  IndexSet s;
  for (std::size_t j : indices) s = s.with(j);
  return s;
}

std::vector<std::size_t> IndexSet::elements() const {
  std::vector<std::size_t> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (std::size_t j : elements()) {
    s += (first ? "" : ",") + std::to_string(j + 1);
    first = false;
  }
  return s + "}";
}

bool operator<(IndexSet a, IndexSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto ea = a.elements();
  auto eb = b.elements();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

int merge_sign(IndexSet left, IndexSet right) {
  if (left.intersects(right)) return 0;
  unsigned inversions = 0;
  for (std::size_t t : right.elements()) {
    inversions += static_cast<unsigned>(std::popcount(left.bits() >> (t + 1)));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<IndexSet> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    IndexSet s;
    for (std::size_t i : idx) s = s.with(i);
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace regtor::exterior
