#include "g2forge/exterior.hpp"

#include <algorithm>

namespace g2forge {

std::optional<std::pair<IndexSet, int>> IndexSet::from_sequence(std::span<const int> zero_based) {
  std::vector<int> v(zero_based.begin(), zero_based.end());
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] == v[j + 1]) return std::nullopt;
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
    }
  std::uint32_t mask = 0;
  for (int i : v) {
    if (i < 0 || i >= kMaxDimension) throw DimensionMismatch("index " + std::to_string(i + 1) + " out of range");
    if (mask & (1u << i)) return std::nullopt;
    mask |= 1u << i;
  }
  return std::make_pair(from_mask(mask), sign);
}

std::vector<int> IndexSet::indices() const {
  std::vector<int> out;
  for (std::uint32_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string IndexSet::to_string() const {
  std::string s;
  for (int i : indices()) s += std::to_string(i + 1);
  return s;
}

int wedge_sign(IndexSet a, IndexSet b) {
  if (a.mask() & b.mask()) return 0;
  // count pairs (i in a, j in b) with i > j
  int inversions = 0;
  for (int j : b.indices()) inversions += std::popcount(a.mask() >> (j + 1));
  return inversions % 2 ? -1 : 1;
}

std::vector<IndexSet> subsets(int n, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint32_t m = 0;
    for (int i : idx) m |= 1u << i;
    out.push_back(IndexSet::from_mask(m));
    int p = k - 1;
    while (p >= 0 && idx[p] == n - k + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
  return out;
}

std::string render_coefficient_prefix(const std::string& coeff_text, bool atomic, bool first, bool is_one,
                                      bool negative) {
  std::string out;
  if (negative)
    out += "-";
  else if (!first)
    out += "+";
  if (is_one) return out;
  out += atomic ? coeff_text : "(" + coeff_text + ")";
  return out + "*";
}

}  // namespace g2forge
