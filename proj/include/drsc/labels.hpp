#pragma once

#include <cstddef>
#include <vector>

namespace drsc {

// Community assignment with labels in {1..K}.
struct LabelVector {
  std::vector<int> labels;
  int K = 0;

  std::size_t size() const noexcept { return labels.size(); }
  int operator[](std::size_t i) const { return labels[i]; }

  // Throws InvalidArgument unless every label lies in {1..K}.
  void validate() const;
  // True when every label in {1..K} occurs at least once.
  bool all_communities_present() const;
  std::vector<std::size_t> community_sizes() const;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;
};

// Relabels an arbitrary integer assignment to {1..K} in ascending order of the
// original values.
LabelVector compact_labels(const std::vector<int>& raw);

}  // namespace drsc
