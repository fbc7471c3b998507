#include "drsc/labels.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "drsc/error.hpp"

namespace drsc {

void LabelVector::validate() const {
  if (K < 1) throw InvalidArgument("label vector needs K >= 1");
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] < 1 || labels[i] > K)
      throw InvalidArgument("label " + std::to_string(labels[i]) + " at node " + std::to_string(i) +
                            " outside 1.." + std::to_string(K));
}

bool LabelVector::all_communities_present() const {
  const auto sizes = community_sizes();
  return std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; });
}

std::vector<std::size_t> LabelVector::community_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(std::max(K, 0)), 0);
  for (int l : labels)
    if (l >= 1 && l <= K) ++sizes[static_cast<std::size_t>(l - 1)];
  return sizes;
}

LabelVector compact_labels(const std::vector<int>& raw) {
  std::map<int, int> remap;
  for (int v : raw) remap.emplace(v, 0);
  int next = 1;
  for (auto& [value, label] : remap) label = next++;
  LabelVector out;
  out.K = static_cast<int>(remap.size());
  out.labels.reserve(raw.size());
  for (int v : raw) out.labels.push_back(remap.at(v));
  return out;
}

}  // namespace drsc
