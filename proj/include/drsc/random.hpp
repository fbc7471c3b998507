#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace drsc {

// Seed derivation: mixes a parent seed with a sequence of integer keys
// (experiment, grid point, repetition, stream). Every random stream in the
// project is keyed this way, so a stream depends only on its key and results
// do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> keys);

// Stable 64-bit hash of a tag such as an experiment id.
std::uint64_t tag_hash(std::string_view tag);

// xoshiro256** seeded through splitmix64. Deterministic across platforms:
// unlike <random> distributions, uniform() and below() are fully specified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();                        // [0, 1)
  std::size_t below(std::size_t bound);    // [0, bound)
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t s_[4];
};

}  // namespace drsc
