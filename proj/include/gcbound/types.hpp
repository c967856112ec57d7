#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace gcbound {

// Points are stored one per row so that a row maps onto a contiguous vector.
using Dataset = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VecRef = Eigen::Ref<const Eigen::VectorXd>;

// Binary samples carry labels in {-1, +1}; multiclass samples carry 1-indexed
// labels in {1..k}.
struct LabeledSet {
  Dataset x;
  std::vector<int> y;

  std::size_t size() const { return y.size(); }
};

// splitmix64 finalizer; derives independent stream seeds from (seed, stream).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

}  // namespace gcbound
