#ifndef BDCA_RANDOM_HPP
#define BDCA_RANDOM_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace bdca {

/// Seeded random stream with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not, so the conversions to
/// uniform and normal variates are done here: uniforms take the top 53 bits
/// of one engine draw, normals use the Marsaglia polar method. Independent
/// sub-streams are derived with split(), which hashes (seed, stream id)
/// through SplitMix64.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }

  /// Derived stream; the same (seed, id) always gives the same stream.
  Rng split(std::uint64_t stream_id) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

  Eigen::VectorXd normal_vector(Eigen::Index n);
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace bdca

#endif // BDCA_RANDOM_HPP
