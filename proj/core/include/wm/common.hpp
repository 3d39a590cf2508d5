#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

namespace wm {

// Global tolerance for probability-sum checks.
inline constexpr double kProbTol = 1e-9;
// Probabilities are clamped here before taking logs.
inline constexpr double kLogFloor = 1e-16;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ZeroMassError final : public Error { public: using Error::Error; };
class SupportMismatchError final : public Error { public: using Error::Error; };
class DimensionError final : public Error { public: using Error::Error; };
class ZeroSliceError final : public Error { public: using Error::Error; };
class NonFiniteError final : public Error { public: using Error::Error; };
class DepthExceededError final : public Error { public: using Error::Error; };
class LengthMismatchError final : public Error { public: using Error::Error; };
class TooLargeError final : public Error { public: using Error::Error; };
class ShapeMismatchError final : public Error { public: using Error::Error; };
class PolicySpaceTooLargeError final : public Error { public: using Error::Error; };
class HorizonExceededError final : public Error { public: using Error::Error; };
class DegenerateCovarianceError final : public Error { public: using Error::Error; };
class CardinalityMismatchError final : public Error { public: using Error::Error; };
class MissingChildRunError final : public Error { public: using Error::Error; };
class FitDivergedError final : public Error { public: using Error::Error; };
class EpisodeDoneError final : public Error { public: using Error::Error; };
class InvalidActionError final : public Error { public: using Error::Error; };
class ConfigError final : public Error { public: using Error::Error; };
class CorruptLogError final : public Error { public: using Error::Error; };

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based seed splitting: a master seed plus a path of stream ids maps
// to an independent stream, so per-episode/per-component seeds do not depend
// on execution order or worker count.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ull));
  return h;
}

// Seeded generator with explicit sampling algorithms. std::mt19937_64 output
// is fully specified by the standard; the distributions are implemented here
// so sampled values are identical on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via the polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  // Inverse-CDF draw from an unnormalised nonnegative weight vector.
  std::size_t categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw ZeroMassError("categorical draw from zero-mass weights");
    double u = uniform() * total;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      u -= weights[i];
      if (u < 0.0) return i;
    }
    return weights.size() - 1;
  }

  std::uint64_t raw() { return eng_(); }

private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wm
