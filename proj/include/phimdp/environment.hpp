#ifndef PHIMDP_ENVIRONMENT_HPP_
#define PHIMDP_ENVIRONMENT_HPP_

#include <memory>
#include <string>
#include <utility>

#include "phimdp/alphabets.hpp"
#include "phimdp/rng.hpp"

namespace phimdp {

struct EnvSpec {
  Alphabets alphabets;
  double r_max = 0.0;  // always the top of the reward alphabet
  std::string name;
};

/// A percept: observation symbol plus reward index into the reward alphabet.
struct Percept {
  int observation = 0;
  int reward = 0;
};

/// Single-owner stateful environment. Instances are seed-deterministic: the
/// same seed and action sequence produce identical percept streams.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual const EnvSpec& spec() const = 0;
  /// Starts a fresh interaction stream and returns the initial observation.
  virtual int reset() = 0;
  virtual Percept step(int action) = 0;
};

using EnvFactory = std::function<std::unique_ptr<Environment>(uint64_t seed)>;

}  // namespace phimdp

#endif  // PHIMDP_ENVIRONMENT_HPP_
