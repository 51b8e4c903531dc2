//
// Copyright 2026 The StratDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef STRATDP_RNG_HPP_
#define STRATDP_RNG_HPP_

#include <cstdint>
#include <random>

namespace stratdp {

// Seeded random stream. Every draw is a pure function of (seed, stream) and
// the call sequence: the distribution transforms are implemented directly on
// top of the engine's 53-bit uniform, so sequences are bit-identical across
// platforms and standard-library versions (std::<random> distributions are
// implementation-defined and deliberately not used).
class RngHandle {
 public:
  explicit RngHandle(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Derives an independent child stream. Depends only on (seed, stream,
  // child), not on how many draws the parent has made, so per-stratum and
  // per-trial streams can be handed out in any order or concurrently.
  RngHandle Fork(std::uint64_t child) const;

  std::uint64_t NextU64();

  // Uniform on the open interval (0, 1).
  double Uniform();

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);

  // Standard normal via Box-Muller on two uniforms (second value cached).
  double Normal();

  // Unit-scale centered Laplace via inverse CDF of one uniform.
  double Laplace();

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 handled with the
  // usual boost Gamma(shape+1) * U^(1/shape).
  double Gamma(double shape);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace stratdp

#endif  // STRATDP_RNG_HPP_
