//
// Copyright 2026 The contcount Authors
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

#include "contcount/gaussian_sampler.h"

#include <cmath>
#include <numbers>

namespace contcount {

double GaussianSampler::NextOpenUniform() {
  // (k + 0.5) / 2^53 for k in [0, 2^53) never hits 0 or 1.
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double GaussianSampler::NextStandardNormal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = NextOpenUniform();
  const double u2 = NextOpenUniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<double> GaussianSampler::StandardNormals(std::size_t count) {
  std::vector<double> out(count);
  for (double& v : out) v = NextStandardNormal();
  return out;
}

std::uint64_t MixSeed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace contcount
