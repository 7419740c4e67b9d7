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

#ifndef CONTCOUNT_GAUSSIAN_SAMPLER_H_
#define CONTCOUNT_GAUSSIAN_SAMPLER_H_

#include <cstdint>
#include <random>
#include <vector>

namespace contcount {

// Seeded standard-normal source with a fully specified output sequence.
//
// The engine is std::mt19937_64, whose output the C++ standard pins down
// exactly. Uniforms take the top 53 bits of one engine draw, and normals come
// in pairs from the Box-Muller transform. std::normal_distribution is not
// used because its algorithm differs between standard libraries.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double NextOpenUniform();

  double NextStandardNormal();

  std::vector<double> StandardNormals(std::size_t count);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// splitmix64 finalizer. Derives a second seed from `seed` whose stream is
// unrelated to the stream of `seed` itself.
std::uint64_t MixSeed(std::uint64_t seed);

}  // namespace contcount

#endif  // CONTCOUNT_GAUSSIAN_SAMPLER_H_
