// Copyright 2026 The spinsched Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Data-parallel inner loops used by the SINR evaluator and the fading model.
//
// Every kernel has a portable scalar reference and, where the toolchain and
// CPU allow it, an AVX2/FMA variant. The active variant is chosen once at
// startup from CPUID and can be overridden with SPINSCHED_ISA=scalar|avx2 or
// programmatically through IsaOverride (tests only).
//
// Variants agree to a few ulps, not bit-for-bit: the vector path reorders the
// reduction and fuses multiply-adds. Within one process the choice is fixed,
// so results are reproducible run to run on the same machine.

#include <cstddef>
#include <span>
#include <string_view>

namespace spinsched::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// True if the binary carries the variant and the running CPU supports it.
bool isa_available(Isa isa);

/// The variant that the dispatching entry points below currently call.
Isa active_isa();

/// Scoped override of the active variant. Not thread-safe with respect to
/// concurrent kernel calls; intended for equivalence tests.
class IsaOverride {
 public:
  explicit IsaOverride(Isa isa);
  ~IsaOverride();
  IsaOverride(const IsaOverride&) = delete;
  IsaOverride& operator=(const IsaOverride&) = delete;

 private:
  Isa previous_;
};

// sum_k (1 - mask[k]) * same[k] + mask[k] * flip[k]
//
// With mask in {0, 1} this is the interference seen by one receiver given
// the relative spins; mask 0.5 yields the mean of the two hypotheses.
double spin_weighted_sum(std::span<const double> same, std::span<const double> flip,
                         std::span<const double> mask);

// out[i] = a[i] * b[i]
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

// Explicit variants. The AVX2 entry points must only be called when
// isa_available(Isa::Avx2) holds.
namespace scalar {
double spin_weighted_sum(const double* same, const double* flip, const double* mask,
                         std::size_t n);
void multiply(const double* a, const double* b, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
double spin_weighted_sum(const double* same, const double* flip, const double* mask,
                         std::size_t n);
void multiply(const double* a, const double* b, double* out, std::size_t n);
}  // namespace avx2

}  // namespace spinsched::kernels
