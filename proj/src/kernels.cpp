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

#include "spinsched/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace spinsched::kernels {

namespace scalar {

double spin_weighted_sum(const double* same, const double* flip, const double* mask,
                         std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += (1.0 - mask[i]) * same[i] + mask[i] * flip[i];
  }
  return acc;
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace scalar

#ifndef SPINSCHED_HAVE_AVX2
namespace avx2 {
double spin_weighted_sum(const double* same, const double* flip, const double* mask,
                         std::size_t n) {
  return scalar::spin_weighted_sum(same, flip, mask, n);
}
void multiply(const double* a, const double* b, double* out, std::size_t n) {
  scalar::multiply(a, b, out, n);
}
}  // namespace avx2
#endif

namespace {

bool cpu_has_avx2() {
#if defined(SPINSCHED_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  Isa best = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
  if (const char* env = std::getenv("SPINSCHED_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && best == Isa::Avx2) return Isa::Avx2;
  }
  return best;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

void check_sizes(std::size_t a, std::size_t b, std::size_t c) {
  if (a != b || a != c) throw std::invalid_argument("kernels: span length mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

IsaOverride::IsaOverride(Isa isa) : previous_(active_isa()) {
  if (!isa_available(isa)) {
    throw std::runtime_error("kernel variant " + std::string(isa_name(isa)) +
                             " is not available on this machine");
  }
  active().store(isa, std::memory_order_relaxed);
}

IsaOverride::~IsaOverride() { active().store(previous_, std::memory_order_relaxed); }

double spin_weighted_sum(std::span<const double> same, std::span<const double> flip,
                         std::span<const double> mask) {
  check_sizes(same.size(), flip.size(), mask.size());
  if (active_isa() == Isa::Avx2) {
    return avx2::spin_weighted_sum(same.data(), flip.data(), mask.data(), same.size());
  }
  return scalar::spin_weighted_sum(same.data(), flip.data(), mask.data(), same.size());
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  check_sizes(a.size(), b.size(), out.size());
  if (active_isa() == Isa::Avx2) {
    avx2::multiply(a.data(), b.data(), out.data(), a.size());
    return;
  }
  scalar::multiply(a.data(), b.data(), out.data(), a.size());
}

}  // namespace spinsched::kernels
