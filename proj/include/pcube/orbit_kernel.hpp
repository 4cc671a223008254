#pragma once

// Batched "apply matrix, reduce, re-encode" step of the orbit BFS.
//
// Input states are given coordinate-major: coords[j * stride + k] is
// coordinate j of state k. The output is the mixed-radix code of the image of
// each state. Two interchangeable implementations exist; the AVX2 one is used
// when the CPU supports it and the plan's accumulator bound keeps its float
// reciprocal reduction exact.

#include <cstddef>
#include <cstdint>

#include "pcube/h4_models.hpp"

namespace pcube::orbits::kernel {

inline constexpr int kMaxDim = 8;

struct Plan {
    int dim = 0;
    std::int32_t mod[kMaxDim]{};
    std::int32_t mat[kMaxDim * kMaxDim]{}; ///< reduced entries, row-major
    std::uint32_t radix[kMaxDim]{};
    float inv_mod[kMaxDim]{};
    bool simd_exact = false; ///< dim * max(m)^2 < 2^24
};

Plan make_plan(const h4::H4Model& model, const h4::Matrix& m);

using ImageFn = void (*)(const Plan&, const std::int32_t* coords, std::size_t stride, std::size_t n,
                         std::uint32_t* out);

void image_codes_scalar(const Plan& plan, const std::int32_t* coords, std::size_t stride, std::size_t n,
                        std::uint32_t* out);

/// Falls back to the scalar kernel when AVX2 was not compiled in or the plan
/// is not exact in single precision.
void image_codes_avx2(const Plan& plan, const std::int32_t* coords, std::size_t stride, std::size_t n,
                      std::uint32_t* out);

bool avx2_compiled();
bool avx2_available(); ///< compiled in and supported by this CPU

enum class Backend { Auto, Scalar, Avx2 };

/// Auto picks AVX2 when available. Requesting Avx2 on a machine without it throws.
ImageFn select(Backend b);
const char* backend_name(Backend b);

} // namespace pcube::orbits::kernel
