// Compiled with -mavx2 on x86-64; everything else gets the scalar fallback.

#include "pcube/orbit_kernel.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace pcube::orbits::kernel {

#if defined(__AVX2__)

bool avx2_compiled() { return true; }

bool avx2_available()
{
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok;
}

void image_codes_avx2(const Plan& plan, const std::int32_t* coords, std::size_t stride, std::size_t n,
                      std::uint32_t* out)
{
    if (!plan.simd_exact) {
        image_codes_scalar(plan, coords, stride, n, out);
        return;
    }
    const int d = plan.dim;
    const std::size_t body = n & ~std::size_t{7};
    const __m256i zero = _mm256_setzero_si256();
    for (std::size_t k = 0; k < body; k += 8) {
        __m256i c[kMaxDim];
        for (int j = 0; j < d; ++j)
            c[j] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(coords + static_cast<std::size_t>(j) * stride + k));
        __m256i code = zero;
        for (int i = 0; i < d; ++i) {
            __m256i acc = zero;
            for (int j = 0; j < d; ++j) {
                const std::int32_t e = plan.mat[i * d + j];
                if (e)
                    acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(_mm256_set1_epi32(e), c[j]));
            }
            // acc < 2^24: float quotient is off by at most one
            const __m256i m = _mm256_set1_epi32(plan.mod[i]);
            const __m256 qf = _mm256_mul_ps(_mm256_cvtepi32_ps(acc), _mm256_set1_ps(plan.inv_mod[i]));
            __m256i r = _mm256_sub_epi32(acc, _mm256_mullo_epi32(_mm256_cvttps_epi32(qf), m));
            r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), m));
            r = _mm256_sub_epi32(r, _mm256_andnot_si256(_mm256_cmpgt_epi32(m, r), m));
            code = _mm256_add_epi32(code, _mm256_mullo_epi32(r, _mm256_set1_epi32(static_cast<std::int32_t>(plan.radix[i]))));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k), code);
    }
    if (body < n) {
        // tail: shift the base pointer, keep the stride
        image_codes_scalar(plan, coords + body, stride, n - body, out + body);
    }
}

#else

bool avx2_compiled() { return false; }
bool avx2_available() { return false; }

void image_codes_avx2(const Plan& plan, const std::int32_t* coords, std::size_t stride, std::size_t n,
                      std::uint32_t* out)
{
    image_codes_scalar(plan, coords, stride, n, out);
}

#endif

} // namespace pcube::orbits::kernel
