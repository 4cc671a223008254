#include "pcube/orbit_kernel.hpp"

#include <stdexcept>

namespace pcube::orbits::kernel {

Plan make_plan(const h4::H4Model& model, const h4::Matrix& m)
{
    const auto n = static_cast<int>(model.dim());
    if (n > kMaxDim)
        throw std::invalid_argument("orbit kernel: model dimension above 8");
    Plan plan;
    plan.dim = n;
    const h4::Matrix r = h4::reduce(model, m);
    std::int64_t max_m = 1;
    std::uint64_t radix = 1;
    for (int i = n - 1; i >= 0; --i) {
        plan.mod[i] = static_cast<std::int32_t>(model.moduli[i]);
        plan.inv_mod[i] = 1.0f / static_cast<float>(model.moduli[i]);
        plan.radix[i] = static_cast<std::uint32_t>(radix);
        radix *= static_cast<std::uint64_t>(model.moduli[i]);
        max_m = std::max<std::int64_t>(max_m, model.moduli[i]);
    }
    for (int i = 0; i < n * n; ++i)
        plan.mat[i] = static_cast<std::int32_t>(r[static_cast<std::size_t>(i)]);
    plan.simd_exact = static_cast<std::int64_t>(n) * max_m * max_m < (std::int64_t{1} << 24);
    return plan;
}

void image_codes_scalar(const Plan& plan, const std::int32_t* coords, std::size_t stride, std::size_t n,
                        std::uint32_t* out)
{
    const int d = plan.dim;
    for (std::size_t k = 0; k < n; ++k) {
        std::uint32_t code = 0;
        for (int i = 0; i < d; ++i) {
            std::int64_t acc = 0;
            for (int j = 0; j < d; ++j)
                acc += static_cast<std::int64_t>(plan.mat[i * d + j]) * coords[static_cast<std::size_t>(j) * stride + k];
            code += static_cast<std::uint32_t>(acc % plan.mod[i]) * plan.radix[i];
        }
        out[k] = code;
    }
}

ImageFn select(Backend b)
{
    switch (b) {
    case Backend::Scalar: return &image_codes_scalar;
    case Backend::Avx2:
        if (!avx2_available())
            throw std::runtime_error("orbit kernel: AVX2 requested but not available");
        return &image_codes_avx2;
    case Backend::Auto: break;
    }
    return avx2_available() ? &image_codes_avx2 : &image_codes_scalar;
}

const char* backend_name(Backend b)
{
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    default: return avx2_available() ? "avx2" : "scalar";
    }
}

} // namespace pcube::orbits::kernel
