#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "hyperheat/transform.hpp"

namespace hyperheat::detail {

namespace {

// FFTW's planner is not thread-safe; execution of a plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

struct PlanDestroy {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

}  // namespace

// With j = a - n^2 and k = b - n^2 (a, b in [0, 2n^2)), and omega = exp(sign 2 pi i / 2n^2):
//   exp(sign i pi j k / n^2) = omega^{ab} (-1)^a (-1)^b (-1)^{n^2}
// so the transform is a standard length-2n^2 DFT with alternating signs.
GridFunction fast_transform(const GridFunction& f, int sign) {
    const auto& p = f.params();
    const std::size_t size = p.space_count();
    static_assert(sizeof(fftw_complex) == sizeof(Complex));

    std::unique_ptr<Complex, FftwFree> in(static_cast<Complex*>(fftw_malloc(sizeof(Complex) * size)));
    std::unique_ptr<Complex, FftwFree> out(static_cast<Complex*>(fftw_malloc(sizeof(Complex) * size)));
    if (!in || !out) throw std::bad_alloc();

    std::unique_ptr<fftw_plan_s, PlanDestroy> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_1d(static_cast<int>(size), reinterpret_cast<fftw_complex*>(in.get()),
                                    reinterpret_cast<fftw_complex*>(out.get()),
                                    sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE));
    }
    if (!plan) throw std::runtime_error("FFTW failed to create a plan");

    auto fv = f.values();
    for (std::size_t a = 0; a < size; ++a) in.get()[a] = (a % 2 == 0) ? fv[a] : -fv[a];
    fftw_execute(plan.get());

    const double weight = (p.n_squared() % 2 == 0 ? 1.0 : -1.0) / p.n();
    std::vector<Complex> values(size);
    for (std::size_t b = 0; b < size; ++b) {
        values[b] = (b % 2 == 0 ? weight : -weight) * out.get()[b];
    }
    return GridFunction(p, std::move(values));
}

}  // namespace hyperheat::detail
