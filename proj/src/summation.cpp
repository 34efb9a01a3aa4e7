#include "hyperheat/summation.hpp"

#include <cmath>

namespace hyperheat {

namespace {

inline void neumaier(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
        comp += (sum - t) + v;
    } else {
        comp += (v - t) + sum;
    }
    sum = t;
}

}  // namespace

void CompensatedSum::add(std::complex<double> v) {
    neumaier(re_, re_c_, v.real());
    neumaier(im_, im_c_, v.imag());
}

std::complex<double> CompensatedSum::value() const { return {re_ + re_c_, im_ + im_c_}; }

std::complex<double> compensated_sum(std::span<const std::complex<double>> values) {
    CompensatedSum s;
    for (const auto& v : values) s.add(v);
    return s.value();
}

}  // namespace hyperheat
