#pragma once

#include <complex>
#include <span>

namespace hyperheat {

/**
 * Neumaier-compensated accumulator for complex values; real and imaginary
 * parts are compensated independently.
 */
class CompensatedSum {
public:
    void add(std::complex<double> v);
    std::complex<double> value() const;

private:
    double re_ = 0.0, re_c_ = 0.0;
    double im_ = 0.0, im_c_ = 0.0;
};

std::complex<double> compensated_sum(std::span<const std::complex<double>> values);

}  // namespace hyperheat
