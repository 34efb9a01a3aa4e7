#include "hyperheat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hyperheat/summation.hpp"

namespace hyperheat {

GridParams::GridParams(int n) : n_(n), n_sq_(static_cast<Index>(n) * n) {
    if (n < 1) {
        throw std::invalid_argument("grid parameter n must be positive, got " + std::to_string(n));
    }
}

Index GridParams::floor_index(double x) const {
    const double v = x * n_;
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) {
        return static_cast<Index>(r);
    }
    return static_cast<Index>(std::floor(v));
}

Index GridParams::wrap(Index j) const {
    const Index period = 2 * n_sq_;
    Index r = (j + n_sq_) % period;
    if (r < 0) r += period;
    return r - n_sq_;
}

GridFunction::GridFunction(GridParams params, std::vector<Complex> values)
    : params_(params), values_(std::move(values)) {
    if (values_.size() != params_.space_count()) {
        throw std::invalid_argument("grid function needs " + std::to_string(params_.space_count()) +
                                    " values, got " + std::to_string(values_.size()));
    }
}

GridFunction GridFunction::zeros(GridParams params) {
    return GridFunction(params, std::vector<Complex>(params.space_count()));
}

GridFunction GridFunction::constant(GridParams params, Complex value) {
    return GridFunction(params, std::vector<Complex>(params.space_count(), value));
}

GridFunction GridFunction::from_index(GridParams params, const std::function<Complex(Index)>& fn) {
    std::vector<Complex> v(params.space_count());
    for (std::size_t m = 0; m < v.size(); ++m) v[m] = fn(params.index_at(m));
    return GridFunction(params, std::move(v));
}

GridFunction GridFunction::from_coordinate(GridParams params, const std::function<Complex(double)>& fn) {
    return from_index(params, [&](Index j) { return fn(params.coordinate(j)); });
}

GridFunction GridFunction::delta(GridParams params, Index j, Complex value) {
    if (!params.contains(j)) throw std::out_of_range("delta index outside grid");
    std::vector<Complex> v(params.space_count());
    v[params.offset(j)] = value;
    return GridFunction(params, std::move(v));
}

Complex GridFunction::at(Index j) const {
    if (!params_.contains(j)) {
        throw std::out_of_range("space index " + std::to_string(j) + " outside grid");
    }
    return values_[params_.offset(j)];
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridFunction::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

GridFunction GridFunction::conj() const {
    std::vector<Complex> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](Complex c) { return std::conj(c); });
    return GridFunction(params_, std::move(v));
}

GridFunction GridFunction::real_part() const {
    std::vector<Complex> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](Complex c) { return Complex(c.real(), 0.0); });
    return GridFunction(params_, std::move(v));
}

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.params() != b.params()) throw std::invalid_argument("grid functions live on different grids");
}

template <typename Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
    require_same_grid(a, b);
    std::vector<Complex> v(a.size());
    auto av = a.values();
    auto bv = b.values();
    for (std::size_t m = 0; m < v.size(); ++m) v[m] = op(av[m], bv[m]);
    return GridFunction(a.params(), std::move(v));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, std::plus<>{});
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, std::minus<>{});
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, std::multiplies<>{});
}

GridFunction operator*(Complex s, const GridFunction& f) {
    std::vector<Complex> v(f.size());
    auto fv = f.values();
    for (std::size_t m = 0; m < v.size(); ++m) v[m] = s * fv[m];
    return GridFunction(f.params(), std::move(v));
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    double m = 0.0;
    auto av = a.values();
    auto bv = b.values();
    for (std::size_t k = 0; k < av.size(); ++k) m = std::max(m, std::abs(av[k] - bv[k]));
    return m;
}

Field::Field(GridFunction initial, Producer producer, std::size_t last_slice)
    : initial_(std::move(initial)), producer_(std::move(producer)), last_slice_(last_slice) {
    if (last_slice_ >= initial_.params().time_count()) {
        throw std::out_of_range("field extends past the last time index");
    }
}

Field::Field(GridFunction initial, Producer producer)
    : Field(initial, std::move(producer), initial.params().time_count() - 1) {}

GridFunction Field::slice(std::size_t i) const {
    if (i > last_slice_) {
        throw std::out_of_range("time index " + std::to_string(i) + " beyond field end " +
                                std::to_string(last_slice_));
    }
    if (i == 0) return initial_;
    GridFunction s = producer_(i);
    if (s.params() != initial_.params()) throw std::logic_error("field producer changed grid");
    return s;
}

Complex integrate(const GridFunction& f) {
    return compensated_sum(f.values()) / static_cast<double>(f.params().n());
}

GridFunction d_t(const Field& f, std::size_t i) {
    const auto& p = f.params();
    if (i >= p.time_count()) {
        throw std::out_of_range("time index " + std::to_string(i) + " outside [0, n^2 - 1]");
    }
    if (i + 1 == p.time_count()) return GridFunction::zeros(p);
    const double n = p.n();
    return n * (f.slice(i + 1) - f.slice(i));
}

GridFunction d_x(const GridFunction& f) {
    const auto& p = f.params();
    const double n = p.n();
    auto fv = f.values();
    std::vector<Complex> v(fv.size());
    for (std::size_t m = 0; m + 1 < fv.size(); ++m) v[m] = n * (fv[m + 1] - fv[m]);
    v.back() = 0.0;
    return GridFunction(p, std::move(v));
}

GridFunction d_xx(const GridFunction& f) { return d_x(d_x(f)); }

}  // namespace hyperheat
