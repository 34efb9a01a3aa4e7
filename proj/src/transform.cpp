#include "hyperheat/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyperheat/parallel.hpp"
#include "hyperheat/summation.hpp"

namespace hyperheat {

PhaseTable::PhaseTable(GridParams params, int sign) : period_(2 * params.n_squared()) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("phase sign must be +1 or -1");
    const double n_sq = static_cast<double>(params.n_squared());
    table_.resize(static_cast<std::size_t>(period_));
    for (Index r = 0; r < period_; ++r) {
        // reduce to (-n^2, n^2] so the angle stays within [-pi, pi]
        const Index centred = r > params.n_squared() ? r - period_ : r;
        const double angle = sign * std::numbers::pi * static_cast<double>(centred) / n_sq;
        table_[static_cast<std::size_t>(r)] = {std::cos(angle), std::sin(angle)};
    }
}

Complex PhaseTable::of_residue(Index r) const {
    Index m = r % period_;
    if (m < 0) m += period_;
    return table_[static_cast<std::size_t>(m)];
}

Complex PhaseTable::operator()(Index j, Index k) const { return of_residue(j * k); }

namespace {

GridFunction direct_transform(const GridFunction& f, int sign) {
    const auto& p = f.params();
    auto values = partial_transform(p, sign, p.first_index(), f.values(), p.first_index(), p.space_count());
    return GridFunction(p, std::move(values));
}

GridFunction transform(const GridFunction& f, int sign, TransformPath path) {
    if (path == TransformPath::automatic) {
        path = f.params().n() <= kDirectPathMaxN ? TransformPath::direct : TransformPath::fast;
    }
    return path == TransformPath::direct ? direct_transform(f, sign) : detail::fast_transform(f, sign);
}

}  // namespace

GridFunction forward(const GridFunction& f, TransformPath path) { return transform(f, -1, path); }

GridFunction inverse(const GridFunction& f, TransformPath path) { return transform(f, +1, path); }

std::vector<Complex> partial_transform(const GridParams& params, int sign, Index source_first,
                                       std::span<const Complex> source, Index target_first,
                                       std::size_t target_count, int threads) {
    std::vector<Index> targets(target_count);
    for (std::size_t t = 0; t < target_count; ++t) targets[t] = target_first + static_cast<Index>(t);
    return transform_at(params, sign, source_first, source, targets, threads);
}

std::vector<Complex> transform_at(const GridParams& params, int sign, Index source_first,
                                  std::span<const Complex> source, std::span<const Index> targets,
                                  int threads) {
    if (!source.empty() && (!params.contains(source_first) ||
                            !params.contains(source_first + static_cast<Index>(source.size()) - 1))) {
        throw std::out_of_range("transform source support outside grid");
    }
    const PhaseTable phase(params, sign);
    const double weight = 1.0 / params.n();
    std::vector<Complex> out(targets.size());
    parallel_for(targets.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            CompensatedSum acc;
            for (std::size_t m = 0; m < source.size(); ++m) {
                acc.add(source[m] * phase(source_first + static_cast<Index>(m), targets[t]));
            }
            out[t] = weight * acc.value();
        }
    });
    return out;
}

Complex psi_at(const GridParams& params, Index k) {
    // n (e^{i theta} - 1) = 2 i n sin(theta/2) e^{i theta/2}, without cancellation
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(params.n_squared());
    return Complex(0.0, 2.0 * params.n() * std::sin(theta / 2)) * std::polar(1.0, theta / 2);
}

Complex phi_at(const GridParams& params, Index k) { return std::conj(psi_at(params, k)); }

SpectralSymbols::SpectralSymbols(GridParams params)
    : psi(GridFunction::from_index(params, [&](Index k) { return psi_at(params, k); })),
      phi(GridFunction::from_index(params, [&](Index k) { return phi_at(params, k); })) {}

BoundaryCorrections boundary_corrections(const GridFunction& slice) {
    const auto& p = slice.params();
    const double n = p.n();
    const Index top = p.last_index();
    const Index bottom = p.first_index();

    const Complex f_top = slice[top];
    const Complex f_bottom = slice[bottom];
    const Complex dfdx_bottom = n * (slice[bottom + 1] - f_bottom);  // d_x f at -n

    const PhaseTable minus(p, -1);
    const PhaseTable plus(p, +1);
    const SpectralSymbols sym(p);

    std::vector<Complex> c(p.space_count()), d(p.space_count()), cp(p.space_count()), dp(p.space_count());
    for (std::size_t m = 0; m < p.space_count(); ++m) {
        const Index k = p.index_at(m);
        const Complex top_phase = minus(top, k);        // exp(-i pi ((n^2-1)/n) y)
        const Complex bottom_phase = minus(bottom, k);  // exp(-i pi (-n) y)
        const Complex shift = plus(1, k);               // exp(i pi y / n)
        c[m] = f_top * top_phase - f_bottom * bottom_phase;
        d[m] = -(1.0 / n) * f_bottom * shift * bottom_phase;
        cp[m] = -dfdx_bottom * bottom_phase;
        dp[m] = -(1.0 / n) * dfdx_bottom * shift * bottom_phase;
    }
    GridFunction cf(p, std::move(c)), df(p, std::move(d)), cpf(p, std::move(cp)), dpf(p, std::move(dp));
    GridFunction e = sym.phi * df - cf;
    GridFunction e_prime = sym.phi * dpf - cpf;
    GridFunction f_corr = sym.psi * sym.phi * df - sym.psi * cf + sym.phi * dpf - cpf;
    return BoundaryCorrections{std::move(cf), std::move(df),         std::move(cpf),   std::move(dpf),
                               std::move(e),  std::move(e_prime), std::move(f_corr)};
}

double check_dx_identity(const GridFunction& slice) {
    const SpectralSymbols sym(slice.params());
    const auto corr = boundary_corrections(slice);
    return max_abs_difference(forward(d_x(slice)), sym.psi * forward(slice) - corr.e);
}

double check_dxx_identity(const GridFunction& slice) {
    const SpectralSymbols sym(slice.params());
    const auto corr = boundary_corrections(slice);
    return max_abs_difference(forward(d_xx(slice)), sym.psi * sym.psi * forward(slice) - corr.f_corr);
}

}  // namespace hyperheat
