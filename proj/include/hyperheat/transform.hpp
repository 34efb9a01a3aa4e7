#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hyperheat/grid.hpp"

namespace hyperheat {

/**
 * Discrete Fourier pair on the grid.
 *
 *   forward(f)(k/n) = (1/n) sum_j f_j exp(-i pi j k / n^2)
 *   inverse(f)(k/n) = (1/n) sum_j f_j exp(+i pi j k / n^2)
 *
 * The kernel has period 2n^2 in j and in k, so inverse(forward(f)) = 2f and
 * forward(inverse(f)) = 2f exactly.
 */
enum class TransformPath {
    automatic,  ///< direct for n <= kDirectPathMaxN, fast otherwise
    direct,     ///< compensated O(n^4) summation
    fast,       ///< size-2n^2 FFT after the index shift
};

inline constexpr int kDirectPathMaxN = 16;

/**
 * exp(sign * i pi r / n^2) for every residue r of j*k modulo 2n^2.
 *
 * Phases are looked up by reducing the exact integer product, so there is no
 * loss of accuracy for large |j*k|.
 */
class PhaseTable {
public:
    PhaseTable(GridParams params, int sign);

    Complex operator()(Index j, Index k) const;
    /// exp(sign * i pi r / n^2) for any integer r.
    Complex of_residue(Index r) const;

private:
    Index period_;
    std::vector<Complex> table_;
};

GridFunction forward(const GridFunction& f, TransformPath path = TransformPath::automatic);
GridFunction inverse(const GridFunction& f, TransformPath path = TransformPath::automatic);

/**
 * Transform restricted to a contiguous source support and a contiguous
 * block of output indices.
 *
 * `source` holds the values at space indices source_first, source_first+1,
 * ...; all other values are zero. Returns the transform at
 * target_first, ..., target_first + target_count - 1. `sign` is -1 for
 * forward and +1 for inverse. Each output is a compensated sum computed by
 * one thread, so the result does not depend on `threads`.
 */
std::vector<Complex> partial_transform(const GridParams& params, int sign, Index source_first,
                                       std::span<const Complex> source, Index target_first,
                                       std::size_t target_count, int threads = 1);

/// partial_transform evaluated at an arbitrary list of output indices.
std::vector<Complex> transform_at(const GridParams& params, int sign, Index source_first,
                                  std::span<const Complex> source, std::span<const Index> targets,
                                  int threads = 1);

/// psi(x) = n (exp(i pi x / n) - 1) and phi(x) = n (exp(-i pi x / n) - 1).
struct SpectralSymbols {
    GridFunction psi;
    GridFunction phi;

    explicit SpectralSymbols(GridParams params);
};

/// psi at frequency index k, i.e. at x = k/n.
Complex psi_at(const GridParams& params, Index k);
Complex phi_at(const GridParams& params, Index k);

/**
 * Frequency-space boundary terms that appear when a forward difference is
 * summed by parts on the non-periodic grid:
 *
 *   forward(d_x f)  = psi   forward(f) - e
 *   forward(d_xx f) = psi^2 forward(f) - f_corr
 *
 * Every term is proportional to one of f(-n), f(-n + 1/n), f((n^2-1)/n).
 */
struct BoundaryCorrections {
    GridFunction c;
    GridFunction d;
    GridFunction c_prime;
    GridFunction d_prime;
    GridFunction e;
    GridFunction e_prime;
    GridFunction f_corr;
};

BoundaryCorrections boundary_corrections(const GridFunction& slice);

/// max_k |forward(d_x s) - (psi forward(s) - e)|.
double check_dx_identity(const GridFunction& slice);

/// max_k |forward(d_xx s) - (psi^2 forward(s) - f_corr)|.
double check_dxx_identity(const GridFunction& slice);

namespace detail {
/// FFT-backed transform; sign as in partial_transform.
GridFunction fast_transform(const GridFunction& f, int sign);
}  // namespace detail

}  // namespace hyperheat
