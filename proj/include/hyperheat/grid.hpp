#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace hyperheat {

using Complex = std::complex<double>;
using Index = std::int64_t;

/**
 * Finite grid with parameter n.
 *
 * Space points are j/n for j in [-n^2, n^2 - 1], covering [-n, n) with
 * spacing 1/n. Time points are i/n for i in [0, n^2 - 1]. The counting
 * measure carries weight 1/n per point in both directions.
 */
class GridParams {
public:
    explicit GridParams(int n);

    int n() const { return n_; }
    Index n_squared() const { return n_sq_; }

    /// 2n^2 space points.
    std::size_t space_count() const { return static_cast<std::size_t>(2 * n_sq_); }
    /// n^2 time points.
    std::size_t time_count() const { return static_cast<std::size_t>(n_sq_); }
    /// Grid spacing, time step and integration weight (all 1/n).
    double dx() const { return 1.0 / n_; }

    Index first_index() const { return -n_sq_; }
    Index last_index() const { return n_sq_ - 1; }
    bool contains(Index j) const { return j >= -n_sq_ && j < n_sq_; }

    /// Storage offset of space index j.
    std::size_t offset(Index j) const { return static_cast<std::size_t>(j + n_sq_); }
    Index index_at(std::size_t offset) const { return static_cast<Index>(offset) - n_sq_; }
    double coordinate(Index j) const { return static_cast<double>(j) / n_; }

    /// floor(n*x), the cell containing x. Products within 1e-9 of an
    /// integer snap to it so that e.g. x = 0.29, n = 100 lands on 29.
    Index floor_index(double x) const;

    /// j mod 2n^2 mapped back into [-n^2, n^2 - 1].
    Index wrap(Index j) const;

    friend bool operator==(const GridParams&, const GridParams&) = default;

private:
    int n_;
    Index n_sq_;
};

/**
 * Complex values on the 2n^2 space points of one grid.
 *
 * Value j stands for the constant on the cell [j/n, (j+1)/n). Instances are
 * immutable once built; arithmetic returns new functions.
 */
class GridFunction {
public:
    GridFunction(GridParams params, std::vector<Complex> values);

    static GridFunction zeros(GridParams params);
    static GridFunction constant(GridParams params, Complex value);
    /// Samples fn(j) for every space index j.
    static GridFunction from_index(GridParams params, const std::function<Complex(Index)>& fn);
    /// Samples fn(j/n) for every space index j.
    static GridFunction from_coordinate(GridParams params, const std::function<Complex(double)>& fn);
    /// value at index j, zero elsewhere.
    static GridFunction delta(GridParams params, Index j, Complex value = 1.0);

    const GridParams& params() const { return params_; }
    std::size_t size() const { return values_.size(); }
    std::span<const Complex> values() const { return values_; }

    /// Value at space index j (bounds-checked).
    Complex at(Index j) const;
    Complex operator[](Index j) const { return values_[params_.offset(j)]; }

    double max_abs() const;
    bool all_finite() const;

    GridFunction conj() const;
    GridFunction real_part() const;

    friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
    /// Pointwise product.
    friend GridFunction operator*(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(Complex s, const GridFunction& f);
    friend GridFunction operator*(const GridFunction& f, Complex s) { return s * f; }

private:
    GridParams params_;
    std::vector<Complex> values_;
};

/// Largest |a_j - b_j|.
double max_abs_difference(const GridFunction& a, const GridFunction& b);

/**
 * Time-indexed family of slices f(i/n, .), produced on demand.
 *
 * Slices are never all held at once; the producer is called for each
 * requested index. Slice 0 is the supplied boundary condition.
 */
class Field {
public:
    using Producer = std::function<GridFunction(std::size_t)>;

    /// `producer(0)` is ignored in favour of `initial`.
    Field(GridFunction initial, Producer producer, std::size_t last_slice);
    /// Field available on every time index [0, n^2 - 1].
    Field(GridFunction initial, Producer producer);

    const GridParams& params() const { return initial_.params(); }
    const GridFunction& initial() const { return initial_; }
    /// Highest time index this field can produce.
    std::size_t last_slice() const { return last_slice_; }

    /// Throws std::out_of_range past last_slice().
    GridFunction slice(std::size_t i) const;

private:
    GridFunction initial_;
    Producer producer_;
    std::size_t last_slice_;
};

/// (1/n) * sum of all values.
Complex integrate(const GridFunction& f);

/**
 * Forward time difference n*(f(i+1) - f(i)); the zero function at the top
 * time index n^2 - 1. Throws std::out_of_range for i > n^2 - 1 or when the
 * field cannot produce slice i + 1.
 */
GridFunction d_t(const Field& f, std::size_t i);

/// Forward space difference with d_x(f)_{n^2-1} = 0.
GridFunction d_x(const GridFunction& f);

/// d_x(d_x(f)); same rounding as composing the two differences.
GridFunction d_xx(const GridFunction& f);

}  // namespace hyperheat
