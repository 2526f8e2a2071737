#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "vpmin/radial.hpp"

namespace vpmin {

/// Cell-averaged density on a small axis-aligned Cartesian box.  Cell
/// (ix, iy, iz) is centered at origin + cell*(i + 0.5 - n/2) per axis, so the
/// geometric center of the box sits at `origin` (between cells when a
/// dimension is even).  Values are stored with iz fastest and ix slowest.
struct CartesianDensity {
    std::array<std::size_t, 3> dims{}; // nx, ny, nz
    double cell = 0.0;                 // cell edge length h
    std::array<double, 3> origin{};    // world coordinates of the box center
    std::vector<double> values;

    std::size_t size() const { return dims[0] * dims[1] * dims[2]; }
    std::size_t flat(std::size_t ix, std::size_t iy, std::size_t iz) const {
        return (ix * dims[1] + iy) * dims[2] + iz;
    }
};

/// Validate and build.  Throws constraint_error on a zero dimension, an axis
/// beyond 32 cells (the pair sums below are O(N^2)), a nonpositive cell size,
/// nonfinite origin, or negative/nonfinite values.
CartesianDensity make_cartesian(std::array<std::size_t, 3> dims, double cell,
                                std::array<double, 3> origin,
                                std::vector<double> values);

/// Total mass h^3 * sum of cell values.
double mass(const CartesianDensity& rho);

/// Pair kernel used by `interaction`: 1/r, optionally saturated at `cut`.
struct Kernel {
    double cut = 0.0; // 0 selects the plain 1/r kernel
};

Kernel coulomb_kernel();
/// min(1/r, c); requires c > 0.
Kernel cutoff_kernel(double c);

/// Symmetric decreasing rearrangement: the value multiset sorted descending
/// onto cells sorted by ascending distance from the box center, ties broken by
/// (ix, iy, iz).  Exactly equimeasurable with the input.
CartesianDensity rearrange(const CartesianDensity& rho);

/// Move the whole field by an integer number of cells.  Throws
/// constraint_error when a nonzero cell would leave the box: mass is never
/// silently truncated.
CartesianDensity translate(const CartesianDensity& rho,
                           std::array<long, 3> shift);

/// h^6-weighted double sum over cell pairs of a_i b_j k(|x_i - x_j|).  The
/// zero-distance self pair uses the kernel value at h/2; applying the same
/// regularization to a density and its rearrangement keeps the comparisons
/// between them meaningful.  Requires identical box geometry.
double interaction(const CartesianDensity& a, const CartesianDensity& b,
                   const Kernel& kernel);

/// Terms of the confinement split at radii r0 and r_big.  With
/// E_pot = -interaction(rho, rho, coulomb)/2, the split satisfies
///   2 E_pot(rho) - 2 E_pot(rho*) >= far_pairs + outer_coulomb - outer_flat
/// up to roundoff, where rho* = rearrange(rho).
struct ConfinementTerms {
    double far_pairs = 0.0;     // [1/(2 r0) - 1/r_big] * mass product of rho
                                // pairs at distance >= r_big
    double outer_coulomb = 0.0; // 1/|x-y| pairs of rho* with an endpoint
                                // outside the r0 ball and distance >= 2 r0
    double outer_flat = 0.0;    // the same pairs at the saturated value
                                // 1/(2 r0)
};

/// Compute the three terms above; regions are decided by exact cell-center
/// distances.  Requires r_big > 2*r0 > 0.
ConfinementTerms confinement_decomposition(const CartesianDensity& rho,
                                           double r0, double r_big);

/// Project onto the lattice's own spherical shells: cells grouped by their
/// exact center distance, one radial node per distance class carrying the
/// mean cell density of that class (the class mass divided by the volume its
/// cells occupy).  The center cell of an odd box joins the innermost positive
/// class.  The result is rescaled so its quadrature mass matches the box mass
/// exactly.
RadialDensity radial_project(const CartesianDensity& rho);

/// Flat CSV `ix,iy,iz,value`.
std::string to_csv(const CartesianDensity& rho);

/// JSON header carrying schema_version, dims, cell, and origin.
std::string to_json(const CartesianDensity& rho);

/// Rebuild a box from the JSON header plus the CSV table; rows may be sparse,
/// omitted cells are zero.
CartesianDensity cartesian_from_csv(const std::string& header_json,
                                    const std::string& csv);

} // namespace vpmin
