#pragma once

#include "stokes_gauss/stokes.hpp"

namespace sg {

// c / c' positive real for every pair
bool is_aligned(const std::vector<GaussRational>& C);
CirclePoint canonical_theta(const std::vector<GaussRational>& C);

std::vector<GaussRational> laplace_exponents(const std::vector<GaussRational>& C);
CirclePoint hat_theta(const CirclePoint& theta0);

// forward transform: aligned layout at the canonical theta0
StokesFiltrations laplace_transform(const StokesFiltrations& data);
StokesMatrices laplace_transform(const StokesMatrices& data);
// inverse transform: aligned layout at pi minus the canonical direction of -1/C
StokesFiltrations inverse_laplace_transform(const StokesFiltrations& data);
StokesMatrices inverse_laplace_transform(const StokesMatrices& data);

// moves theta0 to the canonical direction when no Stokes direction lies in between
StokesFiltrations align_base_direction(const StokesFiltrations& data);

// distinct positive rational multiples of a Pythagorean unit, at the canonical theta0
ExponentLayout random_aligned_layout(const std::vector<int>& ranks, std::uint64_t seed);

// L_{<nu gamma} of filtration data, as a sum of the L_{<=nu c}
Subspace filtration_below(const StokesFiltrations& data, const GaussRational& gamma, int nu);

}  // namespace sg
