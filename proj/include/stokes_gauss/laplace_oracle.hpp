#pragma once

#include "stokes_gauss/circle_sheaf.hpp"
#include "stokes_gauss/laplace.hpp"

#include <optional>
#include <string>

namespace sg {

// |z| as a rational, when it is one
std::optional<Rational> rational_modulus(const GaussRational& z);

enum class TraceKind { FullLine, Empty, TwoComponents, OneLens };
const char* trace_name(TraceKind k);

// region (-1)^nu (|c| s^2 - 2 s + |gamma|) < 0 along s >= 0
struct HalflineTrace {
    TraceKind kind = TraceKind::Empty;
    std::optional<QuadReal> lo, hi;  // roots, when the moduli are rational
};

HalflineTrace halfline_trace(const GaussRational& c, const GaussRational& gamma, int nu);
// odd nu only; L coordinates
Subspace halfline_filtration(const StokesMatrices& data, const GaussRational& gamma, int nu);

// plane in diagonal coordinates u = x - y, v = x + y, compactified by the circle of directions
struct DiscModel {
    int nu = 0;
    Rational g;
    std::vector<Rational> moduli;
    CellComplex complex;
    std::vector<int> chart;
    std::vector<std::vector<int>> members;  // exponent indices present on each cell
    std::array<int, 8> boundary_vertex{};   // direction k pi / 4
    std::array<int, 8> boundary_arc{};      // from direction k to k + 1
    int origin = -1;
};

DiscModel build_disc_model(const ExponentLayout& layout, const GaussRational& gamma, int nu);
CellSheaf sheaf_G_lt_gamma(const StokesMatrices& data, const DiscModel& model);
CellSheaf sheaf_G(const StokesMatrices& data, const DiscModel& model);

struct DiscFiltration {
    Subspace subspace;  // L coordinates
    CohomologyResult h;
};

// image of H^1(G_{<gamma}) in L, read off the boundary between the cut directions of charts 2 and 0
DiscFiltration disc_filtration(const StokesMatrices& data, const DiscModel& model);

struct VerifyCase {
    int nu = 0;
    GaussRational gamma;
    long oracle_dim = 0;
    long predicted_dim = 0;
    std::vector<long> h;  // cohomology of G_{<gamma}
    bool halfline_checked = false;
    bool halfline_equal = true;
    bool equal = false;
};

struct VerifyReport {
    std::vector<VerifyCase> cases;
    bool pass = true;
};

std::vector<GaussRational> default_gamma_samples(const ExponentLayout& transformed);
VerifyReport verify_theorem(const StokesFiltrations& data, const std::vector<GaussRational>& gammas = {});

}  // namespace sg
