#pragma once

#include "stokes_gauss/stokes.hpp"

#include <array>
#include <map>
#include <vector>

namespace sg {

struct Cell {
    int dim = 0;
    std::vector<std::pair<int, int>> faces;  // (face cell, incidence +-1)
};

struct CellComplex {
    std::vector<Cell> cells;
    int count(int dim) const;
};

// throws InvariantError unless the boundary of every boundary vanishes
void check_complex(const CellComplex& cx);

struct CellSheaf {
    CellComplex complex;
    std::vector<int> stalk;                    // stalk dimension per cell
    std::map<std::pair<int, int>, Matrix> gen;  // (face, cell) -> generization F(face) -> F(cell)
};

struct CohomologyResult {
    std::vector<long> h;            // h[k] for k = 0..top dimension
    std::vector<long> cochain_dim;  // dim C^k
    long chi = 0;
};

std::vector<SparseRow> coboundary_rows(const CellSheaf& f, int k);
std::vector<int> cochain_offsets(const CellSheaf& f);
CohomologyResult cohomology(const CellSheaf& f);

// stalk of a cell = blocks `keep` of chart `chart`; generizations may leak into `allowed` (quotients)
struct CoordinateCell {
    int chart = 0;
    std::vector<int> keep;
    std::vector<int> allowed;
};

CellSheaf coordinate_sheaf(const CellComplex& cx, const std::vector<CoordinateCell>& cells, const StokesMatrices& data);

struct CircleModel {
    ExponentLayout layout;
    GaussRational c0;
    std::vector<CirclePoint> vertices;  // strictly increasing
    std::vector<int> chart;             // chart of vertex k and of edge k = (v_k, v_{k+1})
    std::array<int, 4> base{};          // vertex index of theta_o^{(nu)}

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int edge(int k) const { return n_vertices() + k; }
    CellComplex complex() const;
};

CircleModel build_circle_model(const ExponentLayout& layout, const GaussRational& c0, const std::vector<CirclePoint>& extra = {});
int chart_of(const ExponentLayout& layout, const CirclePoint& p);

// exponent indices c with c <= c0 (or c < c0) on a cell of the model
std::vector<int> blocks_below(const CircleModel& m, int cell, const GaussRational& c0, bool strict);

CellSheaf local_system(const StokesMatrices& data, const CircleModel& m);
CellSheaf sheaf_leq(const StokesMatrices& data, const GaussRational& c0);
CellSheaf sheaf_lt(const StokesMatrices& data, const GaussRational& c0);
CellSheaf sheaf_leq(const StokesMatrices& data, const GaussRational& c0, const CircleModel& m, bool strict);
// gr_c = L_{<=c} / L_{<c}
CellSheaf sheaf_gr(const StokesMatrices& data, const GaussRational& c);
// L / L_{<=c0}
CellSheaf sheaf_quotient(const StokesMatrices& data, const GaussRational& c0, const CircleModel& m);

long h0_leq_closed_form(const StokesMatrices& data, const GaussRational& c0);
// cellular chi of L_{<=c0}, checked against 2 r_{c0} - 2 r
long euler_characteristic_leq(const StokesMatrices& data, const GaussRational& c0);

// pieces Gamma(I^{(nu)}, L_{<=c}) in chart-nu coordinates, one per exponent
std::vector<Subspace> good_interval_splitting(const StokesMatrices& data, int nu, std::uint64_t shuffle_seed = 0);
bool morphism_graded_on_interval(const StokesMorphism& m, int nu);

struct DiscCohomology {
    long h0 = 0, h1 = 0, h2 = 0;
};

DiscCohomology disc_cohomology_Fleq0(const StokesMatrices& data);

}  // namespace sg
