#pragma once

#include "stokes_gauss/linalg.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sg {

enum class Field { Q, QI };
const char* field_name(Field f);

struct ExponentLayout {
    std::vector<GaussRational> C;
    std::vector<int> ranks;
    CirclePoint theta0;
    bool pure = true;

    int n() const { return static_cast<int>(C.size()); }
    int total_rank() const;
    int offset(int i) const;
    std::vector<int> coords(int i) const;  // coordinate indices of block i
    int index_of(const GaussRational& c) const;  // -1 if absent
    CirclePoint base(int nu) const { return theta0.rotate(nu); }

    friend bool operator==(const ExponentLayout& a, const ExponentLayout& b) {
        return a.C == b.C && a.ranks == b.ranks && a.theta0 == b.theta0 && a.pure == b.pure;
    }
};

// sorts by the order at theta0; rejects non-generic theta0 and rank-0 blocks
ExponentLayout sort_exponents(const std::vector<std::pair<GaussRational, int>>& exps, const CirclePoint& theta0, bool pure = true);

// checks the sort order and genericity of an already ordered layout
void check_layout(const ExponentLayout& layout);

enum class Form { General, Variant };

// S[nu] holds S^{(nu,nu-1)}: S[1]=S10, S[2]=S21, S[3]=S32, S[0]=S03
struct StokesMatrices {
    ExponentLayout layout;
    Field field = Field::Q;
    Form form = Form::Variant;
    std::array<Matrix, 4> S;
    std::vector<Matrix> T;  // Variant only
    Matrix frame;           // basis of L = sum G^{(0)}; empty means identity

    friend bool operator==(const StokesMatrices& a, const StokesMatrices& b) {
        return a.layout == b.layout && a.field == b.field && a.form == b.form && a.S == b.S && a.T == b.T &&
               a.frame == b.frame;
    }
};

struct StokesFiltrations {
    ExponentLayout layout;
    Field field = Field::Q;
    int dim = 0;
    std::array<std::vector<Subspace>, 4> F;  // F[nu][i] = L_{<=nu i}

    friend bool operator==(const StokesFiltrations& a, const StokesFiltrations& b) {
        return a.layout == b.layout && a.field == b.field && a.dim == b.dim && a.F == b.F;
    }
};

struct Violation {
    std::string invariant;
    std::string detail;
};

std::vector<Violation> validate(const StokesMatrices& data);
std::vector<Violation> validate(const StokesFiltrations& data);

// general-form gluing matrices g[nu] = S^{(nu,nu-1)} with T folded into g[0]
std::array<Matrix, 4> gluing(const StokesMatrices& data);
// chart frames: x_nu = P[nu] x_0
std::array<Matrix, 4> chart_frames(const StokesMatrices& data);

StokesMatrices to_general(const StokesMatrices& data);
StokesMatrices normalize(const StokesMatrices& data);
Matrix monodromy(const StokesMatrices& data);
std::vector<Matrix> formal_monodromies(const StokesMatrices& data);

StokesFiltrations to_filtrations(const StokesMatrices& data);
StokesMatrices to_matrices(const StokesFiltrations& data);
// graded pieces G_i^{(nu)} = L_{<=nu i} ∩ L_{<=nu+1 i}
std::vector<Subspace> graded_pieces(const StokesFiltrations& data, int nu);

// filtration-form morphism L -> L'
struct StokesMorphism {
    StokesFiltrations source;
    StokesFiltrations target;
    Matrix map;  // target.dim x source.dim
};

bool is_morphism(const StokesFiltrations& s, const StokesFiltrations& t, const Matrix& map);
// graded blocks lambda_c^{(nu)}, in echelon bases of the graded pieces
std::vector<Matrix> morphism_blocks(const StokesMorphism& m, int nu);
std::vector<Matrix> hom_space(const StokesFiltrations& s, const StokesFiltrations& t);

struct SubObject {
    StokesFiltrations data;
    StokesMorphism map;  // inclusion (kernel) or projection (cokernel)
};

SubObject kernel_morphism(const StokesMorphism& m);
SubObject cokernel_morphism(const StokesMorphism& m);

StokesFiltrations extend_layout(const StokesFiltrations& data, const ExponentLayout& bigger);
StokesFiltrations direct_sum(const StokesFiltrations& a, const StokesFiltrations& b);
StokesFiltrations trivial(const GaussRational& c0, int dim, const CirclePoint& theta0, Field field = Field::Q);

struct TrivialExtension {
    StokesFiltrations data;
    StokesMorphism inclusion;   // data-part -> data
    StokesMorphism projection;  // data -> trivial part
};

TrivialExtension add_trivial(const StokesFiltrations& data, const GaussRational& c0, int dim);

struct Rigidity {
    long eta = 0;
    long sum_r2 = 0;
    long rig = 0;
    bool rigid = false;
};

Rigidity rigidity_index(const StokesMatrices& data);
long centralizer_dim(const Matrix& t);

StokesMatrices random_data(const ExponentLayout& layout, std::uint64_t seed);
// Gaussian exponents with small numerators, theta0 = 0 generic for C and 0
ExponentLayout random_layout(const std::vector<int>& ranks, std::uint64_t seed);

}  // namespace sg
