#pragma once

#include <string>
#include <vector>

#include "gepner/geomcharge.hpp"

namespace gepner {

enum class CaseId { C30, C2m1, C40, C3m1, C2m2 };
std::string to_string(CaseId c);  // "(3,0)", "(2,-1)", ...

using KClass = QVec;

// Vertex/arrow/relation counts of the heart quiver for n = 2, epsilon < 0.
// Vertex order: [C(1)], C(0), then the points.
struct QuiverShape {
    std::vector<std::string> vertices;
    Eigen::MatrixXi arrows;     // arrows(i, j): number of arrows i -> j
    Eigen::MatrixXi relations;  // relations(i, j): number of relations on paths i -> j
};

struct CaseLattice {
    CaseId case_id;
    WeightedType type;
    std::vector<std::string> basis;
    CRow zg_row;  // Z_G / C_W of each basis vector
    QMat tau_mat;  // column k = class of tau(basis_k)
    Rational theta;  // window base
    Rational theta_w;
    std::vector<int> dim_R;  // dim R_k for 0 <= k < d
    GeometryDescriptor x;
    int num_points = 0;
    QMat to_mukai;  // (4,0): ch (1,H,pt) -> Mukai
    int d() const { return type.degree; }
    int rank() const { return static_cast<int>(basis.size()); }
};

struct UnsupportedCase : std::invalid_argument {
    explicit UnsupportedCase(const std::string& t) : std::invalid_argument("UnsupportedCase: " + t) {}
};
struct GepnerIdentityFailure : std::logic_error {
    explicit GepnerIdentityFailure(const std::string& t) : std::logic_error("GepnerIdentityFailure: " + t) {}
};

std::vector<int> graded_dims(const WeightedType& t);  // dim R_k, 0 <= k < d
CaseLattice build_lattice(const WeightedType& t);

CycloNum zg_class(const CaseLattice& L, const KClass& v);
bool verify_gepner(const CaseLattice& L);
bool tau_power_is_identity(const CaseLattice& L);  // tau^d = id

// Euler form chi(e_i, e_j) on the basis, and the Serre action G^{-1} G^T it induces.
QMat euler_form(const CaseLattice& L);
QMat serre_from_euler(const QMat& G);
QMat expected_serre(const CaseLattice& L);  // (-1)^{n-2} tau^{-epsilon}

QuiverShape quiver_shape(const CaseLattice& L);  // n = 2 cases only

// Slope with the +-infinity conventions; finite values are real elements of a cyclotomic field.
struct Slope {
    int inf = 0;  // -1, 0, +1
    CycloNum value;
    std::string str() const;
    double approx() const;
};
int compare(const Slope& a, const Slope& b);  // -1, 0, 1
inline bool operator<(const Slope& a, const Slope& b) { return compare(a, b) < 0; }
inline bool operator==(const Slope& a, const Slope& b) { return compare(a, b) == 0; }

Slope slope_mu(const CaseLattice& L, const KClass& v);
enum class TiltSide { Torsion, Free };
TiltSide tilt_side(const Slope& mu);

// Named classes: the basis vectors, tau Psi(O_x), C(j) and C(-epsilon)[-1] where they exist.
KClass basis_vector(const CaseLattice& L, int i);
KClass class_of(const CaseLattice& L, const std::string& name);

// Generators of the tilted heart with their shifts; their Z^dagger phases must lie in
// (theta - theta_W, theta - theta_W + 1].
struct HeartGenerator {
    std::string label;
    KClass v;
    int shift;
};
std::vector<HeartGenerator> heart_generators(const CaseLattice& L);
struct WindowResult {
    std::string label;
    Phase phase;  // phase of Z^dagger of the shifted generator
    bool inside;
};
std::vector<WindowResult> window_check(const CaseLattice& L);

struct PhaseEntry {
    std::string label;
    CycloNum z;  // Z_G itself
    Rational closed_form;
    Phase computed;  // phase_of(z, theta)
    bool ok;
};
std::vector<PhaseEntry> phase_table(const CaseLattice& L);  // epsilon < 0
bool ineqs_hold(const CaseLattice& L);
bool condition_n2(const CaseLattice& L);

bool hom_vanishing_window(const Rational& phi1, const Rational& phi2, int k, const WeightedType& t);

struct FinitePhase {
    std::string label;
    CycloNum z;
    Rational phase;
    bool ray_consistent;
};
std::vector<FinitePhase> finite_phases(const WeightedType& t);

bool clifford_hypothesis(int r, const Rational& deg, int genus);  // 0 <= deg < 2 g r
bool clifford_predicate(int R, int r, const Rational& deg);       // R <= deg/2 + r
bool crucial_inequality(int R, const Rational& deg, int d);       // deg > R (1 - cos(2 pi/d))

void to_json(nlohmann::json& j, const CaseLattice& L);

}  // namespace gepner
