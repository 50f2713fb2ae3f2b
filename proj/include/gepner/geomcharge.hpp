#pragma once

#include <stdexcept>
#include <vector>

#include "gepner/classify.hpp"
#include "gepner/linalg.hpp"

namespace gepner {

// Chern character in the (1, H, pt) basis: (r, deg) on a curve, (c0, c1, c2) on a surface.
struct ChClass {
    std::vector<Rational> c;
    int dim() const { return static_cast<int>(c.size()) - 1; }
};

struct UnsupportedGeometry : std::invalid_argument {
    UnsupportedGeometry() : std::invalid_argument("UnsupportedGeometry: need an elliptic curve or a K3 surface") {}
};
struct NoEigenvalue : std::domain_error {
    NoEigenvalue() : std::domain_error("NoEigenvalue: zeta is not an eigenvalue of M") {}
};
struct EigenspaceDimensionNot1 : std::domain_error {
    explicit EigenspaceDimensionNot1(int k)
        : std::domain_error("EigenspaceDimensionNot1: dimension " + std::to_string(k)) {}
};

// Action of the grade shift on ch in (1, H, pt) coordinates.
QMat build_M(const GeometryDescriptor& g);

// Row functional ell with ell * M = zeta * ell, normalized so that the last entry is -1.
// Z^dagger(ch) = ell . ch, where ell_j = int alpha_j^dagger against the j-th basis class.
struct AlphaSolution {
    int d = 0;
    CRow ell;
};
AlphaSolution solve_alpha(const QMat& M, int d);
// int alpha_0^dagger
inline CycloNum alpha0_integral(const AlphaSolution& s) { return s.ell(0); }
// alpha_1^dagger = (returned value) * H on a K3 surface with the given H^2.
CycloNum alpha1_H_coefficient(const AlphaSolution& s, const Rational& H2);

struct GepnerConstants {
    CycloNum c_w;
    Rational theta_w;
};
GepnerConstants constants(const WeightedType& t);

CycloNum zg_dagger(const ChClass& E, const AlphaSolution& sol);
CycloNum zg_geom(const ChClass& E, const AlphaSolution& sol, const GepnerConstants& k);

struct MukaiVector {
    Rational v0, v1H, v2;
    Rational square(const Rational& H2) const { return v1H * v1H / H2 - 2 * v0 * v2; }
};
MukaiVector mukai(const ChClass& E, const Rational& H2);
CycloNum zg_k3(const MukaiVector& v, int d, const Rational& H2);

enum class SphericalVerdict { Positive, ViolatedRank1, ViolatedOther };
SphericalVerdict spherical_check(const MukaiVector& v, int d, const Rational& H2);
const char* to_string(SphericalVerdict v);

// ch of i_* E on the ambient K3 for a sheaf of rank r and degree deg on a curve in |H|.
ChClass push_curve_to_k3(const Rational& r, const Rational& deg, const Rational& H2);

// Geometric chart for an admissible type: the Calabi-Yau target (X itself, or the ambient
// hypersurface with -epsilon extra weights 1) with its M, alpha solution and constants.
struct GeomChart {
    WeightedType type;
    GeometryDescriptor x;        // geometry of X
    WeightedType ambient_type;   // equal to type when epsilon = 0
    GeometryDescriptor ambient;  // the Calabi-Yau carrying alpha
    QMat M;
    AlphaSolution sol;
    GepnerConstants consts;
};
GeomChart build_chart(const WeightedType& t);

// Z_G(Psi(E)) / C_W for E on X given by ch (points: (length); curve: (r, deg); surface: (c0, c1, c2)).
CycloNum chart_zg_dagger(const GeomChart& ch, const ChClass& E);

}  // namespace gepner
