#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gepner/linalg.hpp"
#include "gepner/mfcore.hpp"

namespace gepner {

// W = x1 W1 + x2 W2, W_k = x1 W_k1 + x2 W_k2 (two variables).
struct WSplit {
    Polynomial W, W1, W2, W11, W12, W21, W22;
};

struct NoValidSplit : std::invalid_argument {
    explicit NoValidSplit(const std::string& w) : std::invalid_argument("NoValidSplit: " + w) {}
};
struct PointNotOnX : std::invalid_argument {
    PointNotOnX() : std::invalid_argument("PointNotOnX: W does not vanish at the point") {}
};

// f = x1 f1 + x2 f2, monomials divisible by x1 going to f1.
std::pair<Polynomial, Polynomial> split_by_vars(const Polynomial& f);
Polynomial reduce_mod(const Polynomial& f, const Polynomial& W);  // remainder under lex division

WSplit split_w(const Polynomial& W, const WeightedType& t);
bool split_identities_hold(const WSplit& s);

// ... -> F_3 --h'--> F_2 --h--> F_1 --(x1,x2)--> F_0 = R, then 2-periodic with twist d.
struct PeriodicResolution {
    WeightedType type;
    WSplit split;
    std::vector<int> generator_degrees(int i) const;  // F_i = sum R(-t)
    PolyMatrix differential(int i) const;             // F_i -> F_{i-1}, i >= 1
};
PeriodicResolution make_resolution(const WeightedType& t, const std::optional<WSplit>& s = std::nullopt);
// d_{i-1} d_i = 0 in R = A/(W) and every entry is homogeneous, for 1 < i <= 2 * periods + 1.
bool resolution_is_complex(const PeriodicResolution& r, int periods);

// Graded R-module with every graded piece of dimension <= 1.
struct ThinModule {
    std::function<bool(int)> present;
    std::function<CycloNum(const Monomial&)> act;  // x^e : N_m -> N_{m + deg e}
    CycloNum act_poly(const Polynomial& f, int from, const std::vector<int>& weights) const;
};
ThinModule residue_field();                                // C(0) = R/(x1, x2)
ThinModule point_module(const std::vector<CycloNum>& p);  // M(x) = sum_{j >= 1} C e_j

// Hom_grR(F_i(j), N) and its differentials. Coordinates are indexed by the
// generators of F_i whose graded piece N_{t - j} is present.
struct HomComplex {
    PeriodicResolution res;
    ThinModule module;
    int twist;
    std::vector<int> coords(int i) const;  // generator indices of F_i
    CMat delta(int i) const;               // C^i -> C^{i+1}
    int cohomology_dim(int i) const;
    bool is_cocycle(int i, const CVec& x) const;
    bool is_coboundary(int i, const CVec& x) const;
    // lambda with x = lambda * w + coboundary; nullopt if no such lambda
    std::optional<CycloNum> coordinate(int i, const CVec& x, const CVec& w) const;
};

int ext_cc(const WeightedType& t, int j, int i, const std::optional<WSplit>& s = std::nullopt);
int ext_cm(const WeightedType& t, int j, const std::vector<CycloNum>& p, int i,
           const std::optional<WSplit>& s = std::nullopt);
CVec u_witness(const WeightedType& t, int j, const std::vector<CycloNum>& p);
CVec v_witness(const WSplit& s, int j, const std::vector<CycloNum>& p);

// Points of the Fermat curve x1^k1 + x2^k2 = 0 in P(a1, a2), normalized to p2 = 1.
std::vector<std::vector<CycloNum>> fermat_points(const WeightedType& t);

struct YonedaTerm {
    std::string left;   // "x1" or "x2": the Ext^1 between the C(.)'s
    std::string right;  // "x1"/"x2" or "u_j"
    CycloNum coeff;
};
struct YonedaRelation {
    std::string source, target;  // e.g. "C(2)" -> "C(0)" or "C(1)" -> "PsiO_p1"
    std::vector<YonedaTerm> terms;
    std::vector<CycloNum> displayed;  // the closed-form pattern for comparison
    bool proportional_to_displayed = false;
    std::optional<CycloNum> scalar;  // coeffs = scalar * displayed
};
std::vector<YonedaRelation> yoneda_relations(const WeightedType& t,
                                             const std::vector<std::vector<CycloNum>>& points,
                                             const std::optional<WSplit>& s = std::nullopt);
std::vector<YonedaRelation> yoneda_relations(const WeightedType& t);

}  // namespace gepner
