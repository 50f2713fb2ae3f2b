#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gepner/mfcore.hpp"

namespace gepner {

struct GeometryDescriptor {
    enum class Kind { Points, Curve, Elliptic, K3 };
    Kind kind = Kind::Points;
    int count = 0;  // Points
    int genus = 0;  // Curve
    Rational hyperplane_self_intersection;  // int_X H for Elliptic, H^2 for K3
    std::string label() const;  // "4 points", "genus 3 curve", "elliptic curve", "K3 surface"
};

struct NotFermat : std::invalid_argument {
    explicit NotFermat(const std::string& t) : std::invalid_argument("NotFermat: " + t) {}
};

std::pair<WeightedType, int> normalize_gcd(const WeightedType& t);
bool is_stacky_free(const WeightedType& t);

// 2cos(2pi/d) == c, decided exactly in Q(zeta_d).
bool twice_cos_equals(const Rational& c, int d);
// Eigenvalue condition for the K3 matrix with H^2 = 2m: 2cos(2pi/d) = 2 - m, d >= 4.
bool k3_constraint(int m, int d);
// Eigenvalue condition for the elliptic matrix with int H = h: 2cos(2pi/d) = 2 - h.
bool elliptic_constraint(const Rational& h, int d);
bool uniqueness_regime(const WeightedType& t);

// The (n, epsilon) case and geometry when t is one of the admissible types, nullopt otherwise.
std::optional<GeometryDescriptor> admissible_geometry(const WeightedType& t);

struct TypeRow {
    WeightedType type;
    GeometryDescriptor geometry;
    std::string W;
};

std::vector<TypeRow> enumerate_types(int n_min, int n_max, int d_max);

void to_json(nlohmann::json& j, const TypeRow& row);

}  // namespace gepner
