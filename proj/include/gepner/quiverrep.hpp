#pragma once

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gepner/extcalc.hpp"
#include "gepner/hearts.hpp"

namespace gepner {

struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string& m) : std::runtime_error("ResourceLimit: " + m) {}
};
struct BadPrime : std::invalid_argument {
    explicit BadPrime(const std::string& m) : std::invalid_argument("BadPrime: " + m) {}
};
struct InvalidObject : std::invalid_argument {
    explicit InvalidObject(const std::string& m) : std::invalid_argument("InvalidObject: " + m) {}
};

struct QuiverArrow {
    int source, target;
    std::string label;
};

// c * (second o first); first: s -> v, second: v -> t
struct PathTerm {
    CycloNum coeff;
    int first, second;
};
struct QuiverRelation {
    std::vector<PathTerm> terms;
};

// Vertex order follows the lattice basis: [C(1)], C(0), points. Arrows go forward.
struct QuiverWithRelations {
    WeightedType type;
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows;
    std::vector<QuiverRelation> relations;
    std::vector<std::vector<CycloNum>> points;
    WSplit model;  // curve equation the points lie on
    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int vertex(const std::string& name) const;
    int arrow(const std::string& label) const;
};

// Point configurations. The rational models have points (c, 1), c in Z, on a
// coordinate-changed curve; the Fermat models use the roots of x1^k1 = -x2^k2.
enum class PointModel { Rational, Fermat };
QuiverWithRelations heart_quiver(const WeightedType& t, PointModel model = PointModel::Rational);

// ---- representations ----

struct QRep {
    std::vector<int> dims;
    std::vector<CMat> mats;  // mats[a]: dims[target] x dims[source]
};

struct FpRep {
    int p = 0;
    std::vector<int> dims;
    std::vector<std::vector<std::vector<int>>> mats;  // row-major, dims[target] x dims[source]
};

std::vector<std::string> named_objects(const WeightedType& t);
QRep named_object(const QuiverWithRelations& Q, const std::string& name);

bool satisfies_relations(const QuiverWithRelations& Q, const QRep& r);
bool satisfies_relations(const QuiverWithRelations& Q, const FpRep& r);

// Reduction of Q(zeta_m) into F_p via zeta_m = g^((p-1)/m) for the least primitive root g.
int reduce_mod_p(const CycloNum& x, int p);
// Coordinates and pairwise differences must be units mod p and roots of unity must exist.
bool good_prime(const QuiverWithRelations& Q, int p);
FpRep reduce(const QuiverWithRelations& Q, const QRep& r, int p);

FpRep direct_sum(const QuiverWithRelations& Q, const FpRep& a, const FpRep& b);
FpRep random_rep(const QuiverWithRelations& Q, int p, const std::vector<int>& dims, std::mt19937_64& rng);

nlohmann::json rep_to_json(const QuiverWithRelations& Q, const FpRep& r);
FpRep rep_from_json(const QuiverWithRelations& Q, const nlohmann::json& j);

// ---- subrepresentations ----

struct SubrepLimits {
    int max_total_dim = 12;
    int max_prime = 17;
};

// Multiset of dimension vectors of all subrepresentations (including 0 and the whole).
std::map<std::vector<int>, long long> all_subreps(const QuiverWithRelations& Q, const FpRep& r,
                                                  const SubrepLimits& lim = {});

// One subrepresentation: a basis (columns) of U_v for each vertex.
struct Subrep {
    std::vector<int> dims;
    std::vector<std::vector<std::vector<int>>> basis;  // basis[v][k] = k-th basis vector
};
// All subrepresentations with the given dimension vector.
std::vector<Subrep> subreps_with_dims(const QuiverWithRelations& Q, const FpRep& r, const std::vector<int>& dims,
                                      const SubrepLimits& lim = {});
FpRep restrict_to(const QuiverWithRelations& Q, const FpRep& r, const Subrep& s);
FpRep quotient_by(const QuiverWithRelations& Q, const FpRep& r, const Subrep& s);

// ---- stability ----

// Phase: Z^dagger phases on the heart A_W (epsilon = -1).
// Slope: mu = -Re Z^dagger / Im Z^dagger with the tilt conventions (epsilon = -2).
enum class StabilityKind { Phase, Slope };
struct StabilitySpec {
    CaseLattice lattice;
    StabilityKind kind;
    Rational theta;
    // sign(phi(a) - phi(b)) for nonzero classes
    int compare(const std::vector<int>& a, const std::vector<int>& b) const;
    std::string describe(const std::vector<int>& a) const;
};
StabilitySpec default_spec(const WeightedType& t);

enum class Verdict { Stable, SemistableOnly, Unstable };
std::string to_string(Verdict v);
struct StabilityResult {
    Verdict verdict;
    std::optional<std::vector<int>> witness;
    long long subreps_checked = 0;
};
StabilityResult is_stable(const QuiverWithRelations& Q, const FpRep& r, const StabilitySpec& spec,
                          const SubrepLimits& lim = {});

struct HNFactor {
    std::vector<int> dims;
    FpRep rep;
};
struct HNResult {
    std::vector<HNFactor> factors;
    bool tie = false;  // a non-unique maximal destabilizer was seen
};
HNResult hn_filtration(const QuiverWithRelations& Q, const FpRep& r, const StabilitySpec& spec,
                       const SubrepLimits& lim = {});

// mu(S) <= mu(E) <= mu(E/S) or the reverse, for every subrep S.
bool weak_seesaw(const QuiverWithRelations& Q, const FpRep& r, const StabilitySpec& spec,
                 const SubrepLimits& lim = {});

struct ExtConsistency {
    bool arrows_ok = false;
    bool relations_ok = false;
    bool coefficients_ok = false;
    bool shape_ok = false;  // agrees with the hearts quiver shape
    bool ok() const { return arrows_ok && relations_ok && coefficients_ok && shape_ok; }
};
ExtConsistency ext_quiver_consistency(const WeightedType& t);

}  // namespace gepner
