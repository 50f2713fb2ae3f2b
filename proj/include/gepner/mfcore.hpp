#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gepner/exactmath.hpp"

namespace gepner {

struct WeightedType {
    std::vector<int> weights;  // non-increasing
    int degree = 0;
    int epsilon = 0;
    std::optional<std::vector<int>> fermat_exponents;

    static WeightedType make(std::vector<int> weights, int degree);
    int n() const { return static_cast<int>(weights.size()); }
    int weight_sum() const;
    std::string str() const;  // "(1,1,1,1;4)"
    friend bool operator==(const WeightedType& a, const WeightedType& b) {
        return a.weights == b.weights && a.degree == b.degree;
    }
};

// Accepts "1,1:4", "1,1;4" and "(1,1;4)".
WeightedType parse_type(const std::string& s);

using Monomial = std::vector<int>;

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}
    static Polynomial constant(int nvars, const Rational& c);
    static Polynomial monomial(const Monomial& e, const Rational& c = 1);
    static Polynomial parse(const std::string& s, int nvars);

    int nvars() const { return nvars_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Monomial& e) const;

    // Weighted degrees of the terms that occur; empty for the zero polynomial.
    std::vector<int> degrees(const std::vector<int>& weights) const;
    bool is_homogeneous_of(const std::vector<int>& weights, int deg) const;
    Polynomial derivative(int var) const;
    CycloNum evaluate(const std::vector<CycloNum>& pt) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    std::string str() const;

private:
    int nvars_ = 0;
    std::map<Monomial, Rational> terms_;
    void add_term(const Monomial& e, const Rational& c);
};

using PolyMatrix = std::vector<std::vector<Polynomial>>;  // row-major

Polynomial fermat_W(const WeightedType& t);

struct GradedFreeModule {
    std::vector<int> shifts;  // summands A(n)
    int rank() const { return static_cast<int>(shifts.size()); }
};

struct MFMaps {
    PolyMatrix p0;  // P0 -> P1, rank P1 x rank P0
    PolyMatrix p1;  // P1 -> P0(d), rank P0 x rank P1
};

struct GradedMF {
    WeightedType type;
    GradedFreeModule p0_module, p1_module;
    std::optional<MFMaps> maps;
};

struct KClassMF {
    std::vector<int> positive;  // sorted shifts of P0
    std::vector<int> negative;  // sorted shifts of P1
    friend bool operator==(const KClassMF& a, const KClassMF& b) {
        return a.positive == b.positive && a.negative == b.negative;
    }
};

KClassMF kclass(const GradedMF& mf);

struct MissingMaps : std::invalid_argument {
    MissingMaps() : std::invalid_argument("MissingMaps: matrix factorization has shift data only") {}
};

CycloNum zg(const GradedMF& mf);
CycloNum zg(const KClassMF& k, int d);
GradedMF tau(const GradedMF& mf, int k);
GradedMF shift(const GradedMF& mf, int k);
GradedMF koszul_C(const WeightedType& t, int j);
GradedMF make_Q(int d, int j, int l, bool with_maps = true);  // n = 1, W = x^d

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate(const GradedMF& mf, const Polynomial& W);
ValidationReport validate(const GradedMF& mf);  // Fermat W of the type

void to_json(nlohmann::json& j, const GradedMF& mf);
void from_json(const nlohmann::json& j, GradedMF& mf);

}  // namespace gepner
