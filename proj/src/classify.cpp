#include "gepner/classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gepner {

std::string GeometryDescriptor::label() const {
    switch (kind) {
        case Kind::Points: return std::to_string(count) + (count == 1 ? " point" : " points");
        case Kind::Curve: return "genus " + std::to_string(genus) + " curve";
        case Kind::Elliptic: return "elliptic curve";
        case Kind::K3: return "K3 surface";
    }
    return "";
}

std::pair<WeightedType, int> normalize_gcd(const WeightedType& t) {
    int g = 0;
    for (int a : t.weights) g = std::gcd(g, a);
    if (g <= 1 || t.degree % g != 0) return {t, 1};
    std::vector<int> w;
    for (int a : t.weights) w.push_back(a / g);
    return {WeightedType::make(w, t.degree / g), g};
}

bool is_stacky_free(const WeightedType& t) {
    if (!t.fermat_exponents) throw NotFermat(t.str());
    for (int i = 0; i < t.n(); ++i)
        for (int j = i + 1; j < t.n(); ++j)
            if (std::gcd(t.weights[i], t.weights[j]) != 1) return false;
    return true;
}

bool twice_cos_equals(const Rational& c, int d) {
    CycloNum s = cyclo(d, 1) + cyclo(d, -1);
    return s.is_rational() && s.rational_value() == c;
}

// four positive weights summing to d force d >= 4
bool k3_constraint(int m, int d) { return d >= 4 && twice_cos_equals(Rational(2 - m), d); }

bool elliptic_constraint(const Rational& h, int d) { return twice_cos_equals(2 - h, d); }

bool uniqueness_regime(const WeightedType& t) { return (t.n() - 3) * t.degree <= 2 * t.epsilon; }

namespace {

Rational degree_over_weights(const WeightedType& t) {
    Integer prod = 1;
    for (int a : t.weights) prod *= a;
    return Rational(Integer(t.degree), prod);
}

WeightedType with_extra_ones(const WeightedType& t, int k) {
    std::vector<int> w = t.weights;
    for (int i = 0; i < k; ++i) w.push_back(1);
    return WeightedType::make(w, t.degree);
}

}  // namespace

std::optional<GeometryDescriptor> admissible_geometry(const WeightedType& t) {
    if (!t.fermat_exponents) return std::nullopt;
    if (normalize_gcd(t).second != 1 || !is_stacky_free(t)) return std::nullopt;
    const int n = t.n(), e = t.epsilon;
    if (e > 0 || e < n - 4) return std::nullopt;
    if (n - e != 3 && n - e != 4) return std::nullopt;
    GeometryDescriptor g;
    Rational h = degree_over_weights(t);
    if (n == 4 && e == 0) {
        g.kind = GeometryDescriptor::Kind::K3;
        g.hyperplane_self_intersection = h;
        Rational m = h / 2;
        if (boost::multiprecision::denominator(m) != 1) return std::nullopt;
        if (!k3_constraint(static_cast<int>(boost::multiprecision::numerator(m)), t.degree)) return std::nullopt;
        return g;
    }
    if (n == 3 && e == 0) {
        g.kind = GeometryDescriptor::Kind::Elliptic;
        g.hyperplane_self_intersection = h;
        if (!elliptic_constraint(h, t.degree)) return std::nullopt;
        return g;
    }
    // epsilon < 0: X sits inside the Calabi-Yau hypersurface of the type with -epsilon extra weights 1
    if (!admissible_geometry(with_extra_ones(t, -e))) return std::nullopt;
    if (n == 3) {
        g.kind = GeometryDescriptor::Kind::Curve;
        Rational twog_minus_2 = h * (t.degree - t.weight_sum());
        if (boost::multiprecision::denominator(twog_minus_2) != 1) return std::nullopt;
        g.genus = static_cast<int>(boost::multiprecision::numerator(twog_minus_2)) / 2 + 1;
        return g;
    }
    g.kind = GeometryDescriptor::Kind::Points;
    if (boost::multiprecision::denominator(h) != 1) return std::nullopt;
    g.count = static_cast<int>(boost::multiprecision::numerator(h));
    return g;
}

std::vector<TypeRow> enumerate_types(int n_min, int n_max, int d_max) {
    std::vector<TypeRow> rows;
    for (int d = 2; d <= d_max; ++d) {
        std::vector<int> divs;
        for (int a = d / 2; a >= 1; --a)
            if (d % a == 0) divs.push_back(a);
        for (int n = std::max(n_min, 1); n <= n_max; ++n) {
            std::vector<int> w;
            std::function<void(size_t)> rec = [&](size_t start) {
                if (static_cast<int>(w.size()) == n) {
                    WeightedType t = WeightedType::make(w, d);
                    if (auto g = admissible_geometry(t)) rows.push_back({t, *g, fermat_W(t).str()});
                    return;
                }
                for (size_t i = start; i < divs.size(); ++i) {
                    w.push_back(divs[i]);
                    rec(i);
                    w.pop_back();
                }
            };
            rec(0);
        }
    }
    std::sort(rows.begin(), rows.end(), [](const TypeRow& a, const TypeRow& b) {
        const auto& s = a.type;
        const auto& t = b.type;
        if (s.n() - s.epsilon != t.n() - t.epsilon) return s.n() - s.epsilon > t.n() - t.epsilon;
        if (s.n() != t.n()) return s.n() > t.n();
        if (s.degree != t.degree) return s.degree < t.degree;
        return s.weights > t.weights;
    });
    return rows;
}

void to_json(nlohmann::json& j, const TypeRow& row) {
    j = {{"weights", row.type.weights},
         {"d", row.type.degree},
         {"n", row.type.n()},
         {"epsilon", row.type.epsilon},
         {"W_string", row.W},
         {"geometry", row.geometry.label()}};
}

}  // namespace gepner
