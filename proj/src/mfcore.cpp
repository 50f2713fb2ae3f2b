#include "gepner/mfcore.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace gepner {

WeightedType WeightedType::make(std::vector<int> weights, int degree) {
    if (weights.empty()) throw std::invalid_argument("weighted type needs at least one weight");
    if (degree <= 0) throw std::invalid_argument("degree must be positive");
    for (int a : weights)
        if (a <= 0) throw std::invalid_argument("weights must be positive");
    std::sort(weights.begin(), weights.end(), std::greater<int>());
    WeightedType t;
    t.weights = std::move(weights);
    t.degree = degree;
    t.epsilon = t.weight_sum() - degree;
    std::vector<int> ex;
    for (int a : t.weights) {
        if (degree % a != 0 || degree / a < 2) return t;
        ex.push_back(degree / a);
    }
    t.fermat_exponents = ex;
    return t;
}

int WeightedType::weight_sum() const { return std::accumulate(weights.begin(), weights.end(), 0); }

std::string WeightedType::str() const {
    std::string s = "(";
    for (size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + std::to_string(weights[i]);
    return s + ";" + std::to_string(degree) + ")";
}

WeightedType parse_type(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (c != '(' && c != ')' && !std::isspace(static_cast<unsigned char>(c))) s += c;
    auto sep = s.find_first_of(":;");
    if (sep == std::string::npos) throw std::invalid_argument("type must look like 1,1:4");
    std::vector<int> w;
    std::stringstream ws(s.substr(0, sep));
    std::string item;
    try {
        while (std::getline(ws, item, ',')) w.push_back(std::stoi(item));
        return WeightedType::make(w, std::stoi(s.substr(sep + 1)));
    } catch (const std::logic_error& e) {
        throw std::invalid_argument("bad type '" + raw + "': " + e.what());
    }
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

Polynomial Polynomial::monomial(const Monomial& e, const Rational& c) {
    Polynomial p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

void Polynomial::add_term(const Monomial& e, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Rational Polynomial::coeff(const Monomial& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::parse(const std::string& raw, int nvars) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    Polynomial p(nvars);
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse polynomial '" + raw + "': " + why);
    };
    auto read_int = [&]() {
        size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (st == i) fail("expected integer at position " + std::to_string(st));
        return s.substr(st, i - st);
    };
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail("expected + or -");
        }
        first = false;
        Rational c = sign;
        Monomial e(nvars, 0);
        bool any = false;
        while (i < s.size() && s[i] != '+' && s[i] != '-') {
            if (any) {
                if (s[i] != '*') fail("expected *");
                ++i;
            }
            any = true;
            if (i < s.size() && s[i] == 'x') {
                ++i;
                int v = std::stoi(read_int());
                if (v < 1 || v > nvars) fail("variable x" + std::to_string(v) + " out of range");
                int pw = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    pw = std::stoi(read_int());
                }
                e[v - 1] += pw;
            } else {
                std::string num = read_int();
                if (i < s.size() && s[i] == '/') {
                    ++i;
                    num += "/" + read_int();
                }
                c *= parse_rational(num);
            }
        }
        if (!any) fail("empty term");
        p.add_term(e, c);
    }
    return p;
}

std::vector<int> Polynomial::degrees(const std::vector<int>& weights) const {
    std::vector<int> out;
    for (const auto& [e, c] : terms_) {
        int deg = 0;
        for (size_t k = 0; k < e.size(); ++k) deg += e[k] * weights.at(k);
        out.push_back(deg);
    }
    return out;
}

bool Polynomial::is_homogeneous_of(const std::vector<int>& weights, int deg) const {
    for (int g : degrees(weights))
        if (g != deg) return false;
    return true;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Monomial f = e;
        f[var] -= 1;
        r.add_term(f, c * e[var]);
    }
    return r;
}

CycloNum Polynomial::evaluate(const std::vector<CycloNum>& pt) const {
    CycloNum s(0);
    for (const auto& [e, c] : terms_) {
        CycloNum t(c);
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k]) t *= pt.at(k).pow(e[k]);
        s += t;
    }
    return s;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    r.nvars_ = std::max(a.nvars_, b.nvars_);
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(std::max(a.nvars_, b.nvars_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Monomial e(std::max(ea.size(), eb.size()), 0);
            for (size_t k = 0; k < ea.size(); ++k) e[k] += ea[k];
            for (size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
            r.add_term(e, ca * cb);
        }
    return r;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // highest monomials first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c < 0 ? Rational(-c) : c;
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        std::string mono;
        for (size_t k = 0; k < e.size(); ++k) {
            if (!e[k]) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(k + 1);
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        if (mono.empty())
            out += to_string(a);
        else if (a == 1)
            out += mono;
        else
            out += to_string(a) + "*" + mono;
    }
    return out;
}

Polynomial fermat_W(const WeightedType& t) {
    if (!t.fermat_exponents) throw std::invalid_argument("type " + t.str() + " is not Fermat");
    Polynomial w(t.n());
    for (int i = 0; i < t.n(); ++i) {
        Monomial e(t.n(), 0);
        e[i] = (*t.fermat_exponents)[i];
        w = w + Polynomial::monomial(e);
    }
    return w;
}

KClassMF kclass(const GradedMF& mf) {
    KClassMF k{mf.p0_module.shifts, mf.p1_module.shifts};
    std::sort(k.positive.begin(), k.positive.end());
    std::sort(k.negative.begin(), k.negative.end());
    return k;
}

CycloNum zg(const KClassMF& k, int d) {
    CycloNum s(0);
    for (int n : k.positive) s += cyclo(d, n);
    for (int n : k.negative) s -= cyclo(d, n);
    return s;
}

CycloNum zg(const GradedMF& mf) { return zg(kclass(mf), mf.type.degree); }

GradedMF tau(const GradedMF& mf, int k) {
    GradedMF r = mf;
    for (int& s : r.p0_module.shifts) s += k;
    for (int& s : r.p1_module.shifts) s += k;
    return r;
}

namespace {

PolyMatrix negated(const PolyMatrix& m) {
    PolyMatrix r = m;
    for (auto& row : r)
        for (auto& p : row) p = -p;
    return r;
}

GradedMF shift_once(const GradedMF& mf) {
    GradedMF r;
    r.type = mf.type;
    r.p0_module = mf.p1_module;
    r.p1_module = mf.p0_module;
    for (int& s : r.p1_module.shifts) s += mf.type.degree;
    if (mf.maps) r.maps = MFMaps{negated(mf.maps->p1), negated(mf.maps->p0)};
    return r;
}

GradedMF unshift_once(const GradedMF& mf) {
    GradedMF r;
    r.type = mf.type;
    r.p0_module = mf.p1_module;
    r.p1_module = mf.p0_module;
    for (int& s : r.p0_module.shifts) s -= mf.type.degree;
    if (mf.maps) r.maps = MFMaps{negated(mf.maps->p1), negated(mf.maps->p0)};
    return r;
}

}  // namespace

GradedMF shift(const GradedMF& mf, int k) {
    GradedMF r = mf;
    for (; k > 0; --k) r = shift_once(r);
    for (; k < 0; ++k) r = unshift_once(r);
    return r;
}

GradedMF koszul_C(const WeightedType& t, int j) {
    GradedMF mf;
    mf.type = t;
    const int n = t.n();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int size = 0, wsum = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                ++size;
                wsum += t.weights[i];
            }
        int k = size / 2;
        int summand = t.degree * k + j - wsum;
        (size % 2 ? mf.p0_module : mf.p1_module).shifts.push_back(summand);
    }
    return mf;
}

GradedMF make_Q(int d, int j, int l, bool with_maps) {
    if (l < 1 || l >= d) throw std::invalid_argument("Q_{j,l} needs 0 < l < d");
    GradedMF mf;
    mf.type = WeightedType::make({1}, d);
    mf.p0_module.shifts = {j - l};
    mf.p1_module.shifts = {j};
    if (with_maps)
        mf.maps = MFMaps{{{Polynomial::monomial({l})}}, {{Polynomial::monomial({d - l})}}};
    return mf;
}

namespace {

void check_shape(const PolyMatrix& m, int rows, int cols, const std::string& name, ValidationReport& rep) {
    bool ok = static_cast<int>(m.size()) == rows;
    for (const auto& row : m) ok = ok && static_cast<int>(row.size()) == cols;
    if (!ok) {
        rep.ok = false;
        rep.violations.push_back(name + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                                 " matrix");
    }
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, int nvars) {
    const size_t rows = a.size(), inner = b.size(), cols = inner ? b[0].size() : 0;
    PolyMatrix r(rows, std::vector<Polynomial>(cols, Polynomial(nvars)));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            for (size_t k = 0; k < inner; ++k) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    return r;
}

void check_composition(const PolyMatrix& prod, const Polynomial& W, const std::string& name,
                       ValidationReport& rep) {
    for (size_t i = 0; i < prod.size(); ++i)
        for (size_t j = 0; j < prod[i].size(); ++j) {
            Polynomial want = i == j ? W : Polynomial(W.nvars());
            if (!(prod[i][j] == want)) {
                rep.ok = false;
                rep.violations.push_back(name + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                                         "): got " + prod[i][j].str() + ", expected " + want.str());
            }
        }
}

}  // namespace

ValidationReport validate(const GradedMF& mf, const Polynomial& W) {
    if (!mf.maps) throw MissingMaps();
    ValidationReport rep;
    const auto& s0 = mf.p0_module.shifts;
    const auto& s1 = mf.p1_module.shifts;
    const int d = mf.type.degree;
    const auto& w = mf.type.weights;
    check_shape(mf.maps->p0, mf.p1_module.rank(), mf.p0_module.rank(), "p0", rep);
    check_shape(mf.maps->p1, mf.p0_module.rank(), mf.p1_module.rank(), "p1", rep);
    if (!rep.ok) return rep;
    if (!W.is_homogeneous_of(w, d)) {
        rep.ok = false;
        rep.violations.push_back("W = " + W.str() + " is not homogeneous of degree " + std::to_string(d));
    }
    for (size_t r = 0; r < s1.size(); ++r)
        for (size_t c = 0; c < s0.size(); ++c)
            if (!mf.maps->p0[r][c].is_homogeneous_of(w, s1[r] - s0[c]))
                rep.violations.push_back("p0 entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " +
                                         mf.maps->p0[r][c].str() + " is not homogeneous of degree " +
                                         std::to_string(s1[r] - s0[c]));
    for (size_t r = 0; r < s0.size(); ++r)
        for (size_t c = 0; c < s1.size(); ++c)
            if (!mf.maps->p1[r][c].is_homogeneous_of(w, s0[r] + d - s1[c]))
                rep.violations.push_back("p1 entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " +
                                         mf.maps->p1[r][c].str() + " is not homogeneous of degree " +
                                         std::to_string(s0[r] + d - s1[c]));
    if (!rep.violations.empty()) rep.ok = false;
    check_composition(multiply(mf.maps->p1, mf.maps->p0, mf.type.n()), W, "p1*p0", rep);
    check_composition(multiply(mf.maps->p0, mf.maps->p1, mf.type.n()), W, "p0*p1", rep);
    return rep;
}

ValidationReport validate(const GradedMF& mf) { return validate(mf, fermat_W(mf.type)); }

namespace {

nlohmann::json matrix_json(const PolyMatrix& m) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : m) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& p : row) r.push_back(p.str());
        j.push_back(r);
    }
    return j;
}

PolyMatrix matrix_from_json(const nlohmann::json& j, int nvars) {
    PolyMatrix m;
    for (const auto& row : j) {
        std::vector<Polynomial> r;
        for (const auto& p : row) r.push_back(Polynomial::parse(p.get<std::string>(), nvars));
        m.push_back(r);
    }
    return m;
}

}  // namespace

void to_json(nlohmann::json& j, const GradedMF& mf) {
    j = {{"type", {{"weights", mf.type.weights}, {"degree", mf.type.degree}}},
         {"p0_shifts", mf.p0_module.shifts},
         {"p1_shifts", mf.p1_module.shifts}};
    if (mf.maps) j["maps"] = {matrix_json(mf.maps->p0), matrix_json(mf.maps->p1)};
}

void from_json(const nlohmann::json& j, GradedMF& mf) {
    mf.type = WeightedType::make(j.at("type").at("weights").get<std::vector<int>>(),
                                 j.at("type").at("degree").get<int>());
    mf.p0_module.shifts = j.at("p0_shifts").get<std::vector<int>>();
    mf.p1_module.shifts = j.at("p1_shifts").get<std::vector<int>>();
    mf.maps.reset();
    if (j.contains("maps")) {
        const auto& m = j.at("maps");
        if (m.size() != 2) throw std::invalid_argument("maps must be a pair of matrices");
        mf.maps = MFMaps{matrix_from_json(m[0], mf.type.n()), matrix_from_json(m[1], mf.type.n())};
    }
}

}  // namespace gepner
