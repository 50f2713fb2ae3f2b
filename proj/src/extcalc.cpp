#include "gepner/extcalc.hpp"

namespace gepner {

namespace {

Polynomial zero2() { return Polynomial(2); }
Polynomial var(int k) { return Polynomial::monomial(k == 0 ? Monomial{1, 0} : Monomial{0, 1}); }

Polynomial divide_monomial(const Monomial& e, const Rational& c, int k) {
    Monomial f = e;
    --f[static_cast<size_t>(k)];
    return Polynomial::monomial(f, c);
}

// x_k divides every term (the zero polynomial counts as divisible)
bool divisible_by(const Polynomial& f, int k) {
    for (const auto& [e, c] : f.terms())
        if (e[static_cast<size_t>(k)] == 0) return false;
    return true;
}

int mono_degree(const Monomial& e, const std::vector<int>& w) {
    int s = 0;
    for (size_t i = 0; i < e.size(); ++i) s += e[i] * w[i];
    return s;
}

}  // namespace

std::pair<Polynomial, Polynomial> split_by_vars(const Polynomial& f) {
    Polynomial f1 = zero2(), f2 = zero2();
    for (const auto& [e, c] : f.terms()) {
        if (e[0] > 0) f1 = f1 + divide_monomial(e, c, 0);
        else if (e[1] > 0) f2 = f2 + divide_monomial(e, c, 1);
        else throw std::invalid_argument("polynomial " + f.str() + " has a constant term");
    }
    return {f1, f2};
}

Polynomial reduce_mod(const Polynomial& f, const Polynomial& W) {
    if (W.is_zero()) return f;
    const auto& [lt, lc] = *W.terms().rbegin();
    Polynomial p = f, r(f.nvars());
    while (!p.is_zero()) {
        const auto [e, c] = *p.terms().rbegin();
        bool div = true;
        for (size_t i = 0; i < e.size(); ++i) div = div && e[i] >= lt[i];
        if (div) {
            Monomial q = e;
            for (size_t i = 0; i < e.size(); ++i) q[i] -= lt[i];
            p = p - Polynomial::monomial(q, c / lc) * W;
        } else {
            Polynomial t = Polynomial::monomial(e, c);
            r = r + t;
            p = p - t;
        }
    }
    return r;
}

bool split_identities_hold(const WSplit& s) {
    const Polynomial x1 = var(0), x2 = var(1);
    return s.W == x1 * s.W1 + x2 * s.W2 && s.W1 == x1 * s.W11 + x2 * s.W12 && s.W2 == x1 * s.W21 + x2 * s.W22;
}

WSplit split_w(const Polynomial& W, const WeightedType& t) {
    if (t.n() != 2 || W.nvars() != 2) throw NoValidSplit("needs two variables");
    if (!W.is_homogeneous_of(t.weights, t.degree)) throw NoValidSplit(W.str() + " is not homogeneous");
    std::vector<std::pair<Monomial, Rational>> both;
    Polynomial W1 = zero2(), W2 = zero2();
    for (const auto& [e, c] : W.terms()) {
        if (e[0] > 0 && e[1] > 0) both.emplace_back(e, c);
        else if (e[0] > 0) W1 = W1 + divide_monomial(e, c, 0);
        else if (e[1] > 0) W2 = W2 + divide_monomial(e, c, 1);
        else throw NoValidSplit(W.str());
    }
    if (both.size() > 8) throw NoValidSplit(W.str() + ": too many mixed monomials");
    // each mixed monomial goes to W1, to W2, or half to each
    int combos = 1;
    for (size_t i = 0; i < both.size(); ++i) combos *= 3;
    for (int code = 0; code < combos; ++code) {
        Polynomial a = W1, b = W2;
        int c = code;
        for (const auto& [e, co] : both) {
            const int choice = c % 3;
            c /= 3;
            if (choice == 0) a = a + divide_monomial(e, co, 0);
            else if (choice == 1) b = b + divide_monomial(e, co, 1);
            else {
                a = a + divide_monomial(e, co / 2, 0);
                b = b + divide_monomial(e, co / 2, 1);
            }
        }
        if (divisible_by(b, 0) || divisible_by(a, 1)) continue;
        WSplit s;
        s.W = W;
        s.W1 = a;
        s.W2 = b;
        std::tie(s.W11, s.W12) = split_by_vars(a);
        std::tie(s.W21, s.W22) = split_by_vars(b);
        return s;
    }
    // W = c x1 x2 admits no split with the divisibility conditions; use the symmetric one
    if (both.size() == 1 && W1.is_zero() && W2.is_zero() && both[0].first == Monomial{1, 1}) {
        WSplit s;
        s.W = W;
        s.W1 = Polynomial::monomial({0, 1}, both[0].second / 2);
        s.W2 = Polynomial::monomial({1, 0}, both[0].second / 2);
        std::tie(s.W11, s.W12) = split_by_vars(s.W1);
        std::tie(s.W21, s.W22) = split_by_vars(s.W2);
        return s;
    }
    throw NoValidSplit(W.str());
}

std::vector<int> PeriodicResolution::generator_degrees(int i) const {
    const int d = type.degree, a1 = type.weights[0], a2 = type.weights[1];
    if (i == 0) return {0};
    const int k = (i - 1) / 2;
    if (i % 2 == 1) return {k * d + a1, k * d + a2};
    return {(k + 1) * d, k * d + a1 + a2};
}

PolyMatrix PeriodicResolution::differential(int i) const {
    const Polynomial x1 = var(0), x2 = var(1);
    if (i == 1) return {{x1, x2}};
    if (i % 2 == 0) return {{split.W1, -x2}, {split.W2, x1}};
    return {{x1, x2}, {-split.W2, split.W1}};
}

PeriodicResolution make_resolution(const WeightedType& t, const std::optional<WSplit>& s) {
    PeriodicResolution r;
    r.type = t;
    r.split = s ? *s : split_w(fermat_W(t), t);
    if (!split_identities_hold(r.split)) throw NoValidSplit("split identities fail");
    return r;
}

bool resolution_is_complex(const PeriodicResolution& r, int periods) {
    for (int i = 1; i <= 2 * periods + 1; ++i) {
        PolyMatrix D = r.differential(i);
        auto src = r.generator_degrees(i), tgt = r.generator_degrees(i - 1);
        for (size_t a = 0; a < tgt.size(); ++a)
            for (size_t b = 0; b < src.size(); ++b)
                if (!D[a][b].is_zero() && !D[a][b].is_homogeneous_of(r.type.weights, src[b] - tgt[a])) return false;
        if (i == 1) continue;
        PolyMatrix E = r.differential(i - 1);
        for (size_t a = 0; a < E.size(); ++a)
            for (size_t b = 0; b < D[0].size(); ++b) {
                Polynomial s = zero2();
                for (size_t m = 0; m < D.size(); ++m) s = s + E[a][m] * D[m][b];
                if (!reduce_mod(s, r.split.W).is_zero()) return false;
            }
    }
    return true;
}

CycloNum ThinModule::act_poly(const Polynomial& f, int from, const std::vector<int>& weights) const {
    CycloNum s(0);
    if (!present(from)) return s;
    for (const auto& [e, c] : f.terms())
        if (present(from + mono_degree(e, weights))) s += CycloNum(c) * act(e);
    return s;
}

ThinModule residue_field() {
    ThinModule m;
    m.present = [](int k) { return k == 0; };
    m.act = [](const Monomial& e) {
        for (int x : e)
            if (x) return CycloNum(0);
        return CycloNum(1);
    };
    return m;
}

ThinModule point_module(const std::vector<CycloNum>& p) {
    ThinModule m;
    m.present = [](int k) { return k >= 1; };
    m.act = [p](const Monomial& e) {
        CycloNum s(1);
        for (size_t i = 0; i < e.size(); ++i) s *= p[i].pow(e[i]);
        return s;
    };
    return m;
}

std::vector<int> HomComplex::coords(int i) const {
    std::vector<int> out;
    if (i < 0) return out;
    auto g = res.generator_degrees(i);
    for (size_t k = 0; k < g.size(); ++k)
        if (module.present(g[k] - twist)) out.push_back(static_cast<int>(k));
    return out;
}

CMat HomComplex::delta(int i) const {
    auto ci = coords(i), cn = coords(i + 1);
    CMat M = CMat::Constant(static_cast<Eigen::Index>(cn.size()), static_cast<Eigen::Index>(ci.size()), CycloNum(0));
    if (i < 0) return M;
    PolyMatrix D = res.differential(i + 1);
    auto gi = res.generator_degrees(i);
    for (size_t a = 0; a < cn.size(); ++a)
        for (size_t b = 0; b < ci.size(); ++b) {
            const Polynomial& f = D[static_cast<size_t>(ci[b])][static_cast<size_t>(cn[a])];
            M(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                module.act_poly(f, gi[static_cast<size_t>(ci[b])] - twist, res.type.weights);
        }
    return M;
}

int HomComplex::cohomology_dim(int i) const {
    const int n = static_cast<int>(coords(i).size());
    if (n == 0) return 0;
    int r = rank(delta(i));
    int rp = i > 0 ? rank(delta(i - 1)) : 0;
    return n - r - rp;
}

bool HomComplex::is_cocycle(int i, const CVec& x) const {
    CVec y = delta(i) * x;
    for (Eigen::Index k = 0; k < y.size(); ++k)
        if (!y(k).is_zero()) return false;
    return true;
}

bool HomComplex::is_coboundary(int i, const CVec& x) const {
    if (i == 0) {
        for (Eigen::Index k = 0; k < x.size(); ++k)
            if (!x(k).is_zero()) return false;
        return true;
    }
    return solve(delta(i - 1), x).has_value();
}

std::optional<CycloNum> HomComplex::coordinate(int i, const CVec& x, const CVec& w) const {
    CMat B = i > 0 ? delta(i - 1) : CMat(x.size(), 0);
    CMat A(x.size(), B.cols() + 1);
    A.col(0) = w;
    if (B.cols() > 0) A.rightCols(B.cols()) = B;
    auto s = solve(A, x);
    if (!s) return std::nullopt;
    return (*s)(0);
}

namespace {

void check_n2(const WeightedType& t) {
    if (t.n() != 2) throw std::invalid_argument("Ext computations need n = 2, got " + t.str());
}

}  // namespace

int ext_cc(const WeightedType& t, int j, int i, const std::optional<WSplit>& s) {
    check_n2(t);
    const int top = t.degree - t.weight_sum();
    if (j <= 0 || j > top) throw std::out_of_range("ext_cc: j = " + std::to_string(j) + " outside (0, " + std::to_string(top) + "]");
    if (i < 0 || i > 3) throw std::out_of_range("ext_cc: i outside [0, 3]");
    HomComplex H{make_resolution(t, s), residue_field(), j};
    return H.cohomology_dim(i);
}

int ext_cm(const WeightedType& t, int j, const std::vector<CycloNum>& p, int i, const std::optional<WSplit>& s) {
    check_n2(t);
    const int top = t.degree - t.weight_sum();
    if (j < 0 || j >= top) throw std::out_of_range("ext_cm: j = " + std::to_string(j) + " outside [0, " + std::to_string(top) + ")");
    if (i < 0 || i > 3) throw std::out_of_range("ext_cm: i outside [0, 3]");
    PeriodicResolution r = make_resolution(t, s);
    if (!r.split.W.evaluate(p).is_zero()) throw PointNotOnX();
    HomComplex H{r, point_module(p), j};
    return H.cohomology_dim(i);
}

CVec u_witness(const WeightedType& t, int j, const std::vector<CycloNum>& p) {
    std::vector<CycloNum> out;
    for (int k = 0; k < 2; ++k)
        if (t.weights[static_cast<size_t>(k)] - j >= 1) out.push_back(p[static_cast<size_t>(k)]);
    CVec v(static_cast<Eigen::Index>(out.size()));
    for (size_t k = 0; k < out.size(); ++k) v(static_cast<Eigen::Index>(k)) = out[k];
    return v;
}

CVec v_witness(const WSplit& s, int j, const std::vector<CycloNum>& p) {
    (void)j;
    CVec v(2);
    v(0) = s.W2.evaluate(p) / p[0];
    v(1) = CycloNum(1);
    return v;
}

std::vector<std::vector<CycloNum>> fermat_points(const WeightedType& t) {
    check_n2(t);
    if (!t.fermat_exponents) throw std::invalid_argument(t.str() + " is not of Fermat type");
    const int k1 = (*t.fermat_exponents)[0], a1 = t.weights[0], a2 = t.weights[1];
    std::vector<std::vector<CycloNum>> out;
    for (int r = 0; r < k1; ++r) {
        CycloNum p1 = cyclo(2 * k1, 2 * r + 1);
        bool seen = false;
        for (const auto& q : out)
            for (int m = 0; m < a2 && !seen; ++m)
                if (cyclo(a2, m * a1) * q[0] == p1) seen = true;
        if (!seen) out.push_back({p1, CycloNum(1)});
    }
    return out;
}

namespace {

// Lift of the Ext^1 cocycle picking generator k of F_1 to a chain map F_{.+1} -> F_. (second component).
PolyMatrix lift_g(const PeriodicResolution& r, int k) {
    PolyMatrix h = r.differential(2);
    PolyMatrix g(2, std::vector<Polynomial>(2, zero2()));
    for (int c = 0; c < 2; ++c) {
        auto [f1, f2] = split_by_vars(h[static_cast<size_t>(k)][static_cast<size_t>(c)]);
        g[0][static_cast<size_t>(c)] = f1;
        g[1][static_cast<size_t>(c)] = f2;
    }
    return g;
}

// eta o g on generators of F_2(j), eta a cocycle on the coordinates of C^1 for twist j'.
CVec compose(const HomComplex& target, const HomComplex& mid, const PolyMatrix& g, const CVec& eta) {
    auto c2 = target.coords(2), c1 = mid.coords(1);
    auto g1 = mid.res.generator_degrees(1);
    CVec out = CVec::Constant(static_cast<Eigen::Index>(c2.size()), CycloNum(0));
    for (size_t a = 0; a < c2.size(); ++a)
        for (size_t b = 0; b < c1.size(); ++b) {
            const Polynomial& f = g[static_cast<size_t>(c1[b])][static_cast<size_t>(c2[a])];
            out(static_cast<Eigen::Index>(a)) +=
                mid.module.act_poly(f, g1[static_cast<size_t>(c1[b])] - mid.twist, mid.res.type.weights) *
                eta(static_cast<Eigen::Index>(b));
        }
    return out;
}

void finish(YonedaRelation& rel) {
    std::vector<CycloNum> got;
    for (const auto& t : rel.terms) got.push_back(t.coeff);
    if (got.size() != rel.displayed.size()) return;
    std::optional<CycloNum> lam;
    for (size_t i = 0; i < got.size(); ++i) {
        if (rel.displayed[i].is_zero()) {
            if (!got[i].is_zero()) return;
            continue;
        }
        CycloNum l = got[i] / rel.displayed[i];
        if (lam && *lam != l) return;
        lam = l;
    }
    if (!lam || lam->is_zero()) return;
    rel.proportional_to_displayed = true;
    rel.scalar = lam;
}

}  // namespace

std::vector<YonedaRelation> yoneda_relations(const WeightedType& t, const std::vector<std::vector<CycloNum>>& points,
                                             const std::optional<WSplit>& s) {
    check_n2(t);
    PeriodicResolution r = make_resolution(t, s);
    const int a1 = t.weights[0], a2 = t.weights[1], top = t.degree - a1 - a2;
    const std::string xs[2] = {"x1", "x2"};
    const int a[2] = {a1, a2};
    std::vector<YonedaRelation> out;

    // Ext^2(C(a1 + a2), C(0)) -> Ext^1 (x) Ext^1
    if (a1 + a2 <= top) {
        const int j = a1 + a2;
        HomComplex tgt{r, residue_field(), j};
        auto c2 = tgt.coords(2);
        CVec w = CVec::Constant(static_cast<Eigen::Index>(c2.size()), CycloNum(0));
        for (size_t q = 0; q < c2.size(); ++q)
            if (r.generator_degrees(2)[static_cast<size_t>(c2[q])] == j) w(static_cast<Eigen::Index>(q)) = CycloNum(1);
        YonedaRelation rel{"C(" + std::to_string(j) + ")", "C(0)", {}, {CycloNum(1), CycloNum(-1)}};
        for (auto [l, rgt] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}) {
            // eta = x_l^dual in Ext^1(C(a_l), C(0)), xi = x_rgt^dual in Ext^1(C(j), C(a_l))
            const int jp = j - a[rgt];
            HomComplex mid{r, residue_field(), jp};
            auto c1 = mid.coords(1);
            CVec eta = CVec::Constant(static_cast<Eigen::Index>(c1.size()), CycloNum(0));
            for (size_t q = 0; q < c1.size(); ++q)
                if (c1[q] == l) eta(static_cast<Eigen::Index>(q)) = CycloNum(1);
            CVec comp = compose(tgt, mid, lift_g(r, rgt), eta);
            auto lam = tgt.coordinate(2, comp, w);
            rel.terms.push_back({xs[l], xs[rgt], lam ? *lam : CycloNum(0)});
        }
        finish(rel);
        out.push_back(rel);
    }

    // Ext^2(C(j), Psi O_x) -> Ext^1(C(j), C(j')) (x) Ext^1(C(j'), Psi O_x)
    for (size_t pi = 0; pi < points.size(); ++pi) {
        const auto& p = points[pi];
        if (!r.split.W.evaluate(p).is_zero()) throw PointNotOnX();
        for (int j = std::max(0, a1); j < std::min(a1 + a2, top); ++j) {
            HomComplex tgt{r, point_module(p), j};
            CVec w = v_witness(r.split, j, p);
            YonedaRelation rel{"C(" + std::to_string(j) + ")", "PsiO_p" + std::to_string(pi + 1), {}, {p[1], -p[0]}};
            for (int k = 0; k < 2; ++k) {
                const int jp = j - a[k];
                if (jp < 0 || jp >= a2) {
                    rel.terms.push_back({xs[k], "u_" + std::to_string(jp), CycloNum(0)});
                    continue;
                }
                HomComplex mid{r, point_module(p), jp};
                CVec comp = compose(tgt, mid, lift_g(r, k), u_witness(t, jp, p));
                auto lam = tgt.coordinate(2, comp, w);
                rel.terms.push_back({xs[k], "u_" + std::to_string(jp), lam ? *lam : CycloNum(0)});
            }
            if (a1 != a2) {
                // the displayed pattern drops the term whose u-window is empty
                for (size_t k = 0; k < 2; ++k) {
                    const int jp = j - a[k];
                    if (jp < 0 || jp >= a2) rel.displayed[k] = CycloNum(0);
                }
            }
            finish(rel);
            out.push_back(rel);
        }
    }
    return out;
}

std::vector<YonedaRelation> yoneda_relations(const WeightedType& t) {
    return yoneda_relations(t, fermat_points(t));
}

}  // namespace gepner
