#include "gepner/geomcharge.hpp"

namespace gepner {

QMat build_M(const GeometryDescriptor& g) {
    const Rational& h = g.hyperplane_self_intersection;
    QMat M;
    if (g.kind == GeometryDescriptor::Kind::Elliptic) {
        M.resize(2, 2);
        M << 1 - h, -1, h, 1;
        return M;
    }
    if (g.kind == GeometryDescriptor::Kind::K3) {
        Rational m = h / 2;
        M.resize(3, 3);
        M << -1 - m, -h, -1, 1, 1, 0, m, h, 1;
        return M;
    }
    throw UnsupportedGeometry();
}

AlphaSolution solve_alpha(const QMat& M, int d) {
    const Eigen::Index n = M.rows();
    CMat A = to_cyclo(M).transpose();
    for (Eigen::Index i = 0; i < n; ++i) A(i, i) -= cyclo(d, 1);
    CMat k = kernel(A);
    if (k.cols() == 0) throw NoEigenvalue();
    if (k.cols() != 1) throw EigenspaceDimensionNot1(static_cast<int>(k.cols()));
    CycloNum last = k(n - 1, 0);
    if (last.is_zero()) throw std::domain_error("eigenvector vanishes on the point class");
    AlphaSolution s;
    s.d = d;
    s.ell = (k.col(0) * (CycloNum(-1) / last)).transpose();
    return s;
}

CycloNum alpha1_H_coefficient(const AlphaSolution& s, const Rational& H2) { return s.ell(1) / CycloNum(H2); }

GepnerConstants constants(const WeightedType& t) {
    const int d = t.degree;
    CycloNum prod(1);
    for (int a : t.weights) prod *= CycloNum(1) - cyclo(d, -a);
    GepnerConstants k;
    k.c_w = -prod / (CycloNum(1) - cyclo(d, 1));
    k.theta_w = Rational(t.n() - 1, 2) - Rational(t.weight_sum() + 1, d);
    return k;
}

CycloNum zg_dagger(const ChClass& E, const AlphaSolution& sol) {
    if (static_cast<Eigen::Index>(E.c.size()) != sol.ell.size())
        throw std::invalid_argument("Chern character does not match the chart dimension");
    CycloNum z(0);
    for (size_t j = 0; j < E.c.size(); ++j) z += sol.ell(static_cast<Eigen::Index>(j)) * CycloNum(E.c[j]);
    return z;
}

CycloNum zg_geom(const ChClass& E, const AlphaSolution& sol, const GepnerConstants& k) {
    return k.c_w * zg_dagger(E, sol);
}

MukaiVector mukai(const ChClass& E, const Rational& H2) {
    if (E.dim() != 2) throw std::invalid_argument("Mukai vector needs a surface class");
    const Rational m = H2 / 2;
    const Rational &c0 = E.c[0], &c1 = E.c[1], &c2 = E.c[2];
    // ch * e^{H/2} * (1 + pt)
    return {c0, (c1 + c0 / 2) * H2, c2 + m * c1 + m * c0 / 4 + c0};
}

CycloNum zg_k3(const MukaiVector& v, int d, const Rational& H2) {
    // (1/2) sqrt(d/H^2) v1H i = (v1H / (2 H^2)) sqrt(-d H^2)
    CycloNum im = CycloNum(v.v1H / (2 * H2)) * sqrt_neg(Rational(d) * H2);
    return CycloNum(-v.v2 + Rational(d, 8) * v.v0) + im;
}

SphericalVerdict spherical_check(const MukaiVector& v, int d, const Rational& H2) {
    if (v.square(H2) != -2 || v.v1H != 0 || v.v0 <= 0)
        throw std::invalid_argument("spherical_check needs v^2 = -2, v1H = 0 and v0 > 0");
    Rational val = -v.v2 + Rational(d, 8) * v.v0;
    if (val > 0) return SphericalVerdict::Positive;
    return v.v0 == 1 ? SphericalVerdict::ViolatedRank1 : SphericalVerdict::ViolatedOther;
}

const char* to_string(SphericalVerdict v) {
    switch (v) {
        case SphericalVerdict::Positive: return "positive";
        case SphericalVerdict::ViolatedRank1: return "violated_rank1";
        case SphericalVerdict::ViolatedOther: return "violated_other";
    }
    return "";
}

ChClass push_curve_to_k3(const Rational& r, const Rational& deg, const Rational& H2) {
    // ch(i_* E) = i_*(ch(E) (1 - c1(N)/2)), deg N = H^2
    return {{Rational(0), r, deg - r * H2 / 2}};
}

GeomChart build_chart(const WeightedType& t) {
    GeomChart c;
    c.type = t;
    auto g = admissible_geometry(t);
    if (!g) throw std::invalid_argument("type " + t.str() + " is not admissible");
    c.x = *g;
    if (t.epsilon == 0) {
        c.ambient_type = t;
        c.ambient = *g;
    } else {
        std::vector<int> w = t.weights;
        for (int i = 0; i < -t.epsilon; ++i) w.push_back(1);
        c.ambient_type = WeightedType::make(w, t.degree);
        c.ambient = *admissible_geometry(c.ambient_type);
    }
    c.M = build_M(c.ambient);
    c.sol = solve_alpha(c.M, t.degree);
    c.consts = constants(t);
    return c;
}

CycloNum chart_zg_dagger(const GeomChart& ch, const ChClass& E) {
    if (ch.type.epsilon == 0) return zg_dagger(E, ch.sol);
    const int amb_dim = static_cast<int>(ch.sol.ell.size()) - 1;
    if (E.dim() != amb_dim + ch.type.epsilon) throw std::invalid_argument("class dimension does not match X");
    if (E.dim() == 0) {
        ChClass pushed{std::vector<Rational>(amb_dim + 1, Rational(0))};
        pushed.c.back() = E.c[0];
        return zg_dagger(pushed, ch.sol);
    }
    return zg_dagger(push_curve_to_k3(E.c[0], E.c[1], ch.ambient.hyperplane_self_intersection), ch.sol);
}

}  // namespace gepner
