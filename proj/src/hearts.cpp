#include "gepner/hearts.hpp"

#include <cmath>
#include <functional>
#include <regex>

namespace gepner {

std::string to_string(CaseId c) {
    switch (c) {
        case CaseId::C30: return "(3,0)";
        case CaseId::C2m1: return "(2,-1)";
        case CaseId::C40: return "(4,0)";
        case CaseId::C3m1: return "(3,-1)";
        case CaseId::C2m2: return "(2,-2)";
    }
    return "";
}

std::vector<int> graded_dims(const WeightedType& t) {
    std::vector<int> dims(static_cast<size_t>(t.degree), 0);
    dims[0] = 1;
    for (int a : t.weights)
        for (int k = a; k < t.degree; ++k) dims[static_cast<size_t>(k)] += dims[static_cast<size_t>(k - a)];
    return dims;
}

namespace {

CaseId case_of(const WeightedType& t) {
    const int n = t.n(), e = t.epsilon;
    if (n == 3 && e == 0) return CaseId::C30;
    if (n == 2 && e == -1) return CaseId::C2m1;
    if (n == 4 && e == 0) return CaseId::C40;
    if (n == 3 && e == -1) return CaseId::C3m1;
    if (n == 2 && e == -2) return CaseId::C2m2;
    throw UnsupportedCase(t.str());
}

QMat int_mat(int r, int c) { return QMat::Zero(r, c); }

std::string point_label(int j) { return "PsiO_p" + std::to_string(j); }

}  // namespace

CaseLattice build_lattice(const WeightedType& t) {
    CaseLattice L;
    L.case_id = case_of(t);
    L.type = t;
    auto g = admissible_geometry(t);
    if (!g) throw UnsupportedCase(t.str() + " is not admissible");
    L.x = *g;
    L.dim_R = graded_dims(t);
    const int d = t.degree;
    const CycloNum z = cyclo(d, 1), one(1);
    GepnerConstants k = constants(t);
    L.theta_w = k.theta_w;
    const auto R = [&](int i) { return Rational(L.dim_R[static_cast<size_t>(i)]); };

    switch (L.case_id) {
        case CaseId::C30: {
            const Rational h = L.x.hyperplane_self_intersection;
            L.basis = {"rank", "degree"};
            L.tau_mat = build_M(L.x);
            L.zg_row = solve_alpha(L.tau_mat, d).ell;
            L.theta = L.theta_w;
            break;
        }
        case CaseId::C2m1: {
            const int p = L.x.count;
            L.num_points = p;
            L.basis = {"C(0)"};
            for (int j = 1; j <= p; ++j) L.basis.push_back(point_label(j));
            L.zg_row = CRow::Constant(p + 1, CycloNum(-1));
            L.zg_row(0) = one - z;
            L.tau_mat = int_mat(p + 1, p + 1);
            // [C(1)] = -(dim R_1 [C(0)] + [Psi omega_X]), omega_X = sum of the points
            L.tau_mat(0, 0) = -R(1);
            for (int j = 1; j <= p; ++j) {
                L.tau_mat(j, 0) = -1;
                L.tau_mat(j, j) = 1;
                L.tau_mat(0, j) = 1;
            }
            L.theta = L.theta_w + Rational(5, 6);
            break;
        }
        case CaseId::C2m2: {
            const int p = L.x.count;
            L.num_points = p;
            L.basis = {"C(1)", "C(0)"};
            for (int j = 1; j <= p; ++j) L.basis.push_back(point_label(j));
            L.zg_row = CRow::Constant(p + 2, CycloNum(-1));
            L.zg_row(0) = z * (one - z);
            L.zg_row(1) = one - z;
            L.tau_mat = int_mat(p + 2, p + 2);
            L.tau_mat(0, 0) = -R(1);
            L.tau_mat(1, 0) = -R(2);
            L.tau_mat(0, 1) = 1;
            for (int j = 2; j < p + 2; ++j) {
                L.tau_mat(j, 0) = -1;
                L.tau_mat(j, j) = 1;
                L.tau_mat(1, j) = 1;
            }
            L.theta = L.theta_w + Rational(1, 2);
            break;
        }
        case CaseId::C3m1: {
            GeomChart ch = build_chart(t);
            const Rational h = ch.ambient.hyperplane_self_intersection;
            const int gen = L.x.genus;
            L.basis = {"C(0)", "PsiO_X", "PsiO_pt"};
            L.zg_row.resize(3);
            L.zg_row(0) = one - z;
            L.zg_row(1) = chart_zg_dagger(ch, ChClass{{1, 0}});
            L.zg_row(2) = chart_zg_dagger(ch, ChClass{{0, 1}});
            L.tau_mat = int_mat(3, 3);
            // [C(1)] = -(dim R_1 [C(0)] + [Psi omega_X]), ch(omega_X) = (1, 2g - 2)
            L.tau_mat(0, 0) = -R(1);
            L.tau_mat(1, 0) = -1;
            L.tau_mat(2, 0) = -(2 * gen - 2);
            // [tau Psi F] = [Psi F(1)] + chi(F(1)) [C(0)]
            L.tau_mat(0, 1) = h + 1 - gen;
            L.tau_mat(1, 1) = 1;
            L.tau_mat(2, 1) = h;
            L.tau_mat(0, 2) = 1;
            L.tau_mat(2, 2) = 1;
            L.theta = L.theta_w;
            break;
        }
        case CaseId::C40: {
            const Rational H2 = L.x.hyperplane_self_intersection, m = H2 / 2;
            L.basis = {"v0", "v1H", "v2"};
            QMat T(3, 3);
            T << 1, 0, 0, H2 / 2, H2, 0, m / 4 + 1, m, 1;
            L.to_mukai = T;
            QMat Ti = *inverse(T);
            L.tau_mat = T * (build_M(L.x) * Ti);
            L.zg_row = solve_alpha(build_M(L.x), d).ell * to_cyclo(Ti);
            L.theta = L.theta_w - 1;
            break;
        }
    }
    if (!verify_gepner(L)) throw GepnerIdentityFailure(t.str());
    return L;
}

CycloNum zg_class(const CaseLattice& L, const KClass& v) {
    if (v.size() != L.rank()) throw std::invalid_argument("class has " + std::to_string(v.size()) + " coordinates, lattice rank is " + std::to_string(L.rank()));
    CycloNum s(0);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) s += L.zg_row(i) * CycloNum(v(i));
    return s;
}

bool verify_gepner(const CaseLattice& L) {
    const CycloNum z = cyclo(L.d(), 1);
    for (int i = 0; i < L.rank(); ++i) {
        QVec col = L.tau_mat.col(i);
        if (zg_class(L, col) != z * L.zg_row(i)) return false;
    }
    return true;
}

bool tau_power_is_identity(const CaseLattice& L) {
    return equal(mat_pow(L.tau_mat, L.d()), QMat::Identity(L.rank(), L.rank()));
}

QuiverShape quiver_shape(const CaseLattice& L) {
    QuiverShape q;
    if (L.case_id != CaseId::C2m1 && L.case_id != CaseId::C2m2)
        throw UnsupportedCase("no quiver model for " + to_string(L.case_id));
    q.vertices = L.basis;
    const int nv = L.rank();
    q.arrows = Eigen::MatrixXi::Zero(nv, nv);
    q.relations = Eigen::MatrixXi::Zero(nv, nv);
    const int c0 = L.case_id == CaseId::C2m2 ? 1 : 0;
    for (int j = c0 + 1; j < nv; ++j) q.arrows(c0, j) = 1;
    if (L.case_id == CaseId::C2m2) {
        const int r1 = L.dim_R[1];
        q.arrows(0, 1) = r1;
        // paths C(1) -> C(0) -> p span r1 dimensions, one of which survives
        for (int j = 2; j < nv; ++j) q.relations(0, j) = std::max(0, r1 - 1);
    }
    return q;
}

QMat euler_form(const CaseLattice& L) {
    const int nv = L.rank();
    QMat G = QMat::Zero(nv, nv);
    switch (L.case_id) {
        case CaseId::C30:
            // chi((r1,d1),(r2,d2)) = r1 d2 - r2 d1 on an elliptic curve
            G << 0, 1, -1, 0;
            break;
        case CaseId::C40: {
            const Rational H2 = L.x.hyperplane_self_intersection;
            // chi = -(v, w) with (v, w) = v1 w1 - v0 w2 - v2 w0
            G << 0, 0, 1, 0, -1 / H2, 0, 1, 0, 0;
            break;
        }
        case CaseId::C3m1: {
            const Rational g = L.x.genus;
            G << 1, g - 1, -1, 0, 1 - g, 1, 0, -1, 0;
            break;
        }
        default: {
            QuiverShape q = quiver_shape(L);
            for (int i = 0; i < nv; ++i)
                for (int j = 0; j < nv; ++j) G(i, j) = Rational((i == j) - q.arrows(i, j) + q.relations(i, j));
        }
    }
    return G;
}

QMat serre_from_euler(const QMat& G) {
    auto Gi = inverse(G);
    if (!Gi) throw std::domain_error("Euler form is degenerate");
    return *Gi * G.transpose();
}

QMat expected_serre(const CaseLattice& L) {
    QMat S = mat_pow(L.tau_mat, -L.type.epsilon);
    if ((L.type.n() - 2) % 2 != 0) S = -S;
    return S;
}

std::string Slope::str() const {
    if (inf > 0) return "+inf";
    if (inf < 0) return "-inf";
    if (value.is_rational()) return to_string(value.rational_value());
    return value.str();
}

double Slope::approx() const {
    if (inf) return inf * std::numeric_limits<double>::infinity();
    return embed(value).mid().real();
}

int compare(const Slope& a, const Slope& b) {
    if (a.inf != b.inf) return a.inf < b.inf ? -1 : 1;
    if (a.inf) return 0;
    return sign_real(a.value - b.value);
}

namespace {
CycloNum imag_part(const CycloNum& x) { return (x - x.conj()) / (CycloNum(2) * cyclo(4, 1)); }
}  // namespace

Slope slope_mu(const CaseLattice& L, const KClass& v) {
    Slope s;
    switch (L.case_id) {
        case CaseId::C30:
        case CaseId::C2m1:
            s.value = CycloNum(-1);
            return s;
        case CaseId::C40:
            if (v(0) == 0) s.inf = 1;
            else s.value = CycloNum(v(1) / v(0));
            return s;
        case CaseId::C3m1:
            if (v(0) == 0) s.inf = -1;
            else s.value = -imag_part(zg_class(L, v)) / CycloNum(v(0));
            return s;
        case CaseId::C2m2: {
            Rational w = 0;
            for (int j = 2; j < L.rank(); ++j) w += v(j);
            if (w == 0) s.inf = 1;
            else s.value = zg_class(L, v).re() / CycloNum(w);
            return s;
        }
    }
    return s;
}

TiltSide tilt_side(const Slope& mu) {
    return compare(mu, Slope{0, CycloNum(0)}) > 0 ? TiltSide::Torsion : TiltSide::Free;
}

KClass basis_vector(const CaseLattice& L, int i) {
    KClass v = KClass::Zero(L.rank());
    v(i) = 1;
    return v;
}

namespace {

// ch (1, H, pt) classes on the K3 or elliptic X, converted to lattice coordinates.
KClass from_ch(const CaseLattice& L, const std::vector<Rational>& ch) {
    KClass v(static_cast<Eigen::Index>(ch.size()));
    for (size_t i = 0; i < ch.size(); ++i) v(static_cast<Eigen::Index>(i)) = ch[i];
    if (L.case_id == CaseId::C40) return L.to_mukai * v;
    return v;
}

KClass named_base(const CaseLattice& L, const std::string& name) {
    for (int i = 0; i < L.rank(); ++i)
        if (L.basis[static_cast<size_t>(i)] == name) return basis_vector(L, i);
    std::smatch m;
    const bool n2 = L.case_id == CaseId::C2m1 || L.case_id == CaseId::C2m2;
    if (std::regex_match(name, m, std::regex(R"(C\((-?\d+)\))"))) {
        if (L.case_id == CaseId::C30 || L.case_id == CaseId::C40)
            throw std::invalid_argument("C(j) is not a heart object for " + to_string(L.case_id));
        const int j = std::stoi(m[1]);
        const int base = L.case_id == CaseId::C2m2 ? 1 : 0;
        KClass v = L.case_id == CaseId::C2m2 ? basis_vector(L, 0) : named_base(L, "C(0)");
        const int steps = ((j - base) % L.d() + L.d()) % L.d();
        for (int s = 0; s < steps; ++s) v = L.tau_mat * v;
        return v;
    }
    if (n2 && (name == "tauPsiO_x" || name == "tauPsiO_p1")) return L.tau_mat * named_base(L, point_label(1));
    if (n2 && name == "PsiO_x") return named_base(L, point_label(1));
    if (L.case_id == CaseId::C3m1 && (name == "PsiO_x" || name == "O_x")) return basis_vector(L, 2);
    if (L.case_id == CaseId::C3m1 && (name == "tauPsiO_pt" || name == "tauPsiO_x")) return L.tau_mat * basis_vector(L, 2);
    if (L.case_id == CaseId::C30 || L.case_id == CaseId::C40) {
        const bool k3 = L.case_id == CaseId::C40;
        const Rational mh = L.x.hyperplane_self_intersection / 2;
        if (name == "O_x") return k3 ? from_ch(L, {0, 0, 1}) : from_ch(L, {0, 1});
        if (name == "I_x" && k3) return from_ch(L, {1, 0, -1});
        if (name == "O_X") return k3 ? from_ch(L, {1, 0, 0}) : from_ch(L, {1, 0});
        if (std::regex_match(name, m, std::regex(R"(O_X\((-?\d+)\))"))) {
            const Rational k = std::stoi(m[1]);
            if (k3) return from_ch(L, {1, k, k * k * mh});
            return from_ch(L, {1, k * L.x.hyperplane_self_intersection});
        }
    }
    throw std::invalid_argument("unknown object '" + name + "' for case " + to_string(L.case_id));
}

}  // namespace

KClass class_of(const CaseLattice& L, const std::string& name) {
    std::smatch m;
    if (std::regex_match(name, m, std::regex(R"((.*)\[(-?\d+)\])"))) {
        KClass v = named_base(L, m[1]);
        if (std::stoi(m[2]) % 2 != 0) v = -v;
        return v;
    }
    return named_base(L, name);
}

std::vector<HeartGenerator> heart_generators(const CaseLattice& L) {
    // objects of A_W; torsion ones (mu > 0) enter the tilt shifted by [-1]
    std::vector<std::string> names;
    switch (L.case_id) {
        case CaseId::C30: names = {"O_x", "O_X", "O_X(1)", "O_X(-1)", "O_X(2)"}; break;
        case CaseId::C2m1: names = {"C(0)", "PsiO_x", "tauPsiO_x"}; break;
        case CaseId::C40: names = {"O_x", "O_X", "I_x", "O_X(1)", "O_X(-1)", "O_X(-2)"}; break;
        case CaseId::C3m1: names = {"C(0)", "PsiO_pt", "PsiO_X", "tauPsiO_pt", "C(1)[-1]"}; break;
        case CaseId::C2m2: names = {"PsiO_x", "C(0)", "C(1)", "tauPsiO_x", "C(2)[-1]"}; break;
    }
    std::vector<HeartGenerator> out;
    for (const auto& s : names) {
        KClass v = class_of(L, s);
        auto pos = s.find('[');
        const std::string base = s.substr(0, pos);
        int shift = pos == std::string::npos ? 0 : std::stoi(s.substr(pos + 1));
        if (tilt_side(slope_mu(L, v)) == TiltSide::Torsion) {
            --shift;
            v = -v;
        }
        out.push_back({shift == 0 ? base : base + "[" + std::to_string(shift) + "]", v, shift});
    }
    return out;
}

std::vector<WindowResult> window_check(const CaseLattice& L) {
    const Rational lo = L.theta - L.theta_w;
    std::vector<WindowResult> out;
    for (const auto& g : heart_generators(L)) {
        Phase p = phase_of(zg_class(L, g.v), lo);
        bool inside = p.exact ? (p.value > lo && p.value <= lo + 1) : (p.approx > lo.convert_to<double>() + 1e-9 && p.approx <= lo.convert_to<double>() + 1 - 1e-9);
        out.push_back({g.label, p, inside});
    }
    return out;
}

std::vector<PhaseEntry> phase_table(const CaseLattice& L) {
    if (L.type.epsilon >= 0) throw UnsupportedCase("phase table needs epsilon < 0");
    const int d = L.d();
    const CycloNum cw = constants(L.type).c_w, z = cyclo(d, 1);
    std::vector<PhaseEntry> out;
    auto add = [&](std::string label, CycloNum val, Rational closed) {
        PhaseEntry e{std::move(label), val, closed, phase_of(val, L.theta), false};
        if (e.computed.exact) {
            Rational diff = closed - e.computed.value;
            e.ok = boost::multiprecision::denominator(diff) == 1 && mod2(diff) == 0 && closed > L.theta && closed <= L.theta + 3;
        }
        out.push_back(std::move(e));
    };
    add("tauPsiO_x", -cw * z, L.theta_w + 1 + Rational(2, d));
    for (int j = 1; j <= -L.type.epsilon; ++j)
        add("C(" + std::to_string(j) + ")", cw * cyclo(d, j) * (CycloNum(1) - z),
            L.theta_w + Rational(1, d) + Rational(2 * j, d) + Rational(3, 2));
    return out;
}

bool ineqs_hold(const CaseLattice& L) {
    const int d = L.d(), e = L.type.epsilon;
    std::vector<Rational> chain = {L.theta, L.theta_w + 1, L.theta_w + 1 + Rational(2, d)};
    for (int j = 0; j <= -1 - e; ++j) chain.push_back(L.theta_w + Rational(1, d) + Rational(2 * j, d) + Rational(3, 2));
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        if (!(chain[i] < chain[i + 1])) return false;
    return chain.back() <= L.theta + 2;
}

bool condition_n2(const CaseLattice& L) {
    const int d = L.d(), e = L.type.epsilon;
    Rational lo = L.theta_w - Rational(1, d) - Rational(2 * e, d) - Rational(1, 2);
    return lo <= L.theta && L.theta < L.theta_w + 1;
}

bool hom_vanishing_window(const Rational& phi1, const Rational& phi2, int k, const WeightedType& t) {
    return phi1 > phi2 + t.n() - k - 2 - Rational(2 * t.epsilon, t.degree);
}

std::vector<FinitePhase> finite_phases(const WeightedType& t0) {
    auto [t, g] = normalize_gcd(t0);
    (void)g;
    const int d = t.degree;
    std::vector<FinitePhase> out;
    auto add = [&](std::string label, CycloNum z, Rational phi) {
        Phase p = phase_of(z, phi - 1);
        bool ok = p.exact ? p.value == phi : std::abs(p.approx - phi.convert_to<double>()) < 1e-12;
        out.push_back({std::move(label), std::move(z), phi, ok});
    };
    if (t.n() == 1) {
        for (int j = 0; j < d; ++j)
            for (int l = 1; l < d; ++l)
                add("Q_{" + std::to_string(j) + "," + std::to_string(l) + "}", cyclo(d, j - l) - cyclo(d, j),
                    Rational(-1, 2) - Rational(l, d) + Rational(2 * j, d));
        return out;
    }
    if (t.n() == 2 && t.epsilon >= 0) {
        const int s = t.weight_sum();
        // Z(C(0)) = -(1 - zeta^{-a1})(1 - zeta^{-a2})
        CycloNum z0 = -(CycloNum(1) - cyclo(d, -t.weights[0])) * (CycloNum(1) - cyclo(d, -t.weights[1]));
        Phase p0 = phase_of(z0, Rational(0));
        if (!p0.exact) throw std::domain_error("phase of C(0) is not rational");
        for (int j = 0; j < d; ++j)
            for (int k = -1; k <= 1; ++k) {
                CycloNum z = cyclo(d, j) * z0;
                if (k % 2 != 0) z = -z;
                add("C(" + std::to_string(j) + ")[" + std::to_string(k) + "]", z, p0.value + k + Rational(2 * j, s));
            }
        return out;
    }
    throw UnsupportedCase("finite phases need n = 1 or n = 2 with epsilon >= 0, got " + t.str());
}

bool clifford_hypothesis(int r, const Rational& deg, int genus) { return deg >= 0 && deg < 2 * genus * r; }

bool clifford_predicate(int R, int r, const Rational& deg) { return R <= deg / 2 + r; }

bool crucial_inequality(int R, const Rational& deg, int d) {
    CycloNum cos = cyclo(d, 1).re();
    return sign_real(CycloNum(deg) - CycloNum(R) * (CycloNum(1) - cos)) > 0;
}

void to_json(nlohmann::json& j, const CaseLattice& L) {
    j = nlohmann::json::object();
    j["case"] = to_string(L.case_id);
    j["type"] = L.type.str();
    j["basis"] = L.basis;
    nlohmann::json zg = nlohmann::json::array(), tau = nlohmann::json::array();
    for (int i = 0; i < L.rank(); ++i) {
        zg.push_back(L.zg_row(i));
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < L.rank(); ++c) row.push_back(to_string(L.tau_mat(i, c)));
        tau.push_back(row);
    }
    j["zg_row"] = zg;
    j["tau_mat"] = tau;
    j["theta"] = to_string(L.theta);
    j["theta_w"] = to_string(L.theta_w);
}

}  // namespace gepner
