#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "gepner/quiverrep.hpp"

using namespace gepner;

namespace {

struct Row {
    int n, eps;
    std::vector<int> weights;
    int d;
    std::string W, X;
};

// Table of admissible types as printed
const std::vector<Row> kTable{
    {4, 0, {1, 1, 1, 1}, 4, "x1^4 + x2^4 + x3^4 + x4^4", "K3 surface"},
    {4, 0, {3, 1, 1, 1}, 6, "x1^2 + x2^6 + x3^6 + x4^6", "K3 surface"},
    {3, -1, {1, 1, 1}, 4, "x1^4 + x2^4 + x3^4", "genus 3 curve"},
    {3, -1, {3, 1, 1}, 6, "x1^2 + x2^6 + x3^6", "genus 2 curve"},
    {2, -2, {1, 1}, 4, "x1^4 + x2^4", "4 points"},
    {2, -2, {3, 1}, 6, "x1^2 + x2^6", "2 points"},
    {3, 0, {1, 1, 1}, 3, "x1^3 + x2^3 + x3^3", "elliptic curve"},
    {3, 0, {2, 1, 1}, 4, "x1^2 + x2^4 + x3^4", "elliptic curve"},
    {3, 0, {3, 2, 1}, 6, "x1^2 + x2^3 + x3^6", "elliptic curve"},
    {2, -1, {1, 1}, 3, "x1^3 + x2^3", "3 points"},
    {2, -1, {2, 1}, 4, "x1^2 + x2^4", "2 points"},
    {2, -1, {3, 2}, 6, "x1^2 + x2^3", "1 point"},
};

std::vector<WeightedType> table_types() {
    std::vector<WeightedType> out;
    for (const auto& r : kTable) out.push_back(WeightedType::make(r.weights, r.d));
    return out;
}

std::vector<WeightedType> n2_types() {
    std::vector<WeightedType> out;
    for (const auto& t : table_types())
        if (t.n() == 2) out.push_back(t);
    return out;
}

// collects failures of one criterion
struct Check {
    std::vector<std::string> failures;
    std::string note;
    void operator()(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

int total(const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += x;
    return s;
}

void c1(Check& ck) {
    auto rows = enumerate_types(2, 4, 6);
    ck(rows.size() == kTable.size(), "row count " + std::to_string(rows.size()));
    std::set<std::string> want, got;
    for (const auto& r : kTable) {
        std::ostringstream s;
        s << r.n << "|" << r.eps << "|" << WeightedType::make(r.weights, r.d).str() << "|" << r.W << "|" << r.X;
        want.insert(s.str());
    }
    for (const auto& r : rows) {
        std::ostringstream s;
        s << r.type.n() << "|" << r.type.epsilon << "|" << r.type.str() << "|" << r.W << "|" << r.geometry.label();
        got.insert(s.str());
    }
    for (const auto& w : want) ck(got.count(w) == 1, "missing " + w);
    for (const auto& g : got) ck(want.count(g) == 1, "extra " + g);
}

void c2(Check& ck) {
    for (const auto& t : table_types()) {
        const int d = t.degree;
        CycloNum closed(-1);
        for (int a : t.weights) closed *= CycloNum(1) - cyclo(d, -a);
        ck(zg(koszul_C(t, 0)) == closed, t.str());
    }
}

void c3(Check& ck) {
    for (const auto& t : table_types()) {
        CaseLattice L = build_lattice(t);
        ck(verify_gepner(L), "identity " + t.str());
        for (Eigen::Index i = 0; i < L.tau_mat.rows(); ++i)
            for (Eigen::Index j = 0; j < L.tau_mat.cols(); ++j) {
                CaseLattice M = L;
                M.tau_mat(i, j) += 1;
                ck(!verify_gepner(M), "mutation survived " + t.str());
            }
    }
}

void c4(Check& ck) {
    const CycloNum i = cyclo(4, 1), one(1);
    CaseLattice K = build_lattice(parse_type("1,1,1,1:4"));
    ck(zg_class(K, class_of(K, "O_X")) == i - one, "Z(O_X)");
    ck(zg_class(K, class_of(K, "I_x")) == i, "Z(I_x)");
    CaseLattice P = build_lattice(parse_type("1,1:4"));
    ck(zg_class(P, class_of(P, "tauPsiO_x")) == -i, "Z(tau Psi O_x)");
    ck(zg_class(P, class_of(P, "C(2)[-2]")) == i - one, "Z(C(2)[-2])");
    for (const auto& t : table_types()) {
        if (t.epsilon >= 0) continue;
        CaseLattice L = build_lattice(t);
        const CycloNum cw = constants(t).c_w, z = cyclo(t.degree, 1);
        ck(zg_class(L, class_of(L, "PsiO_x")) * cw == -cw, "Z(Psi O_x) " + t.str());
        for (int j = 0; j < -t.epsilon; ++j) {
            const CycloNum want = cw * z.pow(j) * (one - z);
            ck(zg_class(L, class_of(L, "C(" + std::to_string(j) + ")")) * cw == want, "lattice Z(C(j)) " + t.str());
            ck(zg(koszul_C(t, j)) == want, "supertrace Z(C(j)) " + t.str());
        }
    }
}

int cc_closed(const WeightedType& t, int j, int i) {
    const int a1 = t.weights[0], a2 = t.weights[1];
    if (i == 1 && (j == a1 || j == a2)) return graded_dims(t)[static_cast<size_t>(j)];
    if (i == 2 && j == a1 + a2) return 1;
    return 0;
}

int cm_closed(const WeightedType& t, int j, int i) {
    const int a1 = t.weights[0], a2 = t.weights[1];
    if (i == 1 && j < a2) return 1;
    if (i == 2 && j >= a1 && j < a1 + a2) return 1;
    return 0;
}

void c5(Check& ck) {
    for (const auto& s : {"1,1:4", "3,1:6"}) {
        WeightedType t = parse_type(s);
        const int top = t.degree - t.weight_sum();
        for (int j = 1; j <= top; ++j)
            for (int i = 0; i <= 3; ++i) ck(ext_cc(t, j, i) == cc_closed(t, j, i), std::string("cc ") + s);
        for (const auto& p : fermat_points(t))
            for (int j = 0; j < top; ++j)
                for (int i = 0; i <= 3; ++i) ck(ext_cm(t, j, p, i) == cm_closed(t, j, i), std::string("cm ") + s);
    }
    WeightedType t = parse_type("1,1:4");
    auto pts = fermat_points(t);
    auto rels = yoneda_relations(t);
    ck(rels.size() == 1 + pts.size(), "relation count");
    if (rels.size() != 1 + pts.size()) return;
    // x1 (x) x2 - x2 (x) x1
    const auto& cc = rels[0];
    ck(cc.terms.size() == 2 && cc.terms[0].left == "x1" && cc.terms[0].right == "x2" &&
           cc.terms[1].left == "x2" && cc.terms[1].right == "x1",
       "C-C terms");
    ck(cc.terms[0].coeff == CycloNum(1) && cc.terms[1].coeff == CycloNum(-1), "C-C coefficients");
    // p2 x1 (x) u - p1 x2 (x) u up to a nonzero scalar
    for (size_t k = 0; k < pts.size(); ++k) {
        const auto& r = rels[k + 1];
        const CycloNum a = r.terms[0].coeff, b = r.terms[1].coeff;
        const CycloNum p1 = pts[k][0], p2 = pts[k][1];
        ck(r.terms[0].left == "x1" && r.terms[1].left == "x2", "point terms");
        ck(!(a.is_zero() && b.is_zero()) && a * (-p1) == b * p2, "point pattern");
    }
    ck(yoneda_relations(parse_type("3,1:6")).empty(), "(3,1;6) has no relation");
}

void c6(Check& ck) {
    for (const auto& t : n2_types()) {
        auto Q = heart_quiver(t);
        StabilitySpec spec = default_spec(t);
        std::vector<std::string> names{"C1m1"};
        for (size_t j = 1; j <= Q.points.size(); ++j) names.push_back("tauPsiOx(" + std::to_string(j) + ")");
        if (t.epsilon == -2) names.push_back("C2m1");
        for (const auto& name : names)
            for (int p : {5, 7}) {
                StabilityResult r = is_stable(Q, reduce(Q, named_object(Q, name), p), spec);
                ck(r.verdict == Verdict::Stable && !r.witness,
                   t.str() + " " + name + " over F_" + std::to_string(p) + ": " + to_string(r.verdict));
            }
    }
}

void c7(Check& ck, int reps_per_quiver) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> D(0, 3);
    int split = 0, count = 0, max_len = 0;
    for (const auto& t : n2_types()) {
        auto Q = heart_quiver(t);
        StabilitySpec spec = default_spec(t);
        for (int trial = 0; trial < reps_per_quiver; ++trial) {
            std::vector<int> dims;
            do {
                dims.clear();
                for (int v = 0; v < Q.num_vertices(); ++v) dims.push_back(D(rng));
            } while (total(dims) == 0 || total(dims) > 12);
            FpRep r = random_rep(Q, 5, dims, rng);
            const std::string tag = t.str() + " trial " + std::to_string(trial);
            ck(satisfies_relations(Q, r), tag + " relations");
            HNResult h = hn_filtration(Q, r, spec);
            ck(!h.tie, tag + " tie");
            std::vector<int> sum(dims.size(), 0);
            for (size_t k = 0; k < h.factors.size(); ++k) {
                const auto& f = h.factors[k];
                for (size_t v = 0; v < dims.size(); ++v) sum[v] += f.dims[v];
                ck(is_stable(Q, f.rep, spec).verdict != Verdict::Unstable, tag + " factor not semistable");
                if (k) ck(spec.compare(h.factors[k - 1].dims, f.dims) > 0, tag + " phases not decreasing");
            }
            ck(sum == dims, tag + " classes do not telescope");
            ++count;
            split += h.factors.size() > 1;
            max_len = std::max(max_len, static_cast<int>(h.factors.size()));
            ck(weak_seesaw(Q, r, spec), tag + " seesaw");
        }
    }
    ck.note = std::to_string(count) + " reps, " + std::to_string(split) + " with a nontrivial filtration, longest " +
              std::to_string(max_len) + " factors";
}

void c8(Check& ck) {
    for (const auto& t : table_types()) {
        if (t.epsilon >= 0) continue;
        for (const auto& e : phase_table(build_lattice(t))) ck(e.ok, t.str() + " " + e.label);
    }
    static const std::regex q_re(R"(Q_\{(\d+),(\d+)\})");
    for (int d = 3; d <= 12; ++d)
        for (const auto& f : finite_phases(WeightedType::make({1}, d))) {
            std::smatch m;
            if (!std::regex_match(f.label, m, q_re)) {
                ck(false, "label " + f.label);
                continue;
            }
            const int j = std::stoi(m[1].str()), l = std::stoi(m[2].str());
            const Rational closed = Rational(-1, 2) - Rational(l, d) + Rational(2 * j, d);
            ck(f.phase == closed, "closed form " + f.label);
            // ray check with certified floats
            const std::complex<double> z = embed(f.z, 128).mid();
            const double diff = std::remainder(std::arg(z) / M_PI - closed.convert_to<double>(), 2.0);
            ck(std::abs(z) > 0 && std::abs(diff) < 1e-9, "ray " + f.label);
        }
}

void c9(Check& ck) {
    for (const auto& t : table_types()) {
        if (t.epsilon != 0) continue;
        GeometryDescriptor g = *admissible_geometry(t);
        const int d = t.degree;
        const CycloNum z = cyclo(d, 1);
        const QMat M = build_M(g);
        AlphaSolution s = solve_alpha(M, d);
        const int n = static_cast<int>(M.rows());
        ck(rank(CMat(to_cyclo(M).transpose() - z * CMat::Identity(n, n))) == n - 1, "eigenspace dim " + t.str());
        if (g.kind == GeometryDescriptor::Kind::Elliptic) ck(alpha0_integral(s) == z - CycloNum(1), "alpha_0 " + t.str());
        if (g.kind == GeometryDescriptor::Kind::K3)
            ck(alpha1_H_coefficient(s, g.hyperplane_self_intersection) == z / (CycloNum(1) - z), "alpha_1 " + t.str());
    }
    std::set<std::pair<int, int>> hits;
    for (int d = 3; d <= 100; ++d)
        for (int m = 1; m <= 12; ++m)
            if (k3_constraint(m, d)) hits.insert({m, d});
    ck(hits == std::set<std::pair<int, int>>{{2, 4}, {1, 6}}, "k3_constraint set");
}

void c10(Check& ck) {
    for (const auto& t : table_types()) {
        const GepnerConstants k = constants(t);
        const Rational theta = Rational(t.n() - 1, 2) - Rational(t.weight_sum() + 1, t.degree);
        ck(k.theta_w == theta, "theta_W " + t.str());
        ComplexInterval b = embed(k.c_w, 128);
        const long double ang = std::atan2(b.im, b.re) / static_cast<long double>(M_PI);
        const long double diff = std::remainder(ang - theta.convert_to<long double>(), 2.0L);
        ck(std::abs(diff) < 1e-12L && std::hypot(b.re, b.im) > 0, "ray " + t.str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 200;
    struct Criterion {
        int id;
        std::string title;
        double limit_s;  // 0 = no limit
        std::function<void(Check&)> run;
    };
    std::vector<Criterion> all{
        {1, "Table 1 reproduction", 1, c1},
        {2, "supertrace closed form", 1, c2},
        {3, "Gepner eigen-identity and mutations", 1, c3},
        {4, "geometric charge values", 0, c4},
        {5, "Ext tables and Yoneda patterns", 10, c5},
        {6, "named-object stability over F_5, F_7", 60, c6},
        {7, "HN property suite (" + std::to_string(reps) + " reps per quiver)", 300,
         [reps](Check& ck) { c7(ck, reps); }},
        {8, "phase tables", 0, c8},
        {9, "eigen solving and k3_constraint", 0, c9},
        {10, "C_W on the theta_W ray", 0, c10},
    };
    int failed = 0;
    for (const auto& c : all) {
        Check ck;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(ck);
        } catch (const std::exception& e) {
            ck(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs > c.limit_s) ck(false, "over time limit");
        const bool ok = ck.failures.empty();
        failed += !ok;
        std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << "  " << c.title << "  (" << std::fixed
                  << std::setprecision(3) << secs << " s)\n";
        if (!ck.note.empty()) std::cout << "    " << ck.note << "\n";
        for (size_t k = 0; k < std::min<size_t>(ck.failures.size(), 10); ++k)
            std::cout << "    " << ck.failures[k] << "\n";
    }
    return failed ? 1 : 0;
}
