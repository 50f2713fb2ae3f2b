#include <random>
#include <set>

#include "doctest.h"
#include "gepner/quiverrep.hpp"

using namespace gepner;

namespace {

const std::vector<std::string> kTypes{"1,1:3", "2,1:4", "3,2:6", "1,1:4", "3,1:6"};

using Vecs = std::set<std::vector<int>>;

// every subspace of F_p^n as the set of its elements, by closure
std::vector<Vecs> brute_subspaces(int n, int p) {
    std::vector<std::vector<int>> all;
    std::vector<int> v(static_cast<size_t>(n), 0);
    for (int code = 0;; ++code) {
        int c = code;
        for (int i = 0; i < n; ++i) {
            v[static_cast<size_t>(i)] = c % p;
            c /= p;
        }
        if (c) break;
        all.push_back(v);
    }
    std::set<Vecs> seen{{std::vector<int>(static_cast<size_t>(n), 0)}};
    std::vector<Vecs> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<Vecs> next;
        for (const auto& S : frontier)
            for (const auto& x : all) {
                if (S.count(x)) continue;
                Vecs T = S;
                for (const auto& s : S)
                    for (int a = 1; a < p; ++a) {
                        std::vector<int> y(s);
                        for (int i = 0; i < n; ++i) y[static_cast<size_t>(i)] = (y[static_cast<size_t>(i)] + a * x[static_cast<size_t>(i)]) % p;
                        T.insert(y);
                    }
                if (seen.insert(T).second) next.push_back(T);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

int dim_of(const Vecs& S, int p) {
    int d = 0;
    for (size_t s = S.size(); s > 1; s /= static_cast<size_t>(p)) ++d;
    return d;
}

std::map<std::vector<int>, long long> brute_subreps(const QuiverWithRelations& Q, const FpRep& r) {
    const int nv = Q.num_vertices();
    std::vector<std::vector<Vecs>> subs;
    for (int v = 0; v < nv; ++v) subs.push_back(brute_subspaces(r.dims[static_cast<size_t>(v)], r.p));
    std::map<std::vector<int>, long long> out;
    std::vector<size_t> idx(static_cast<size_t>(nv), 0);
    while (true) {
        bool ok = true;
        for (size_t a = 0; a < Q.arrows.size() && ok; ++a) {
            const auto& Us = subs[static_cast<size_t>(Q.arrows[a].source)][idx[static_cast<size_t>(Q.arrows[a].source)]];
            const auto& Ut = subs[static_cast<size_t>(Q.arrows[a].target)][idx[static_cast<size_t>(Q.arrows[a].target)]];
            for (const auto& u : Us) {
                std::vector<int> y(r.mats[a].size(), 0);
                for (size_t i = 0; i < y.size(); ++i) {
                    for (size_t k = 0; k < u.size(); ++k) y[i] += r.mats[a][i][k] * u[k];
                    y[i] %= r.p;
                }
                if (!Ut.count(y)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            std::vector<int> d;
            for (int v = 0; v < nv; ++v) d.push_back(dim_of(subs[static_cast<size_t>(v)][idx[static_cast<size_t>(v)]], r.p));
            ++out[d];
        }
        int v = 0;
        while (v < nv && ++idx[static_cast<size_t>(v)] == subs[static_cast<size_t>(v)].size()) idx[static_cast<size_t>(v++)] = 0;
        if (v == nv) break;
    }
    return out;
}

std::vector<int> int_class(const KClass& k) {
    std::vector<int> v;
    for (Eigen::Index i = 0; i < k.size(); ++i) v.push_back(static_cast<int>(boost::multiprecision::numerator(k(i))));
    return v;
}

std::vector<int> random_dims(const QuiverWithRelations& Q, int cap, int max_total, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> D(0, cap);
    while (true) {
        std::vector<int> d;
        for (int v = 0; v < Q.num_vertices(); ++v) d.push_back(D(rng));
        int s = 0;
        for (int x : d) s += x;
        if (s > 0 && s <= max_total) return d;
    }
}

}  // namespace

TEST_CASE("heart quivers") {
    auto q3 = heart_quiver(parse_type("1,1:3"));
    CHECK(q3.num_vertices() == 4);
    CHECK(q3.arrows.size() == 3);
    CHECK(q3.relations.empty());
    for (const auto& a : q3.arrows) CHECK(a.source == 0);
    auto q4 = heart_quiver(parse_type("1,1:4"));
    CHECK(q4.vertices == std::vector<std::string>{"C(1)", "C(0)", "PsiO_p1", "PsiO_p2", "PsiO_p3", "PsiO_p4"});
    CHECK(q4.arrows.size() == 6);
    CHECK(q4.arrows[0].label == "X1");
    CHECK(q4.arrows[1].label == "X2");
    REQUIRE(q4.relations.size() == 4);
    for (size_t j = 0; j < 4; ++j) {
        const auto& rel = q4.relations[j];
        REQUIRE(rel.terms.size() == 2);
        const auto& p = q4.points[j];
        // p2 pi X1 - p1 pi X2 up to the scalar -1
        CHECK(rel.terms[0].coeff == -p[1]);
        CHECK(rel.terms[1].coeff == p[0]);
    }
    auto q6 = heart_quiver(parse_type("3,1:6"));
    CHECK(q6.arrows.size() == 3);
    CHECK(q6.arrows[0].label == "X2");
    CHECK(q6.relations.empty());
    CHECK(heart_quiver(parse_type("1,1:4"), PointModel::Fermat).relations.size() == 4);
    CHECK_THROWS_AS(heart_quiver(parse_type("1,1,1:3")), UnsupportedCase);
    CHECK_THROWS_AS(heart_quiver(parse_type("1,1,1,1:4")), UnsupportedCase);
    for (const auto& s : kTypes) {
        INFO(s);
        ExtConsistency e = ext_quiver_consistency(parse_type(s));
        CHECK(e.arrows_ok);
        CHECK(e.relations_ok);
        CHECK(e.coefficients_ok);
        CHECK(e.shape_ok);
    }
}

TEST_CASE("named objects satisfy relations and match lattice classes") {
    for (const auto& s : kTypes) {
        WeightedType t = parse_type(s);
        CaseLattice L = build_lattice(t);
        for (PointModel m : {PointModel::Rational, PointModel::Fermat}) {
            auto Q = heart_quiver(t, m);
            for (const auto& name : named_objects(t)) {
                INFO(s << " " << name);
                QRep r = named_object(Q, name);
                CHECK(satisfies_relations(Q, r));
            }
            CHECK(named_object(Q, "tauPsiOx").dims == int_class(class_of(L, "tauPsiO_x")));
            CHECK(named_object(Q, "PsiOx").dims == int_class(class_of(L, "PsiO_x")));
            CHECK(named_object(Q, "C0").dims == int_class(class_of(L, "C(0)")));
            if (t.epsilon == -1) {
                CHECK(named_object(Q, "C1m1").dims == int_class(class_of(L, "C(1)[-1]")));
            } else {
                CHECK(named_object(Q, "C1m1").dims == int_class(-class_of(L, "C(1)[-1]")));
                CHECK(named_object(Q, "C2m1").dims == int_class(class_of(L, "C(2)[-1]")));
            }
        }
    }
    auto Q4 = heart_quiver(parse_type("1,1:4"));
    CHECK(named_object(Q4, "C2m1").dims == std::vector<int>{2, 3, 1, 1, 1, 1});
    CHECK(named_object(heart_quiver(parse_type("3,1:6")), "C2m1").dims == std::vector<int>{1, 1, 1, 1});
    CHECK(named_object(heart_quiver(parse_type("1,1:3")), "C1m1").dims == std::vector<int>{2, 1, 1, 1});
    CHECK_THROWS_AS(named_object(Q4, "C3m1"), InvalidObject);
    CHECK_THROWS_AS(named_object(Q4, "PsiOx(5)"), InvalidObject);
    CHECK_THROWS_AS(named_object(heart_quiver(parse_type("1,1:3")), "C2m1"), InvalidObject);
    // a broken evaluation row violates the relation
    QRep bad = named_object(Q4, "C2m1");
    bad.mats[static_cast<size_t>(Q4.arrow("pi_1"))](0, 0) += CycloNum(1);
    CHECK_FALSE(satisfies_relations(Q4, bad));
}

TEST_CASE("reduction mod p") {
    CHECK(reduce_mod_p(CycloNum(Rational(1, 2)), 5) == 3);
    CHECK_THROWS_AS(reduce_mod_p(CycloNum(Rational(1, 5)), 5), BadPrime);
    CHECK_THROWS_AS(reduce_mod_p(cyclo(8, 1), 5), BadPrime);
    const int i13 = reduce_mod_p(cyclo(4, 1), 13);
    CHECK(i13 * i13 % 13 == 12);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> U(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> a(4), b(4);
        for (auto& x : a) x = U(rng);
        for (auto& x : b) x = U(rng);
        CycloNum x(8, a), y(8, b);
        CHECK(reduce_mod_p(x * y, 17) == reduce_mod_p(x, 17) * reduce_mod_p(y, 17) % 17);
        CHECK(reduce_mod_p(x + y, 17) == (reduce_mod_p(x, 17) + reduce_mod_p(y, 17)) % 17);
        CHECK(reduce_mod_p(x * cyclo(4, 1), 17) == reduce_mod_p(x, 17) * reduce_mod_p(cyclo(8, 2), 17) % 17);
    }
    auto Q = heart_quiver(parse_type("1,1:4"));
    CHECK_FALSE(good_prime(Q, 2));
    CHECK_FALSE(good_prime(Q, 3));
    for (int p : {5, 7, 11}) CHECK(good_prime(Q, p));
    auto F = heart_quiver(parse_type("1,1:4"), PointModel::Fermat);
    CHECK_FALSE(good_prime(F, 5));
    CHECK(good_prime(F, 17));
    CHECK_THROWS_AS(reduce(Q, named_object(Q, "C2m1"), 3), BadPrime);
}

TEST_CASE("all_subreps small examples") {
    auto Q = heart_quiver(parse_type("1,1:3"));
    FpRep tau = reduce(Q, named_object(Q, "tauPsiOx(1)"), 5);
    auto subs = all_subreps(Q, tau);
    CHECK(subs.size() == 3);
    CHECK(subs.at({0, 0, 0, 0}) == 1);
    CHECK(subs.at({0, 1, 0, 0}) == 1);
    CHECK(subs.at({1, 1, 0, 0}) == 1);
    for (int p : {5, 7}) {
        FpRep x = reduce(Q, named_object(Q, "PsiOx(2)"), p);
        auto two = all_subreps(Q, direct_sum(Q, x, x));
        long long n = 0;
        for (const auto& [d, c] : two) n += c;
        CHECK(n == p + 3);
    }
    FpRep zero;
    zero.p = 5;
    zero.dims = {0, 0, 0, 0};
    zero.mats.assign(3, {});
    auto z = all_subreps(Q, zero);
    CHECK(z.size() == 1);
    CHECK(z.begin()->second == 1);
    std::mt19937_64 rng(1);
    FpRep big = random_rep(Q, 5, {5, 1, 1, 1}, rng);
    CHECK_THROWS_AS(all_subreps(Q, big), ResourceLimit);
    CHECK_THROWS_AS(all_subreps(Q, reduce(Q, named_object(Q, "C1m1"), 19)), ResourceLimit);
}

TEST_CASE("all_subreps agrees with brute force") {
    std::mt19937_64 rng(2024);
    for (const auto& s : kTypes) {
        auto Q = heart_quiver(parse_type(s));
        for (int trial = 0; trial < 6; ++trial) {
            auto dims = random_dims(Q, 2, 7, rng);
            FpRep r = random_rep(Q, 3 + 2 * (trial % 2), dims, rng);
            if (!good_prime(Q, r.p)) continue;
            REQUIRE(satisfies_relations(Q, r));
            INFO(s << " trial " << trial);
            CHECK(all_subreps(Q, r) == brute_subreps(Q, r));
            for (const auto& [d, c] : all_subreps(Q, r)) {
                auto found = subreps_with_dims(Q, r, d);
                CHECK(static_cast<long long>(found.size()) == c);
                const Subrep& S = found.front();
                CHECK(satisfies_relations(Q, restrict_to(Q, r, S)));
                CHECK(satisfies_relations(Q, quotient_by(Q, r, S)));
            }
        }
    }
}

TEST_CASE("named object stability") {
    for (const auto& s : kTypes) {
        WeightedType t = parse_type(s);
        StabilitySpec spec = default_spec(t);
        auto Q = heart_quiver(t);
        auto F = heart_quiver(t, PointModel::Fermat);
        int fermat_prime = 0;
        for (int p : {13, 17})
            if (!fermat_prime && good_prime(F, p)) fermat_prime = p;
        REQUIRE(fermat_prime != 0);
        std::vector<std::string> names{"C1m1", "tauPsiOx(1)"};
        if (Q.points.size() > 1) names.push_back("tauPsiOx(2)");
        if (t.epsilon == -2) names.push_back("C2m1");
        for (const auto& name : names) {
            for (int p : {5, 7, 11}) {
                INFO(s << " " << name << " p=" << p);
                StabilityResult r = is_stable(Q, reduce(Q, named_object(Q, name), p), spec);
                CHECK(r.verdict == Verdict::Stable);
                CHECK_FALSE(r.witness);
            }
            INFO(s << " " << name << " Fermat p=" << fermat_prime);
            CHECK(is_stable(F, reduce(F, named_object(F, name), fermat_prime), spec).verdict == Verdict::Stable);
        }
    }
    CaseLattice L = build_lattice(parse_type("1,1:4"));
    CHECK(slope_mu(L, class_of(L, "C(2)[-1]")).value == CycloNum(Rational(1, 4)));
}

TEST_CASE("unstable and semistable verdicts") {
    auto Q = heart_quiver(parse_type("1,1:3"));
    StabilitySpec spec = default_spec(parse_type("1,1:3"));
    FpRep tau1 = reduce(Q, named_object(Q, "tauPsiOx(1)"), 5);
    FpRep x2 = reduce(Q, named_object(Q, "PsiOx(2)"), 5);
    FpRep c0 = reduce(Q, named_object(Q, "C0"), 5);
    StabilityResult a = is_stable(Q, direct_sum(Q, tau1, x2), spec);
    CHECK(a.verdict == Verdict::Unstable);
    REQUIRE(a.witness);
    CHECK(*a.witness == std::vector<int>{1, 1, 0, 0});
    // C(0) sits above the points, so C(0) + PsiO_x splits off C(0)
    CHECK(is_stable(Q, direct_sum(Q, c0, x2), spec).verdict == Verdict::Unstable);
    CHECK(is_stable(Q, direct_sum(Q, x2, x2), spec).verdict == Verdict::SemistableOnly);
    FpRep x1 = reduce(Q, named_object(Q, "PsiOx(1)"), 5);
    CHECK(is_stable(Q, direct_sum(Q, x1, x2), spec).verdict == Verdict::SemistableOnly);
}

TEST_CASE("HN filtrations") {
    auto Q = heart_quiver(parse_type("1,1:3"));
    StabilitySpec spec = default_spec(parse_type("1,1:3"));
    FpRep tau1 = reduce(Q, named_object(Q, "tauPsiOx(1)"), 7);
    HNResult single = hn_filtration(Q, tau1, spec);
    REQUIRE(single.factors.size() == 1);
    CHECK(single.factors[0].dims == tau1.dims);
    FpRep x2 = reduce(Q, named_object(Q, "PsiOx(2)"), 7);
    HNResult two = hn_filtration(Q, direct_sum(Q, x2, tau1), spec);
    REQUIRE(two.factors.size() == 2);
    CHECK(two.factors[0].dims == std::vector<int>{1, 1, 0, 0});
    CHECK(two.factors[1].dims == std::vector<int>{0, 0, 1, 0});
    CHECK_FALSE(two.tie);

    std::mt19937_64 rng(11);
    for (const auto& s : kTypes) {
        WeightedType t = parse_type(s);
        auto QQ = heart_quiver(t);
        StabilitySpec sp = default_spec(t);
        for (int trial = 0; trial < 25; ++trial) {
            auto dims = random_dims(QQ, 2, 8, rng);
            FpRep r = random_rep(QQ, 5, dims, rng);
            INFO(s << " trial " << trial);
            HNResult h = hn_filtration(QQ, r, sp);
            CHECK_FALSE(h.tie);
            std::vector<int> sum(dims.size(), 0);
            for (size_t k = 0; k < h.factors.size(); ++k) {
                for (size_t v = 0; v < dims.size(); ++v) sum[v] += h.factors[k].dims[v];
                CHECK(satisfies_relations(QQ, h.factors[k].rep));
                CHECK(is_stable(QQ, h.factors[k].rep, sp).verdict != Verdict::Unstable);
                if (k) CHECK(sp.compare(h.factors[k - 1].dims, h.factors[k].dims) > 0);
            }
            CHECK(sum == dims);
            CHECK(weak_seesaw(QQ, r, sp));
        }
    }
}

TEST_CASE("rep json round trip") {
    auto Q = heart_quiver(parse_type("1,1:4"));
    FpRep r = reduce(Q, named_object(Q, "C2m1"), 7);
    auto j = rep_to_json(Q, r);
    CHECK(j["field"] == "Fp");
    CHECK(j["dims"]["C(0)"] == 3);
    FpRep back = rep_from_json(Q, j);
    CHECK(back.dims == r.dims);
    CHECK(back.mats == r.mats);
    j["mats"]["pi_1"][0][0] = 1 + j["mats"]["pi_1"][0][0].get<int>();
    CHECK_THROWS_AS(rep_from_json(Q, j), InvalidObject);
    j["field"] = "Q";
    CHECK_THROWS_AS(rep_from_json(Q, j), InvalidObject);
}
