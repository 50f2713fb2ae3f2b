#include "gepner/quiverrep.hpp"

#include <algorithm>
#include <boost/integer/mod_inverse.hpp>
#include <functional>
#include <numeric>
#include <regex>

namespace gepner {

namespace {

using FVec = std::vector<int>;
using FMat = std::vector<FVec>;  // row-major

int md(long long a, int p) {
    a %= p;
    return static_cast<int>(a < 0 ? a + p : a);
}

int inv(int a, int p) {
    if (md(a, p) == 0) throw std::domain_error("inverse of zero mod p");
    return boost::integer::mod_inverse(md(a, p), p);
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

// Row echelon basis of span(rows) with unit pivots cleared above and below.
FMat rref(FMat rows, int p) {
    const size_t n = rows.empty() ? 0 : rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows.size(); ++c) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const int s = inv(rows[r][c], p);
        for (auto& x : rows[r]) x = md(1LL * x * s, p);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const int f = rows[i][c];
            for (size_t k = 0; k < n; ++k) rows[i][k] = md(rows[i][k] - 1LL * f * rows[r][k], p);
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

size_t pivot_of(const FVec& row) {
    size_t c = 0;
    while (row[c] == 0) ++c;
    return c;
}

// x minus its projection along the pivots of an rref basis
FVec reduce_by(const FMat& basis, FVec x, int p) {
    for (const auto& b : basis) {
        const int f = x[pivot_of(b)];
        if (f == 0) continue;
        for (size_t k = 0; k < x.size(); ++k) x[k] = md(x[k] - 1LL * f * b[k], p);
    }
    return x;
}

bool is_zero_vec(const FVec& x) {
    return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
}

bool contains(const FMat& basis, const FVec& x, int p) { return is_zero_vec(reduce_by(basis, x, p)); }

bool contains_all(const FMat& U, const FMat& W, int p) {
    return std::all_of(W.begin(), W.end(), [&](const FVec& w) { return contains(U, w, p); });
}

FVec apply(const FMat& M, const FVec& x, int p) {
    FVec y(M.size(), 0);
    for (size_t i = 0; i < M.size(); ++i) {
        long long s = 0;
        for (size_t k = 0; k < x.size(); ++k) s += 1LL * M[i][k] * x[k];
        y[i] = md(s, p);
    }
    return y;
}

FMat mat_mul(const FMat& A, const FMat& B, size_t rowsA, size_t colsB, int p) {
    FMat C(rowsA, FVec(colsB, 0));
    for (size_t i = 0; i < rowsA; ++i)
        for (size_t k = 0; k < B.size(); ++k) {
            if (A[i][k] == 0) continue;
            for (size_t j = 0; j < colsB; ++j) C[i][j] = md(C[i][j] + 1LL * A[i][k] * B[k][j], p);
        }
    return C;
}

// Kernel basis of the map x -> M x, M of size r x n.
FMat kernel(const FMat& M, size_t n, int p) {
    FMat R = rref(M, p);
    std::vector<size_t> piv;
    for (const auto& row : R) piv.push_back(pivot_of(row));
    FMat out;
    for (size_t f = 0; f < n; ++f) {
        if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
        FVec v(n, 0);
        v[f] = 1;
        for (size_t i = 0; i < R.size(); ++i) v[piv[i]] = md(-R[i][f], p);
        out.push_back(v);
    }
    return out;
}

// All subspaces of F_p^n as rref bases, grouped by dimension.
const std::vector<std::vector<FMat>>& subspaces(int n, int p) {
    static std::map<std::pair<int, int>, std::vector<std::vector<FMat>>> cache;
    auto it = cache.find({n, p});
    if (it != cache.end()) return it->second;
    std::vector<std::vector<FMat>> by_dim(static_cast<size_t>(n + 1));
    // choose pivot columns, then free entries right of each pivot in non-pivot columns
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> piv;
        for (int c = 0; c < n; ++c)
            if (mask & (1u << c)) piv.push_back(c);
        std::vector<std::pair<size_t, int>> free_slots;
        for (size_t i = 0; i < piv.size(); ++i)
            for (int c = piv[i] + 1; c < n; ++c)
                if (!(mask & (1u << c))) free_slots.push_back({i, c});
        long long total = 1;
        for (size_t s = 0; s < free_slots.size(); ++s) total *= p;
        for (long long code = 0; code < total; ++code) {
            FMat B(piv.size(), FVec(static_cast<size_t>(n), 0));
            for (size_t i = 0; i < piv.size(); ++i) B[i][static_cast<size_t>(piv[i])] = 1;
            long long c = code;
            for (auto [i, col] : free_slots) {
                B[i][static_cast<size_t>(col)] = static_cast<int>(c % p);
                c /= p;
            }
            by_dim[piv.size()].push_back(std::move(B));
        }
    }
    return cache.emplace(std::make_pair(n, p), std::move(by_dim)).first->second;
}

long long gauss_binom(int n, int k, int p) {
    if (k < 0 || k > n) return 0;
    long long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        long long a = 1, b = 1;
        for (int e = 0; e < n - i; ++e) a *= p;
        for (int e = 0; e < i + 1; ++e) b *= p;
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

int reduce_rational(const Rational& q, int p) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const Integer P(p);
    Integer num = numerator(q) % P, den = denominator(q) % P;
    if (den == 0) throw BadPrime("denominator divisible by " + std::to_string(p));
    return md(1LL * md(num.convert_to<long long>(), p) * inv(md(den.convert_to<long long>(), p), p), p);
}

int primitive_root(int p) {
    for (int g = 2; g < p; ++g) {
        bool ok = true;
        int m = p - 1;
        for (int q = 2; q <= m; ++q) {
            if (m % q) continue;
            while (m % q == 0) m /= q;
            long long x = 1;
            for (int e = 0; e < (p - 1) / q; ++e) x = x * g % p;
            if (x == 1) ok = false;
        }
        if (m > 1) {
            long long x = 1;
            for (int e = 0; e < (p - 1) / m; ++e) x = x * g % p;
            if (x == 1) ok = false;
        }
        if (ok) return g;
    }
    return 1;
}

std::vector<std::pair<int, int>> monomials(const WeightedType& t, int k) {
    std::vector<std::pair<int, int>> out;
    const int a1 = t.weights[0], a2 = t.weights[1];
    for (int e1 = k / a1; e1 >= 0; --e1)
        if ((k - a1 * e1) % a2 == 0) out.push_back({e1, (k - a1 * e1) / a2});
    return out;
}

CycloNum eval_monomial(const std::pair<int, int>& m, const std::vector<CycloNum>& pt) {
    return pt[0].pow(m.first) * pt[1].pow(m.second);
}

struct RationalModel {
    std::string W;
    std::vector<std::vector<int>> points;
};

std::optional<RationalModel> rational_model(const WeightedType& t) {
    const int a1 = t.weights[0], a2 = t.weights[1], d = t.degree;
    auto key = std::make_tuple(a1, a2, d);
    if (key == std::make_tuple(1, 1, 3))
        return RationalModel{"x1^3 - 2*x1^2*x2 - x1*x2^2 + 2*x2^3", {{1, 1}, {-1, 1}, {2, 1}}};
    if (key == std::make_tuple(1, 1, 4))
        return RationalModel{"x1^4 - 5*x1^2*x2^2 + 4*x2^4", {{1, 1}, {-1, 1}, {2, 1}, {-2, 1}}};
    if (key == std::make_tuple(2, 1, 4)) return RationalModel{"x1^2 - x2^4", {{1, 1}, {-1, 1}}};
    if (key == std::make_tuple(3, 1, 6)) return RationalModel{"x1^2 - x2^6", {{1, 1}, {-1, 1}}};
    if (key == std::make_tuple(3, 2, 6)) return RationalModel{"x1^2 + x2^3", {{1, -1}}};
    return std::nullopt;
}

void check_quiver_type(const WeightedType& t) {
    if (t.n() != 2 || (t.epsilon != -1 && t.epsilon != -2))
        throw UnsupportedCase("no quiver model for " + t.str());
}

int c0_index(const QuiverWithRelations& Q) { return Q.type.epsilon == -2 ? 1 : 0; }
int first_point(const QuiverWithRelations& Q) { return c0_index(Q) + 1; }

std::vector<int> class_sub(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

void check_limits(const QuiverWithRelations& Q, const FpRep& r, const SubrepLimits& lim) {
    if (r.p > lim.max_prime) throw ResourceLimit("p = " + std::to_string(r.p) + " exceeds " + std::to_string(lim.max_prime));
    if (total(r.dims) > lim.max_total_dim)
        throw ResourceLimit("total dimension " + std::to_string(total(r.dims)) + " exceeds " +
                            std::to_string(lim.max_total_dim));
    for (int v = 0; v < Q.num_vertices(); ++v)
        if (r.dims[static_cast<size_t>(v)] > 4) {
            bool sink = std::none_of(Q.arrows.begin(), Q.arrows.end(), [&](const QuiverArrow& a) { return a.source == v; });
            if (!sink) throw ResourceLimit("vertex " + Q.vertices[static_cast<size_t>(v)] + " has dimension above 4");
        }
}

// span of M_a(U_s) over the arrows a: s -> v
FMat required_at(const QuiverWithRelations& Q, const FpRep& r, const std::vector<FMat>& U, int v) {
    FMat imgs;
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        if (Q.arrows[a].target != v) continue;
        for (const auto& u : U[static_cast<size_t>(Q.arrows[a].source)]) imgs.push_back(apply(r.mats[a], u, r.p));
    }
    if (imgs.empty()) return {};
    return rref(imgs, r.p);
}

// The relation matrix sum_c c * M_first, dims[mid] x dims[source].
FMat relation_block(const QuiverWithRelations& Q, const FpRep& r, const QuiverRelation& rel) {
    const auto& a0 = Q.arrows[static_cast<size_t>(rel.terms[0].first)];
    const size_t mid = static_cast<size_t>(r.dims[static_cast<size_t>(a0.target)]);
    const size_t src = static_cast<size_t>(r.dims[static_cast<size_t>(a0.source)]);
    FMat N(mid, FVec(src, 0));
    for (const auto& term : rel.terms) {
        const int c = reduce_mod_p(term.coeff, r.p);
        const auto& M = r.mats[static_cast<size_t>(term.first)];
        for (size_t i = 0; i < mid; ++i)
            for (size_t j = 0; j < src; ++j) N[i][j] = md(N[i][j] + 1LL * c * M[i][j], r.p);
    }
    return N;
}

}  // namespace

int QuiverWithRelations::vertex(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    throw std::out_of_range("no vertex " + name);
}

int QuiverWithRelations::arrow(const std::string& label) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == label) return static_cast<int>(i);
    throw std::out_of_range("no arrow " + label);
}

QuiverWithRelations heart_quiver(const WeightedType& t, PointModel model) {
    check_quiver_type(t);
    CaseLattice L = build_lattice(t);
    QuiverWithRelations Q;
    Q.type = t;
    Q.vertices = L.basis;
    auto rm = rational_model(t);
    if (model == PointModel::Rational && rm) {
        Q.model = split_w(Polynomial::parse(rm->W, 2), t);
        for (const auto& pt : rm->points) Q.points.push_back({CycloNum(pt[0]), CycloNum(pt[1])});
    } else {
        Q.model = split_w(fermat_W(t), t);
        Q.points = fermat_points(t);
    }
    const int c0 = t.epsilon == -2 ? 1 : 0;
    if (t.epsilon == -2)
        for (int k = 0; k < 2; ++k)
            if (t.weights[static_cast<size_t>(k)] == 1) Q.arrows.push_back({0, 1, "X" + std::to_string(k + 1)});
    for (size_t j = 0; j < Q.points.size(); ++j)
        Q.arrows.push_back({c0, c0 + 1 + static_cast<int>(j), "pi_" + std::to_string(j + 1)});
    if (t.epsilon == -2) {
        for (const auto& y : yoneda_relations(t, Q.points, Q.model)) {
            if (y.source != "C(1)") continue;
            const int pi = Q.arrow("pi_" + y.target.substr(std::string("PsiO_p").size()));
            QuiverRelation rel;
            for (const auto& term : y.terms) {
                if (term.coeff.is_zero()) continue;
                rel.terms.push_back({term.coeff, Q.arrow("X" + term.left.substr(1)), pi});
            }
            if (!rel.terms.empty()) Q.relations.push_back(rel);
        }
    }
    return Q;
}

std::vector<std::string> named_objects(const WeightedType& t) {
    check_quiver_type(t);
    std::vector<std::string> out{"C0", "C1m1", "PsiOx", "tauPsiOx"};
    if (t.epsilon == -2) out.insert(out.begin() + 2, "C2m1");
    return out;
}

QRep named_object(const QuiverWithRelations& Q, const std::string& name) {
    const WeightedType& t = Q.type;
    const int nv = Q.num_vertices(), c0 = c0_index(Q), fp = first_point(Q);
    const int npts = static_cast<int>(Q.points.size());
    QRep r;
    r.dims.assign(static_cast<size_t>(nv), 0);
    auto finish = [&]() {
        for (const auto& a : Q.arrows)
            r.mats.push_back(CMat::Zero(r.dims[static_cast<size_t>(a.target)], r.dims[static_cast<size_t>(a.source)]));
    };
    auto eval_rows = [&](int deg) {
        auto mons = monomials(t, deg);
        for (int j = 0; j < npts; ++j) {
            CMat& M = r.mats[static_cast<size_t>(Q.arrow("pi_" + std::to_string(j + 1)))];
            for (size_t m = 0; m < mons.size(); ++m)
                M(0, static_cast<Eigen::Index>(m)) = eval_monomial(mons[m], Q.points[static_cast<size_t>(j)]);
        }
    };

    std::smatch mt;
    static const std::regex pt_re(R"((tau)?PsiOx(?:\((\d+)\))?)");
    if (std::regex_match(name, mt, pt_re)) {
        const int j = mt[2].matched ? std::stoi(mt[2].str()) : 1;
        if (j < 1 || j > npts) throw InvalidObject(name + ": no such point");
        r.dims[static_cast<size_t>(fp + j - 1)] = 1;
        if (mt[1].matched) r.dims[static_cast<size_t>(c0)] = 1;
        finish();
        if (mt[1].matched) r.mats[static_cast<size_t>(Q.arrow("pi_" + std::to_string(j)))](0, 0) = CycloNum(1);
        return r;
    }
    if (name == "C0") {
        r.dims[static_cast<size_t>(c0)] = 1;
        finish();
        return r;
    }
    if (name == "C1" && t.epsilon == -2) {
        r.dims[0] = 1;
        finish();
        return r;
    }
    if (name == "C1m1") {
        if (t.epsilon == -2) return named_object(Q, "C1");
        r.dims[0] = static_cast<int>(monomials(t, 1).size());
        for (int j = 0; j < npts; ++j) r.dims[static_cast<size_t>(fp + j)] = 1;
        finish();
        eval_rows(1);
        return r;
    }
    if (name == "C2m1" && t.epsilon == -2) {
        auto m1 = monomials(t, 1), m2 = monomials(t, 2);
        r.dims[0] = static_cast<int>(m1.size());
        r.dims[1] = static_cast<int>(m2.size());
        for (int j = 0; j < npts; ++j) r.dims[static_cast<size_t>(fp + j)] = 1;
        finish();
        for (int k = 0; k < 2; ++k) {
            if (t.weights[static_cast<size_t>(k)] != 1) continue;
            CMat& X = r.mats[static_cast<size_t>(Q.arrow("X" + std::to_string(k + 1)))];
            for (size_t m = 0; m < m1.size(); ++m) {
                auto prod = m1[m];
                (k == 0 ? prod.first : prod.second) += 1;
                auto pos = std::find(m2.begin(), m2.end(), prod) - m2.begin();
                X(pos, static_cast<Eigen::Index>(m)) = CycloNum(1);
            }
        }
        eval_rows(2);
        return r;
    }
    throw InvalidObject(name + " for " + t.str());
}

bool satisfies_relations(const QuiverWithRelations& Q, const QRep& r) {
    for (const auto& rel : Q.relations) {
        const auto& a0 = Q.arrows[static_cast<size_t>(rel.terms[0].first)];
        const auto& b0 = Q.arrows[static_cast<size_t>(rel.terms[0].second)];
        CMat acc = CMat::Zero(r.dims[static_cast<size_t>(b0.target)], r.dims[static_cast<size_t>(a0.source)]);
        for (const auto& term : rel.terms) {
            CMat prod = r.mats[static_cast<size_t>(term.second)] * r.mats[static_cast<size_t>(term.first)];
            acc += prod * term.coeff;
        }
        for (Eigen::Index i = 0; i < acc.rows(); ++i)
            for (Eigen::Index j = 0; j < acc.cols(); ++j)
                if (!acc(i, j).is_zero()) return false;
    }
    return true;
}

bool satisfies_relations(const QuiverWithRelations& Q, const FpRep& r) {
    for (const auto& rel : Q.relations) {
        FMat N = relation_block(Q, r, rel);
        const auto& b = Q.arrows[static_cast<size_t>(rel.terms[0].second)];
        FMat P = mat_mul(r.mats[static_cast<size_t>(rel.terms[0].second)], N,
                         static_cast<size_t>(r.dims[static_cast<size_t>(b.target)]), N.empty() ? 0 : N[0].size(), r.p);
        for (const auto& row : P)
            if (!is_zero_vec(row)) return false;
    }
    return true;
}

int reduce_mod_p(const CycloNum& x, int p) {
    if (x.is_rational()) return reduce_rational(x.rational_value(), p);
    const int m = x.d();
    if ((p - 1) % m != 0) throw BadPrime("no primitive " + std::to_string(m) + "-th root of unity mod " + std::to_string(p));
    long long z = 1;
    const int g = primitive_root(p);
    for (int e = 0; e < (p - 1) / m; ++e) z = z * g % p;
    long long acc = 0, zk = 1;
    for (const auto& c : x.coeffs()) {
        acc = md(acc + 1LL * reduce_rational(c, p) * zk, p);
        zk = zk * z % p;
    }
    return static_cast<int>(acc);
}

bool good_prime(const QuiverWithRelations& Q, int p) {
    if (!is_prime(p)) return false;
    try {
        for (const auto& pt : Q.points)
            for (const auto& c : pt)
                if (!c.is_zero() && reduce_mod_p(c, p) == 0) return false;
        for (size_t i = 0; i < Q.points.size(); ++i)
            for (size_t j = i + 1; j < Q.points.size(); ++j)
                if (reduce_mod_p(Q.points[i][0] - Q.points[j][0], p) == 0) return false;
        for (const auto& rel : Q.relations)
            for (const auto& term : rel.terms) (void)reduce_mod_p(term.coeff, p);
    } catch (const BadPrime&) {
        return false;
    }
    return true;
}

FpRep reduce(const QuiverWithRelations& Q, const QRep& r, int p) {
    if (!good_prime(Q, p)) throw BadPrime(std::to_string(p) + " is not a good prime for " + Q.type.str());
    FpRep f;
    f.p = p;
    f.dims = r.dims;
    for (const auto& M : r.mats) {
        FMat F(static_cast<size_t>(M.rows()), FVec(static_cast<size_t>(M.cols()), 0));
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            for (Eigen::Index j = 0; j < M.cols(); ++j)
                F[static_cast<size_t>(i)][static_cast<size_t>(j)] = reduce_mod_p(M(i, j), p);
        f.mats.push_back(F);
    }
    return f;
}

FpRep direct_sum(const QuiverWithRelations& Q, const FpRep& a, const FpRep& b) {
    if (a.p != b.p || a.dims.size() != b.dims.size()) throw std::invalid_argument("direct_sum: incompatible reps");
    FpRep s;
    s.p = a.p;
    for (size_t v = 0; v < a.dims.size(); ++v) s.dims.push_back(a.dims[v] + b.dims[v]);
    for (size_t k = 0; k < Q.arrows.size(); ++k) {
        const size_t sv = static_cast<size_t>(Q.arrows[k].source), tv = static_cast<size_t>(Q.arrows[k].target);
        const size_t ar = static_cast<size_t>(a.dims[tv]), ac = static_cast<size_t>(a.dims[sv]);
        FMat M(static_cast<size_t>(s.dims[tv]), FVec(static_cast<size_t>(s.dims[sv]), 0));
        for (size_t i = 0; i < ar; ++i)
            for (size_t j = 0; j < ac; ++j) M[i][j] = a.mats[k][i][j];
        for (size_t i = 0; i < static_cast<size_t>(b.dims[tv]); ++i)
            for (size_t j = 0; j < static_cast<size_t>(b.dims[sv]); ++j) M[ar + i][ac + j] = b.mats[k][i][j];
        s.mats.push_back(M);
    }
    return s;
}

FpRep random_rep(const QuiverWithRelations& Q, int p, const std::vector<int>& dims, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> U(0, p - 1);
    FpRep r;
    r.p = p;
    r.dims = dims;
    std::vector<bool> constrained(Q.arrows.size(), false);
    for (const auto& rel : Q.relations)
        for (const auto& term : rel.terms) constrained[static_cast<size_t>(term.second)] = true;
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        const size_t rows = static_cast<size_t>(dims[static_cast<size_t>(Q.arrows[a].target)]);
        const size_t cols = static_cast<size_t>(dims[static_cast<size_t>(Q.arrows[a].source)]);
        FMat M(rows, FVec(cols, 0));
        if (!constrained[a])
            for (auto& row : M)
                for (auto& x : row) x = U(rng);
        r.mats.push_back(M);
    }
    for (size_t b = 0; b < Q.arrows.size(); ++b) {
        if (!constrained[b]) continue;
        // rows of M_b lie in the left kernel of every relation block ending in b
        const size_t mid = static_cast<size_t>(dims[static_cast<size_t>(Q.arrows[b].source)]);
        FMat blocksT;
        for (const auto& rel : Q.relations) {
            if (rel.terms[0].second != static_cast<int>(b)) continue;
            for (const auto& term : rel.terms)
                if (term.second != static_cast<int>(b)) throw std::logic_error("relation with mixed second arrows");
            FMat N = relation_block(Q, r, rel);
            const size_t cols = N.empty() ? 0 : N[0].size();
            for (size_t j = 0; j < cols; ++j) {
                FVec col(mid);
                for (size_t i = 0; i < mid; ++i) col[i] = N[i][j];
                blocksT.push_back(col);
            }
        }
        FMat K = kernel(blocksT, mid, p);
        for (auto& row : r.mats[b]) {
            row.assign(mid, 0);
            for (const auto& k : K) {
                const int c = U(rng);
                for (size_t i = 0; i < mid; ++i) row[i] = md(row[i] + 1LL * c * k[i], p);
            }
        }
    }
    return r;
}

nlohmann::json rep_to_json(const QuiverWithRelations& Q, const FpRep& r) {
    nlohmann::json j;
    j["field"] = "Fp";
    j["p"] = r.p;
    j["type"] = Q.type.str();
    for (size_t v = 0; v < r.dims.size(); ++v) j["dims"][Q.vertices[v]] = r.dims[v];
    j["mats"] = nlohmann::json::object();
    for (size_t a = 0; a < r.mats.size(); ++a) j["mats"][Q.arrows[a].label] = r.mats[a];
    return j;
}

FpRep rep_from_json(const QuiverWithRelations& Q, const nlohmann::json& j) {
    if (j.value("field", std::string()) != "Fp") throw InvalidObject("only Fp representations are supported");
    FpRep r;
    r.p = j.at("p").get<int>();
    if (!is_prime(r.p)) throw InvalidObject("p is not prime");
    r.dims.assign(Q.vertices.size(), 0);
    for (auto it = j.at("dims").begin(); it != j.at("dims").end(); ++it)
        r.dims[static_cast<size_t>(Q.vertex(it.key()))] = it.value().get<int>();
    for (const auto& a : Q.arrows) {
        const size_t rows = static_cast<size_t>(r.dims[static_cast<size_t>(a.target)]);
        const size_t cols = static_cast<size_t>(r.dims[static_cast<size_t>(a.source)]);
        FMat M(rows, FVec(cols, 0));
        if (j.contains("mats") && j["mats"].contains(a.label)) {
            auto given = j["mats"][a.label].get<FMat>();
            if (given.size() != rows) throw InvalidObject("arrow " + a.label + ": wrong row count");
            for (size_t i = 0; i < rows; ++i) {
                if (given[i].size() != cols) throw InvalidObject("arrow " + a.label + ": wrong column count");
                for (size_t k = 0; k < cols; ++k) M[i][k] = md(given[i][k], r.p);
            }
        } else if (rows && cols) {
            throw InvalidObject("missing matrix for arrow " + a.label);
        }
        r.mats.push_back(M);
    }
    if (!satisfies_relations(Q, r)) throw InvalidObject("representation violates the quiver relations");
    return r;
}

std::map<std::vector<int>, long long> all_subreps(const QuiverWithRelations& Q, const FpRep& r,
                                                  const SubrepLimits& lim) {
    check_limits(Q, r, lim);
    const int nv = Q.num_vertices(), p = r.p;
    std::vector<bool> sink(static_cast<size_t>(nv), true);
    for (const auto& a : Q.arrows) {
        if (a.source >= a.target) throw std::logic_error("quiver vertices are not in arrow order");
        sink[static_cast<size_t>(a.source)] = false;
    }
    std::map<std::vector<int>, long long> out;
    std::vector<FMat> U(static_cast<size_t>(nv));
    std::vector<int> dims(static_cast<size_t>(nv), 0);

    // sinks contribute Gaussian binomials once the other vertices are fixed
    auto close = [&]() {
        std::map<std::vector<int>, long long> acc{{dims, 1}};
        for (int v = 0; v < nv; ++v) {
            if (!sink[static_cast<size_t>(v)]) continue;
            const int n = r.dims[static_cast<size_t>(v)];
            const int w = static_cast<int>(required_at(Q, r, U, v).size());
            std::map<std::vector<int>, long long> next;
            for (const auto& [dv, c] : acc)
                for (int k = w; k <= n; ++k) {
                    auto dk = dv;
                    dk[static_cast<size_t>(v)] = k;
                    next[dk] += c * gauss_binom(n - w, k - w, p);
                }
            acc = std::move(next);
        }
        for (const auto& [dv, c] : acc) out[dv] += c;
    };
    std::function<void(int)> dfs = [&](int v) {
        while (v < nv && sink[static_cast<size_t>(v)]) ++v;
        if (v == nv) {
            close();
            return;
        }
        FMat W = required_at(Q, r, U, v);
        const auto& subs = subspaces(r.dims[static_cast<size_t>(v)], p);
        for (size_t k = W.size(); k < subs.size(); ++k)
            for (const auto& S : subs[k]) {
                if (!contains_all(S, W, p)) continue;
                U[static_cast<size_t>(v)] = S;
                dims[static_cast<size_t>(v)] = static_cast<int>(k);
                dfs(v + 1);
            }
        U[static_cast<size_t>(v)].clear();
        dims[static_cast<size_t>(v)] = 0;
    };
    dfs(0);
    return out;
}

std::vector<Subrep> subreps_with_dims(const QuiverWithRelations& Q, const FpRep& r, const std::vector<int>& target,
                                      const SubrepLimits& lim) {
    check_limits(Q, r, lim);
    const int nv = Q.num_vertices(), p = r.p;
    std::vector<Subrep> out;
    std::vector<FMat> U(static_cast<size_t>(nv));
    std::function<void(int)> dfs = [&](int v) {
        if (v == nv) {
            out.push_back({target, U});
            return;
        }
        FMat W = required_at(Q, r, U, v);
        const size_t k = static_cast<size_t>(target[static_cast<size_t>(v)]);
        if (W.size() > k) return;
        for (const auto& S : subspaces(r.dims[static_cast<size_t>(v)], p)[k]) {
            if (!contains_all(S, W, p)) continue;
            U[static_cast<size_t>(v)] = S;
            dfs(v + 1);
        }
    };
    dfs(0);
    return out;
}


FpRep restrict_to(const QuiverWithRelations& Q, const FpRep& r, const Subrep& s) {
    FpRep out;
    out.p = r.p;
    out.dims = s.dims;
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        const auto& Us = s.basis[static_cast<size_t>(Q.arrows[a].source)];
        const auto& Ut = s.basis[static_cast<size_t>(Q.arrows[a].target)];
        FMat M(Ut.size(), FVec(Us.size(), 0));
        for (size_t j = 0; j < Us.size(); ++j) {
            FVec y = apply(r.mats[a], Us[j], r.p);
            // coordinates in an rref basis are the entries at its pivots
            for (size_t i = 0; i < Ut.size(); ++i) M[i][j] = y[pivot_of(Ut[i])];
        }
        out.mats.push_back(M);
    }
    return out;
}

FpRep quotient_by(const QuiverWithRelations& Q, const FpRep& r, const Subrep& s) {
    FpRep out;
    out.p = r.p;
    out.dims = class_sub(r.dims, s.dims);
    // the quotient basis is the image of the standard vectors off the pivots
    std::vector<std::vector<size_t>> free_cols(r.dims.size());
    for (size_t v = 0; v < r.dims.size(); ++v) {
        std::vector<size_t> piv;
        for (const auto& b : s.basis[v]) piv.push_back(pivot_of(b));
        for (size_t c = 0; c < static_cast<size_t>(r.dims[v]); ++c)
            if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_cols[v].push_back(c);
    }
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        const size_t sv = static_cast<size_t>(Q.arrows[a].source), tv = static_cast<size_t>(Q.arrows[a].target);
        FMat M(free_cols[tv].size(), FVec(free_cols[sv].size(), 0));
        for (size_t j = 0; j < free_cols[sv].size(); ++j) {
            FVec e(static_cast<size_t>(r.dims[sv]), 0);
            e[free_cols[sv][j]] = 1;
            FVec y = reduce_by(s.basis[tv], apply(r.mats[a], e, r.p), r.p);
            for (size_t i = 0; i < free_cols[tv].size(); ++i) M[i][j] = y[free_cols[tv][i]];
        }
        out.mats.push_back(M);
    }
    return out;
}

namespace {

KClass to_kclass(const std::vector<int>& v) {
    KClass k(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) k(static_cast<Eigen::Index>(i)) = Rational(v[i]);
    return k;
}

CycloNum zdag(const CaseLattice& L, const std::vector<int>& v) {
    CycloNum z(0);
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i]) z += L.zg_row(static_cast<Eigen::Index>(i)) * CycloNum(v[i]);
    return z;
}

bool is_zero_class(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

}  // namespace

int StabilitySpec::compare(const std::vector<int>& a, const std::vector<int>& b) const {
    if (kind == StabilityKind::Slope) return gepner::compare(slope_mu(lattice, to_kclass(a)), slope_mu(lattice, to_kclass(b)));
    const CycloNum za = zdag(lattice, a), zb = zdag(lattice, b);
    if (za.is_zero() || zb.is_zero()) throw ZeroValue();
    // Im(za conj(zb)) > 0 iff the phase of a exceeds that of b inside one half-plane
    const CycloNum w = za * zb.conj();
    const CycloNum im = (w - w.conj()) * cyclo(4, 3) * Rational(1, 2);
    return sign_real(im);
}

std::string StabilitySpec::describe(const std::vector<int>& a) const {
    if (kind == StabilityKind::Slope) return "mu = " + slope_mu(lattice, to_kclass(a)).str();
    return "Z = " + zdag(lattice, a).str();
}

StabilitySpec default_spec(const WeightedType& t) {
    check_quiver_type(t);
    CaseLattice L = build_lattice(t);
    const Rational th = L.theta;
    return StabilitySpec{std::move(L), t.epsilon == -1 ? StabilityKind::Phase : StabilityKind::Slope, th};
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::SemistableOnly: return "semistable";
        default: return "unstable";
    }
}

StabilityResult is_stable(const QuiverWithRelations& Q, const FpRep& r, const StabilitySpec& spec,
                          const SubrepLimits& lim) {
    if (is_zero_class(r.dims)) throw std::invalid_argument("is_stable: zero representation");
    StabilityResult res{Verdict::Stable, std::nullopt, 0};
    for (const auto& [s, count] : all_subreps(Q, r, lim)) {
        res.subreps_checked += count;
        if (is_zero_class(s) || s == r.dims) continue;
        const int c = spec.compare(s, class_sub(r.dims, s));
        if (c > 0) {
            res.verdict = Verdict::Unstable;
            res.witness = s;
            return res;
        }
        if (c == 0 && res.verdict == Verdict::Stable) {
            res.verdict = Verdict::SemistableOnly;
            res.witness = s;
        }
    }
    return res;
}

HNResult hn_filtration(const QuiverWithRelations& Q, const FpRep& r, const StabilitySpec& spec,
                       const SubrepLimits& lim) {
    HNResult res;
    FpRep cur = r;
    while (!is_zero_class(cur.dims)) {
        auto subs = all_subreps(Q, cur, lim);
        std::optional<std::vector<int>> best;
        for (const auto& [s, count] : subs) {
            if (is_zero_class(s)) continue;
            // map order keeps the lexicographically smaller vector on ties
            if (!best) {
                best = s;
                continue;
            }
            const int c = spec.compare(s, *best);
            if (c > 0 || (c == 0 && total(s) > total(*best))) best = s;
        }
        if (subs.at(*best) > 1) res.tie = true;
        for (const auto& [s, count] : subs)
            if (!is_zero_class(s) && s != *best && total(s) == total(*best) && spec.compare(s, *best) == 0) res.tie = true;
        if (*best == cur.dims) {
            res.factors.push_back({cur.dims, cur});
            break;
        }
        Subrep S = subreps_with_dims(Q, cur, *best, lim).front();
        res.factors.push_back({S.dims, restrict_to(Q, cur, S)});
        cur = quotient_by(Q, cur, S);
    }
    return res;
}

bool weak_seesaw(const QuiverWithRelations& Q, const FpRep& r, const StabilitySpec& spec, const SubrepLimits& lim) {
    for (const auto& [s, count] : all_subreps(Q, r, lim)) {
        if (is_zero_class(s) || s == r.dims) continue;
        const auto q = class_sub(r.dims, s);
        const int c1 = spec.compare(s, r.dims), c2 = spec.compare(r.dims, q);
        if (!((c1 <= 0 && c2 <= 0) || (c1 >= 0 && c2 >= 0))) return false;
    }
    return true;
}

ExtConsistency ext_quiver_consistency(const WeightedType& t) {
    ExtConsistency out;
    QuiverWithRelations Q = heart_quiver(t);
    const WSplit& s = Q.model;
    const int c0 = t.epsilon == -2 ? 1 : 0;
    auto count_arrows = [&](int a, int b) {
        return static_cast<int>(std::count_if(Q.arrows.begin(), Q.arrows.end(),
                                              [&](const QuiverArrow& x) { return x.source == a && x.target == b; }));
    };
    auto count_rel = [&](int a, int b) {
        return static_cast<int>(std::count_if(Q.relations.begin(), Q.relations.end(), [&](const QuiverRelation& r) {
            return Q.arrows[static_cast<size_t>(r.terms[0].first)].source == a &&
                   Q.arrows[static_cast<size_t>(r.terms[0].second)].target == b;
        }));
    };
    out.arrows_ok = true;
    out.relations_ok = true;
    for (size_t j = 0; j < Q.points.size(); ++j) {
        const int v = c0 + 1 + static_cast<int>(j);
        const auto& p = Q.points[j];
        if (count_arrows(c0, v) != ext_cm(t, 0, p, 1, s)) out.arrows_ok = false;
        if (ext_cm(t, 0, p, 2, s) != 0) out.relations_ok = false;
        if (t.epsilon == -2 && count_rel(0, v) != ext_cm(t, 1, p, 2, s)) out.relations_ok = false;
    }
    if (t.epsilon == -2) {
        if (count_arrows(0, 1) != ext_cc(t, 1, 1, s)) out.arrows_ok = false;
        if (ext_cc(t, 1, 2, s) != 0 || count_rel(0, 1) != 0) out.relations_ok = false;
    }
    out.coefficients_ok = true;
    for (const auto& y : yoneda_relations(t, Q.points, s))
        if (!y.proportional_to_displayed) out.coefficients_ok = false;
    if (t.epsilon == -2) {
        // the point relations must be p2 pi X1 - p1 pi X2 up to a scalar
        for (const auto& rel : Q.relations) {
            const auto& pt = Q.points[static_cast<size_t>(Q.arrows[static_cast<size_t>(rel.terms[0].second)].target - 2)];
            CycloNum c1(0), c2(0);
            for (const auto& term : rel.terms)
                (Q.arrows[static_cast<size_t>(term.first)].label == "X1" ? c1 : c2) += term.coeff;
            if (c1 * pt[0] + c2 * pt[1] != CycloNum(0) || (c1.is_zero() && c2.is_zero())) out.coefficients_ok = false;
        }
    }
    QuiverShape shape = quiver_shape(build_lattice(t));
    out.shape_ok = shape.vertices == Q.vertices;
    for (int a = 0; a < Q.num_vertices(); ++a)
        for (int b = 0; b < Q.num_vertices(); ++b)
            if (shape.arrows(a, b) != count_arrows(a, b) || shape.relations(a, b) != count_rel(a, b)) out.shape_ok = false;
    return out;
}

}  // namespace gepner
