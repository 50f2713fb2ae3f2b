#include "gepner/exactmath.hpp"

#include <mpfr.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "gepner/linalg.hpp"

namespace gepner {

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + raw);
    return Rational(Integer(s.substr(0, slash)), den);
}

std::string to_string(const Rational& q) { return q.str(); }

Rational floor_div(const Rational& q) {
    Integer n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    Integer f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return Rational(f);
}

Rational mod2(const Rational& q) { return q - 2 * floor_div(q / 2); }

int euler_phi(int d) {
    int r = d, n = d;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

const std::vector<Integer>& cyclotomic_poly(int d) {
    static std::mutex mu;
    static std::map<int, std::vector<Integer>> cache;
    if (d < 1) throw std::invalid_argument("cyclotomic order must be positive");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(d);
        if (it != cache.end()) return it->second;
    }
    std::vector<Integer> num(d + 1, Integer(0));
    num[0] = -1;
    num[d] = 1;
    for (int e = 1; e < d; ++e) {
        if (d % e) continue;
        const auto& den = cyclotomic_poly(e);
        // exact division by a monic polynomial
        int dn = static_cast<int>(den.size()) - 1;
        int nn = static_cast<int>(num.size()) - 1;
        std::vector<Integer> quo(nn - dn + 1, Integer(0));
        for (int k = nn; k >= dn; --k) {
            Integer c = num[k];
            quo[k - dn] = c;
            if (c == 0) continue;
            for (int i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
        }
        num = quo;
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(d, std::move(num)).first->second;
}

CycloNum::CycloNum() : d_(1), c_(1, Rational(0)) {}
CycloNum::CycloNum(int v) : d_(1), c_(1, Rational(v)) {}
CycloNum::CycloNum(const Rational& q) : d_(1), c_(1, q) {}
CycloNum::CycloNum(int d, std::vector<Rational> coeffs) : d_(d) {
    if (d < 1) throw std::invalid_argument("CycloNum: d must be positive");
    reduce(std::move(coeffs));
}

void CycloNum::reduce(std::vector<Rational> raw) {
    // fold modulo x^d - 1 first, then reduce modulo Phi_d
    std::vector<Rational> folded(d_, Rational(0));
    for (size_t k = 0; k < raw.size(); ++k) folded[k % d_] += raw[k];
    const auto& phi = cyclotomic_poly(d_);
    const int deg = static_cast<int>(phi.size()) - 1;
    for (int k = d_ - 1; k >= deg; --k) {
        Rational c = folded[k];
        if (c == 0) continue;
        for (int i = 0; i <= deg; ++i) folded[k - deg + i] -= c * Rational(phi[i]);
    }
    folded.resize(deg);
    c_ = std::move(folded);
}

bool CycloNum::is_zero() const {
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (size_t k = 1; k < c_.size(); ++k)
        if (c_[k] != 0) return false;
    return true;
}

Rational CycloNum::rational_value() const {
    if (!is_rational()) throw std::domain_error("CycloNum is not rational: " + str());
    return c_[0];
}

CycloNum CycloNum::promote(int L) const {
    if (L % d_) throw std::invalid_argument("promote: d does not divide target order");
    if (L == d_) return *this;
    std::vector<Rational> raw(static_cast<size_t>(L), Rational(0));
    const int step = L / d_;
    for (size_t k = 0; k < c_.size(); ++k) raw[k * step] = c_[k];
    return CycloNum(L, std::move(raw));
}

CycloNum CycloNum::conj() const {
    std::vector<Rational> raw(static_cast<size_t>(d_), Rational(0));
    for (size_t k = 0; k < c_.size(); ++k) raw[(d_ - static_cast<int>(k)) % d_] += c_[k];
    return CycloNum(d_, std::move(raw));
}

CycloNum CycloNum::operator-() const {
    CycloNum r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

static int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

CycloNum operator+(const CycloNum& a, const CycloNum& b) {
    if (a.d_ != b.d_) {
        int L = lcm_int(a.d_, b.d_);
        return a.promote(L) + b.promote(L);
    }
    CycloNum r = a;
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
    return r;
}

CycloNum operator-(const CycloNum& a, const CycloNum& b) { return a + (-b); }

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    if (a.d_ != b.d_) {
        int L = lcm_int(a.d_, b.d_);
        return a.promote(L) * b.promote(L);
    }
    std::vector<Rational> raw(a.c_.size() + b.c_.size(), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
    }
    return CycloNum(a.d_, std::move(raw));
}

bool operator==(const CycloNum& a, const CycloNum& b) {
    if (a.d_ != b.d_) {
        int L = lcm_int(a.d_, b.d_);
        return a.promote(L).c_ == b.promote(L).c_;
    }
    return a.c_ == b.c_;
}

CycloNum CycloNum::inverse() const {
    if (is_zero()) throw std::domain_error("CycloNum: division by zero");
    if (is_rational()) return CycloNum(Rational(1) / c_[0]);
    const int n = static_cast<int>(c_.size());
    QMat mult(n, n);
    for (int j = 0; j < n; ++j) {
        CycloNum col = *this * cyclo(d_, j);
        for (int i = 0; i < n; ++i) mult(i, j) = col.c_[i];
    }
    QVec e = QVec::Constant(n, Rational(0));
    e(0) = 1;
    auto x = gepner::solve(mult, e);
    std::vector<Rational> coeffs(x->data(), x->data() + n);
    return CycloNum(d_, std::move(coeffs));
}

CycloNum CycloNum::pow(long long k) const {
    if (k < 0) return inverse().pow(-k);
    CycloNum r(1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

Rational CycloNum::height() const {
    Rational h = 0;
    for (const auto& q : c_) h += boost::multiprecision::abs(q);
    return h;
}

std::string CycloNum::str() const {
    std::string out;
    for (size_t k = 0; k < c_.size(); ++k) {
        const Rational& q = c_[k];
        if (q == 0) continue;
        Rational a = boost::multiprecision::abs(q);
        if (out.empty())
            out += q < 0 ? "-" : "";
        else
            out += q < 0 ? " - " : " + ";
        std::string mono = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
        if (mono.empty())
            out += a.str();
        else if (a == 1)
            out += mono;
        else
            out += a.str() + "*" + mono;
    }
    if (out.empty()) out = "0";
    if (d_ > 2 && !is_rational()) out += " (z=e^{2pi i/" + std::to_string(d_) + "})";
    return out;
}

CycloNum cyclo(int d, long long k) {
    if (d < 1) throw std::invalid_argument("cyclo: d must be positive");
    long long e = ((k % d) + d) % d;
    std::vector<Rational> raw(static_cast<size_t>(d), Rational(0));
    raw[static_cast<size_t>(e)] = 1;
    return CycloNum(d, std::move(raw));
}

namespace {

long long powmod(long long b, long long e, long long m) {
    long long r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<long long>((__int128)r * b % m);
        b = static_cast<long long>((__int128)b * b % m);
        e >>= 1;
    }
    return r;
}

// sqrt(p) for a prime p
CycloNum sqrt_prime(long long p) {
    if (p == 2) return cyclo(8, 1) + cyclo(8, -1);
    CycloNum g(0);
    for (long long a = 1; a < p; ++a) {
        long long leg = powmod(a, (p - 1) / 2, p);
        g += (leg == 1 ? CycloNum(1) : CycloNum(-1)) * cyclo(static_cast<int>(p), a);
    }
    if (p % 4 == 1) return g;
    return -(g * cyclo(4, 1));  // g = i sqrt(p)
}

}  // namespace

CycloNum sqrt_neg(const Rational& q) {
    if (q <= 0) throw std::domain_error("sqrt_neg expects a positive rational");
    Integer a = boost::multiprecision::numerator(q), b = boost::multiprecision::denominator(q);
    long long n = static_cast<long long>(a * b);
    long long sq = 1, rest = 1;
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) sq *= p;
        if (e % 2) rest *= p;
    }
    rest *= n;
    CycloNum r = cyclo(4, 1);
    long long t = rest;
    for (long long p = 2; t > 1; ++p)
        if (t % p == 0) {
            t /= p;
            r *= sqrt_prime(p);
        }
    return r * CycloNum(Rational(Integer(sq)) / Rational(b));
}

void to_json(nlohmann::json& j, const CycloNum& x) {
    std::vector<std::string> cs;
    for (const auto& q : x.coeffs()) cs.push_back(q.str());
    j = nlohmann::json{{"d", x.d()}, {"coeffs", cs}};
}

void from_json(const nlohmann::json& j, CycloNum& x) {
    std::vector<Rational> cs;
    for (const auto& s : j.at("coeffs")) cs.push_back(parse_rational(s.get<std::string>()));
    x = CycloNum(j.at("d").get<int>(), std::move(cs));
}

// ---------------------------------------------------------------- numerics

namespace {

struct Mp {
    mpfr_t v;
    explicit Mp(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~Mp() { mpfr_clear(v); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
};

void set_rational(mpfr_t out, const Rational& q, mpfr_prec_t prec) {
    Mp num(prec), den(prec);
    mpfr_set_str(num.v, boost::multiprecision::numerator(q).str().c_str(), 10, MPFR_RNDN);
    mpfr_set_str(den.v, boost::multiprecision::denominator(q).str().c_str(), 10, MPFR_RNDN);
    mpfr_div(out, num.v, den.v, MPFR_RNDN);
}

// Evaluates x at zeta = e^{2 pi i/d}; returns an absolute error bound for each part.
double eval_parts(const CycloNum& x, mpfr_prec_t prec, mpfr_t re, mpfr_t im) {
    Mp pi(prec), ang(prec), c(prec), s(prec), coef(prec), tmp(prec);
    mpfr_const_pi(pi.v, MPFR_RNDN);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    const int d = x.d();
    const auto& cs = x.coeffs();
    for (size_t k = 0; k < cs.size(); ++k) {
        if (cs[k] == 0) continue;
        set_rational(coef.v, cs[k], prec);
        mpfr_mul_ui(ang.v, pi.v, 2 * static_cast<unsigned long>(k), MPFR_RNDN);
        mpfr_div_ui(ang.v, ang.v, static_cast<unsigned long>(d), MPFR_RNDN);
        mpfr_sin_cos(s.v, c.v, ang.v, MPFR_RNDN);
        mpfr_mul(tmp.v, coef.v, c.v, MPFR_RNDN);
        mpfr_add(re, re, tmp.v, MPFR_RNDN);
        mpfr_mul(tmp.v, coef.v, s.v, MPFR_RNDN);
        mpfr_add(im, im, tmp.v, MPFR_RNDN);
    }
    // each term carries relative error below 16 ulp (angle error <= 8 ulp * 2 pi)
    double h = x.height().convert_to<double>();
    double terms = static_cast<double>(cs.size());
    return h * (64.0 + 4.0 * terms) * std::ldexp(1.0, -static_cast<int>(prec));
}

}  // namespace

bool ComplexInterval::contains(std::complex<long double> z) const {
    return std::fabs(z.real() - re) <= radius && std::fabs(z.imag() - im) <= radius;
}

ComplexInterval embed(const CycloNum& x, int precision) {
    if (precision < 2) precision = 2;
    const mpfr_prec_t prec = precision + 48;
    Mp re(prec), im(prec);
    double err = eval_parts(x, prec, re.v, im.v);
    ComplexInterval out;
    out.re = mpfr_get_ld(re.v, MPFR_RNDN);
    out.im = mpfr_get_ld(im.v, MPFR_RNDN);
    long double conv = (std::fabs(out.re) + std::fabs(out.im)) * std::ldexp(1.0L, -62);
    long double h = x.height().convert_to<long double>();
    out.radius = h * std::ldexp(1.0L, -precision) + static_cast<long double>(err) + conv;
    if (x.is_zero()) out.radius = 0;
    return out;
}

int sign_real(const CycloNum& x) {
    if (x != x.conj()) throw std::domain_error("sign_real: value is not real: " + x.str());
    if (x.is_zero()) return 0;
    if (x.is_rational()) return x.rational_value() > 0 ? 1 : -1;
    for (mpfr_prec_t prec = 64; prec <= 16384; prec *= 2) {
        Mp re(prec), im(prec);
        double err = eval_parts(x, prec, re.v, im.v);
        Mp bound(prec);
        mpfr_set_d(bound.v, err, MPFR_RNDU);
        if (mpfr_cmpabs(re.v, bound.v) > 0) return mpfr_sgn(re.v);
    }
    throw std::runtime_error("sign_real: precision exhausted");
}

namespace {

Rational into_window(const Rational& q, const Rational& ws) {
    // m = 1 - ceil((q - ws)/2); result in (ws, ws+2]
    Rational t = (q - ws) / 2;
    Rational ceil_t = -floor_div(-t);
    return q + 2 * (1 - ceil_t);
}

}  // namespace

Phase phase_of(const CycloNum& x, const RationalPhase& window_start) {
    if (x.is_zero()) throw ZeroValue();
    Phase out;
    ComplexInterval approx = embed(x, 64);
    long double ang = std::atan2(approx.im, approx.re) / static_cast<long double>(M_PI);
    const int d = x.d();
    const long long den = 2LL * d;
    long long k0 = std::llround(ang * den);
    for (long long k = k0 - 1; k <= k0 + 1; ++k) {
        CycloNum y = x * cyclo(4 * d, -k);
        if (y == y.conj() && sign_real(y) > 0) {
            out.exact = true;
            out.value = into_window(Rational(k, den), window_start);
            out.approx = out.value.convert_to<double>();
            return out;
        }
    }
    // certified float fallback: refine until the angular error is below 1e-10 (in units of pi)
    for (int prec = 64; prec <= 4096; prec *= 2) {
        ComplexInterval ci = embed(x, prec);
        long double mag = std::hypot(ci.re, ci.im);
        long double slack = ci.radius * 1.5L;
        if (mag <= 2 * slack) continue;
        long double err = std::asin(std::min<long double>(1.0L, slack / (mag - slack))) / M_PI;
        if (err + 1e-15L >= 1e-10L) continue;
        long double a = std::atan2(ci.im, ci.re) / static_cast<long double>(M_PI);
        long double ws = window_start.convert_to<long double>();
        while (a <= ws) a += 2;
        while (a > ws + 2) a -= 2;
        out.exact = false;
        out.approx = static_cast<double>(a);
        return out;
    }
    throw std::runtime_error("phase_of: precision exhausted");
}

}  // namespace gepner
