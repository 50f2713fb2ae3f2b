#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <ostream>
#include "json.hpp"
#include <stdexcept>
#include <string>
#include <vector>

namespace gepner {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
Rational floor_div(const Rational& q);  // floor(q) as a Rational
Rational mod2(const Rational& q);       // representative in [0, 2)

struct ZeroValue : std::domain_error {
    ZeroValue() : std::domain_error("ZeroValue: phase of zero") {}
};

// Integer polynomial Phi_d, lowest degree first.
const std::vector<Integer>& cyclotomic_poly(int d);
int euler_phi(int d);

// Element of Q(zeta_d) in the power basis modulo Phi_d.
class CycloNum {
public:
    CycloNum();
    CycloNum(int v);  // NOLINT: integer literals act as scalars
    CycloNum(const Rational& q);  // NOLINT
    CycloNum(int d, std::vector<Rational> coeffs);  // reduces modulo Phi_d

    int d() const { return d_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // throws unless is_rational()

    CycloNum promote(int L) const;  // d must divide L
    CycloNum conj() const;
    CycloNum re() const { return (*this + conj()) * Rational(1, 2); }
    CycloNum inverse() const;
    CycloNum pow(long long k) const;
    Rational height() const;  // sum of |coeffs|

    friend CycloNum operator+(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }
    CycloNum operator-() const;
    CycloNum& operator+=(const CycloNum& b) { return *this = *this + b; }
    CycloNum& operator-=(const CycloNum& b) { return *this = *this - b; }
    CycloNum& operator*=(const CycloNum& b) { return *this = *this * b; }
    CycloNum& operator/=(const CycloNum& b) { return *this = *this / b; }
    friend bool operator==(const CycloNum& a, const CycloNum& b);
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

    std::string str() const;  // e.g. "1 - 2*z + 1/2*z^3 (d=8)"

private:
    int d_;
    std::vector<Rational> c_;
    void reduce(std::vector<Rational> raw);
};

inline std::ostream& operator<<(std::ostream& os, const CycloNum& x) { return os << x.str(); }

CycloNum cyclo(int d, long long k);  // zeta_d^k
CycloNum sqrt_neg(const Rational& q);  // sqrt(-q) for q > 0, inside a cyclotomic field

void to_json(nlohmann::json& j, const CycloNum& x);
void from_json(const nlohmann::json& j, CycloNum& x);

struct ComplexInterval {
    long double re;
    long double im;
    long double radius;  // both coordinates lie within radius of the midpoint
    std::complex<double> mid() const { return {static_cast<double>(re), static_cast<double>(im)}; }
    bool contains(std::complex<long double> z) const;
};

ComplexInterval embed(const CycloNum& x, int precision = 53);

// Exact sign of a real element (x == conj(x)); throws if x is not real.
int sign_real(const CycloNum& x);

using RationalPhase = Rational;

struct Phase {
    bool exact = false;
    RationalPhase value;  // valid when exact
    double approx = 0.0;  // always set; certified error < 1e-9 when !exact
    double as_double() const { return approx; }
};

// phi in (window_start, window_start + 2] with x in R_{>0} e^{i pi phi}.
Phase phase_of(const CycloNum& x, const RationalPhase& window_start);

}  // namespace gepner
