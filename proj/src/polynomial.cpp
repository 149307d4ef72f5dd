#include "planarquad/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "planarquad/errors.hpp"

namespace planarquad {

Polynomial::Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending)
{
    trim();
}

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending))
{
    trim();
}

Polynomial Polynomial::monomial(double c, int degree)
{
    if (degree < 0) throw ConfigError("monomial degree must be non-negative");
    std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::leading() const
{
    return coeffs_.empty() ? 0.0 : coeffs_.back();
}

int Polynomial::origin_multiplicity() const
{
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] != 0.0) return static_cast<int>(k);
    }
    return -1;
}

bool Polynomial::is_monomial() const
{
    return !is_zero() && origin_multiplicity() == degree();
}

double Polynomial::operator()(double s) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const
{
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Polynomial Polynomial::divided_by_s_power(int k) const
{
    if (k <= 0 || is_zero()) return *this;
    for (int i = 0; i < k; ++i) {
        if ((*this)[static_cast<std::size_t>(i)] != 0.0) {
            throw ConfigError("polynomial is not divisible by s^" + std::to_string(k));
        }
    }
    return Polynomial(std::vector<double>(coeffs_.begin() + k, coeffs_.end()));
}

Polynomial Polynomial::chopped(double rel_tol) const
{
    double scale = 0.0;
    for (double c : coeffs_) scale = std::max(scale, std::abs(c));
    std::vector<double> v = coeffs_;
    for (double& c : v) {
        if (std::abs(c) <= rel_tol * scale) c = 0.0;
    }
    return Polynomial(std::move(v));
}

std::vector<std::complex<double>> Polynomial::roots() const
{
    if (is_zero()) throw ConfigError("roots of the zero polynomial are undefined");
    const int origin = origin_multiplicity();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(origin), 0.0);
    const Polynomial rest = divided_by_s_power(origin);
    const int n = rest.degree();
    if (n == 1) {
        out.emplace_back(-rest[0] / rest[1]);
    } else if (n == 2) {
        const std::complex<double> a = rest[2], b = rest[1], c = rest[0];
        const std::complex<double> disc = std::sqrt(b * b - 4.0 * a * c);
        // Avoid cancellation between -b and the discriminant.
        const std::complex<double> q =
            -0.5 * (b + (std::real(b) >= 0.0 ? disc : -disc));
        out.push_back(q / a);
        out.push_back(c / q);
    } else if (n > 2) {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i) companion(i, n - 1) = -rest[static_cast<std::size_t>(i)] / rest.leading();
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
        for (int i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
    }
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    std::vector<double> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b)
{
    return a + (-b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
}

Polynomial operator*(double k, const Polynomial& p)
{
    std::vector<double> v = p.coeffs_;
    for (double& c : v) c *= k;
    return Polynomial(std::move(v));
}

Polynomial operator/(const Polynomial& p, double k)
{
    std::vector<double> v = p.coeffs_;
    for (double& c : v) c /= k;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const
{
    return -1.0 * *this;
}

std::string format_coefficients(const Polynomial& p)
{
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << '[';
    if (p.is_zero()) os << 0;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (k) os << ", ";
        os << p.coeffs()[k];
    }
    os << ']';
    return os.str();
}

std::string format_polynomial(const Polynomial& p)
{
    if (p.is_zero()) return "0";
    std::ostringstream os;
    os << std::setprecision(6);
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const double c = p[static_cast<std::size_t>(k)];
        if (c == 0.0) continue;
        const double mag = std::abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = (mag == 1.0 && k > 0);
        if (!unit) os << mag;
        if (k > 0) {
            if (!unit) os << ' ';
            os << 's';
            if (k > 1) os << '^' << k;
        }
    }
    return os.str();
}

RationalTF::RationalTF() : num_{1.0}, den_{1.0} {}

RationalTF::RationalTF(Polynomial num, Polynomial den)
{
    if (den.is_zero()) throw InvalidRationalError("transfer function denominator is identically zero");
    if (num.is_zero()) {
        num_ = Polynomial{};
        den_ = Polynomial{1.0};
        return;
    }
    const int common = std::min(num.origin_multiplicity(), den.origin_multiplicity());
    num = num.divided_by_s_power(common);
    den = den.divided_by_s_power(common);
    const double lead = den.leading();
    num_ = num / lead;
    den_ = den / lead;
}

std::complex<double> RationalTF::operator()(std::complex<double> s) const
{
    return num_(s) / den_(s);
}

RationalTF normalize(const Polynomial& num, const Polynomial& den)
{
    return RationalTF(num, den);
}

} // namespace planarquad
