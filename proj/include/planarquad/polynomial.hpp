#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

namespace planarquad {

/// Real polynomial in the Laplace variable s, coefficients in ascending degree.
/// The highest stored coefficient is always nonzero; the zero polynomial has
/// no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> ascending);
    explicit Polynomial(std::vector<double> ascending);

    /// c * s^degree
    static Polynomial monomial(double c, int degree);

    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of s^k; zero past the degree.
    double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
    double leading() const;

    /// Multiplicity of the root at s = 0, i.e. the index of the lowest nonzero
    /// coefficient. Zero polynomial: -1.
    int origin_multiplicity() const;

    /// True when the polynomial is c * s^k for some c != 0.
    bool is_monomial() const;

    double operator()(double s) const;
    std::complex<double> operator()(std::complex<double> s) const;

    /// Divide by s^k. The k lowest coefficients must be zero.
    Polynomial divided_by_s_power(int k) const;

    /// Zero every coefficient with |c| <= rel_tol * max|c|.
    Polynomial chopped(double rel_tol) const;

    /// All roots, origin roots first. Degree <= 2 residuals use closed forms,
    /// higher ones the companion-matrix eigenvalues.
    std::vector<std::complex<double>> roots() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double k, const Polynomial& p);
    friend Polynomial operator/(const Polynomial& p, double k);
    Polynomial operator-() const;

    bool operator==(const Polynomial&) const = default;

private:
    void trim();

    std::vector<double> coeffs_;
};

/// "[c0, c1, ...]" with 17 significant digits.
std::string format_coefficients(const Polynomial& p);

/// Human form such as "s^2 + 3 s - 1".
std::string format_polynomial(const Polynomial& p);

/// num(s) / den(s), normalized: den monic, common powers of s cancelled.
/// The zero function is stored as 0 / 1.
class RationalTF {
public:
    /// Identity gain 1/1.
    RationalTF();

    /// Normalizes on construction; throws InvalidRationalError on a zero denominator.
    RationalTF(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    std::complex<double> operator()(std::complex<double> s) const;

    bool operator==(const RationalTF&) const = default;

private:
    Polynomial num_;
    Polynomial den_;
};

/// Returns num/den normalized. Applying it twice yields identical coefficients.
RationalTF normalize(const Polynomial& num, const Polynomial& den);

} // namespace planarquad
