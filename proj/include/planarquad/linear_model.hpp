#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "planarquad/dynamics.hpp"
#include "planarquad/polynomial.hpp"

namespace planarquad {

/// Linear time-invariant model x' = A x + B u, y = C x + D u.
///
/// For the quadrotor the input vector is (u1, u2, g): gravity is carried as a
/// third channel so the hover offset appears in B rather than as a constant.
struct StateSpace {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::MatrixXd C;
    Eigen::MatrixXd D;

    Eigen::Index states() const { return A.rows(); }
    Eigen::Index inputs() const { return B.cols(); }
    Eigen::Index outputs() const { return C.rows(); }

    /// Throws DimensionError unless A is square and B, C, D agree with it.
    void validate() const;
};

/// Jacobian of the equations of motion at hover. Only nonzeros:
/// A(0,3)=A(1,4)=A(2,5)=1, A(3,2)=-g, B(4,0)=1/m, B(4,2)=-1, B(5,1)=1/J,
/// C selects (x, y), D = 0.
StateSpace linearize(const QuadParams& params);

/// A * delta_state + B * delta_input for the 6-state, 3-input quadrotor model.
StateDeriv deriv_linear(const State& delta_state, const Eigen::Vector3d& delta_input, const StateSpace& ss);

/// det(sI - A) by Faddeev-LeVerrier.
Polynomial characteristic_polynomial(const Eigen::MatrixXd& A);

/// Grid of transfer functions, rows = outputs, columns = inputs.
class TfMatrix {
public:
    TfMatrix(Eigen::Index rows, Eigen::Index cols);

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }

    const RationalTF& operator()(Eigen::Index r, Eigen::Index c) const;
    RationalTF& operator()(Eigen::Index r, Eigen::Index c);

private:
    Eigen::Index rows_;
    Eigen::Index cols_;
    std::vector<RationalTF> entries_;
};

/// H(s) = C (sI - A)^-1 B + D computed exactly with the adjugate expansion from
/// Faddeev-LeVerrier. Coefficients below 1e-12 of an entry's scale are treated
/// as round-off and zeroed before normalization.
TfMatrix tf_from_ss(const StateSpace& ss);

struct PoleReport {
    int origin_multiplicity = 0;                   ///< poles at s = 0
    std::vector<std::complex<double>> other_poles; ///< remaining denominator roots
    std::vector<std::complex<double>> zeros;       ///< all numerator roots
};

/// Poles and zeros of a transfer function. The origin multiplicity comes from
/// the lowest nonzero denominator power, not from a root finder.
PoleReport pole_report(const RationalTF& tf);

/// Unit-step response of an integrator chain K / s^k: K t^k / k!.
/// Throws UnsupportedFormError for any other form (non-constant numerator,
/// poles away from the origin).
std::vector<double> analytic_step_response(const RationalTF& tf, std::span<const double> t);

/// "-39200 / s^4", "5.55556 / s^2", "0", "(s + 1) / (s^2 + 2 s + 1)".
std::string format_pretty(const RationalTF& tf);

/// "[-39200] / [0, 0, 0, 0, 1]" with full precision ascending coefficients.
std::string format_ascending(const RationalTF& tf);

inline const std::vector<std::string> kOutputNames = {"x", "y"};
inline const std::vector<std::string> kInputNames = {"u1", "u2", "g"};

/// One line per entry: "H[x,u2] = -39200 / s^4    num=[-39200] den=[0, 0, 0, 0, 1]".
std::string format_tf_matrix(const TfMatrix& h);

/// Entry K(m, g, J, L) / s^k with the gain identified as a signed monomial
/// c * m^a * g^b * J^d * L^e.
struct SymbolicEntry {
    bool zero = true;
    double coefficient = 0.0;
    int exp_m = 0;
    int exp_g = 0;
    int exp_J = 0;
    int exp_L = 0;
    int s_power = 0;

    /// "-g / (J s^4)", "1 / (m s^2)", "-1 / s^2", "0".
    std::string to_string() const;
};

/// Symbolic form of tf_from_ss(linearize(params)). The exponents are recovered
/// by rescaling each parameter and observing how every gain scales.
std::vector<std::vector<SymbolicEntry>> symbolic_tf(const QuadParams& params = {});

std::string format_symbolic_tf(const std::vector<std::vector<SymbolicEntry>>& h);

} // namespace planarquad
