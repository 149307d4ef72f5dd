#include "planarquad/linear_model.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "planarquad/errors.hpp"

namespace planarquad {

namespace {

constexpr double kChopTolerance = 1e-12;

std::string dims(const Eigen::MatrixXd& m)
{
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

std::string format_number(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

} // namespace

void StateSpace::validate() const
{
    if (A.rows() == 0 || A.rows() != A.cols()) {
        throw DimensionError("A must be square and non-empty, got " + dims(A));
    }
    if (B.rows() != A.rows()) throw DimensionError("B has " + dims(B) + " but A is " + dims(A));
    if (C.cols() != A.cols()) throw DimensionError("C has " + dims(C) + " but A is " + dims(A));
    if (D.rows() != C.rows() || D.cols() != B.cols()) {
        throw DimensionError("D has " + dims(D) + ", expected " + std::to_string(C.rows()) + "x" +
                             std::to_string(B.cols()));
    }
}

StateSpace linearize(const QuadParams& params)
{
    params.validate();
    StateSpace ss{
        Eigen::MatrixXd::Zero(6, 6),
        Eigen::MatrixXd::Zero(6, 3),
        Eigen::MatrixXd::Zero(2, 6),
        Eigen::MatrixXd::Zero(2, 3),
    };
    ss.A(0, 3) = 1.0;
    ss.A(1, 4) = 1.0;
    ss.A(2, 5) = 1.0;
    // d(-u1 sin(phi)/m)/dphi at hover, where u1 = m g.
    ss.A(3, 2) = -params.g;
    ss.B(4, 0) = 1.0 / params.m;
    ss.B(4, 2) = -1.0;
    ss.B(5, 1) = 1.0 / params.J;
    ss.C(0, 0) = 1.0;
    ss.C(1, 1) = 1.0;
    return ss;
}

StateDeriv deriv_linear(const State& delta_state, const Eigen::Vector3d& delta_input, const StateSpace& ss)
{
    if (ss.A.rows() != 6 || ss.A.cols() != 6 || ss.B.rows() != 6 || ss.B.cols() != 3) {
        throw DimensionError("deriv_linear expects A 6x6 and B 6x3, got A " + dims(ss.A) + ", B " + dims(ss.B));
    }
    const Vec6 d = ss.A * delta_state.to_vector() + ss.B * delta_input;
    return StateDeriv::from_vector(d);
}

namespace {

// Faddeev-LeVerrier: det(sI - A) = sum_k c_k s^k and
// adj(sI - A) = sum_{k=0}^{n-1} s^{n-1-k} N_k with N_0 = I.
struct Leverrier {
    std::vector<double> char_coeffs;        // ascending, c_n = 1
    std::vector<Eigen::MatrixXd> adjugate;  // N_0 .. N_{n-1}
};

Leverrier faddeev_leverrier(const Eigen::MatrixXd& A)
{
    const Eigen::Index n = A.rows();
    Leverrier out;
    out.char_coeffs.assign(static_cast<std::size_t>(n) + 1, 0.0);
    out.char_coeffs[static_cast<std::size_t>(n)] = 1.0;

    Eigen::MatrixXd N = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        out.adjugate.push_back(N);
        const Eigen::MatrixXd AN = A * N;
        const double c = -AN.trace() / static_cast<double>(k);
        out.char_coeffs[static_cast<std::size_t>(n - k)] = c;
        N = AN + c * Eigen::MatrixXd::Identity(n, n);
    }
    return out;
}

} // namespace

Polynomial characteristic_polynomial(const Eigen::MatrixXd& A)
{
    if (A.rows() == 0 || A.rows() != A.cols()) throw DimensionError("A must be square, got " + dims(A));
    return Polynomial(faddeev_leverrier(A).char_coeffs).chopped(kChopTolerance);
}

TfMatrix::TfMatrix(Eigen::Index rows, Eigen::Index cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols))
{
}

const RationalTF& TfMatrix::operator()(Eigen::Index r, Eigen::Index c) const
{
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DimensionError("TfMatrix index out of range");
    return entries_[static_cast<std::size_t>(r * cols_ + c)];
}

RationalTF& TfMatrix::operator()(Eigen::Index r, Eigen::Index c)
{
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DimensionError("TfMatrix index out of range");
    return entries_[static_cast<std::size_t>(r * cols_ + c)];
}

TfMatrix tf_from_ss(const StateSpace& ss)
{
    ss.validate();
    const Eigen::Index n = ss.states();
    const Leverrier fl = faddeev_leverrier(ss.A);
    const Polynomial char_poly = Polynomial(fl.char_coeffs).chopped(kChopTolerance);

    // Numerator coefficient of s^{n-1-k} in entry (i, j) is (C N_k B)(i, j).
    std::vector<Eigen::MatrixXd> cnb;
    cnb.reserve(fl.adjugate.size());
    for (const auto& Nk : fl.adjugate) cnb.push_back(ss.C * Nk * ss.B);

    TfMatrix h(ss.outputs(), ss.inputs());
    for (Eigen::Index i = 0; i < ss.outputs(); ++i) {
        for (Eigen::Index j = 0; j < ss.inputs(); ++j) {
            std::vector<double> num(static_cast<std::size_t>(n), 0.0);
            for (Eigen::Index k = 0; k < n; ++k) num[static_cast<std::size_t>(n - 1 - k)] = cnb[static_cast<std::size_t>(k)](i, j);
            Polynomial numerator = Polynomial(std::move(num)).chopped(kChopTolerance);
            if (ss.D(i, j) != 0.0) numerator = numerator + ss.D(i, j) * char_poly;
            h(i, j) = RationalTF(numerator, char_poly);
        }
    }
    return h;
}

PoleReport pole_report(const RationalTF& tf)
{
    if (tf.den().is_zero()) throw InvalidRationalError("transfer function denominator is identically zero");
    const RationalTF normalized(tf.num(), tf.den());
    PoleReport report;
    if (normalized.is_zero()) return report;

    report.origin_multiplicity = normalized.den().origin_multiplicity();
    const Polynomial rest = normalized.den().divided_by_s_power(report.origin_multiplicity);
    if (rest.degree() > 0) report.other_poles = rest.roots();
    if (normalized.num().degree() > 0) report.zeros = normalized.num().roots();
    return report;
}

std::vector<double> analytic_step_response(const RationalTF& tf, std::span<const double> t)
{
    std::vector<double> out(t.size(), 0.0);
    if (tf.is_zero()) return out;
    if (!tf.den().is_monomial()) {
        throw UnsupportedFormError("analytic step response needs all poles at the origin, got den " +
                                   format_polynomial(tf.den()));
    }
    if (tf.num().degree() != 0) {
        throw UnsupportedFormError("analytic step response needs a constant numerator, got " +
                                   format_polynomial(tf.num()));
    }
    // Step input adds one more integrator: K / s^(k+1) -> K t^k / k!.
    const int k = tf.den().degree();
    const double gain = tf.num()[0] / tf.den().leading();
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = gain * std::pow(t[i], k) / factorial;
    return out;
}

std::string format_pretty(const RationalTF& tf)
{
    if (tf.is_zero()) return "0";
    const Polynomial& num = tf.num();
    const Polynomial& den = tf.den();
    if (den.degree() == 0) return format_polynomial(num);

    auto wrap = [](const Polynomial& p) {
        const std::string s = format_polynomial(p);
        const bool single_term = p.is_monomial();
        return single_term ? s : "(" + s + ")";
    };
    return wrap(num) + " / " + wrap(den);
}

std::string format_ascending(const RationalTF& tf)
{
    return format_coefficients(tf.num()) + " / " + format_coefficients(tf.den());
}

std::string format_tf_matrix(const TfMatrix& h)
{
    std::ostringstream os;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
            const std::string out_name = i < static_cast<Eigen::Index>(kOutputNames.size())
                                             ? kOutputNames[static_cast<std::size_t>(i)]
                                             : "y" + std::to_string(i);
            const std::string in_name = j < static_cast<Eigen::Index>(kInputNames.size())
                                            ? kInputNames[static_cast<std::size_t>(j)]
                                            : "u" + std::to_string(j);
            const std::string label = "H[" + out_name + "," + in_name + "] = " + format_pretty(h(i, j));
            os << std::left << std::setw(28) << label << "  num/den = " << format_ascending(h(i, j)) << '\n';
        }
    }
    return os.str();
}

namespace {

// Gain of an integrator-chain entry K / s^k.
double chain_gain(const RationalTF& tf)
{
    if (tf.is_zero()) return 0.0;
    if (!tf.den().is_monomial() || tf.num().degree() != 0) {
        throw UnsupportedFormError("symbolic form only covers K / s^k entries, got " + format_pretty(tf));
    }
    return tf.num()[0] / tf.den().leading();
}

int scaling_exponent(double base, double scaled, double factor)
{
    const double e = std::log(scaled / base) / std::log(factor);
    const double r = std::round(e);
    if (std::abs(e - r) > 1e-6) {
        throw UnsupportedFormError("gain is not a monomial in the physical parameters");
    }
    return static_cast<int>(r);
}

void append_factor(std::ostringstream& os, bool& first, const char* symbol, int exponent)
{
    if (exponent <= 0) return;
    if (!first) os << ' ';
    first = false;
    os << symbol;
    if (exponent > 1) os << '^' << exponent;
}

} // namespace

std::string SymbolicEntry::to_string() const
{
    if (zero) return "0";
    std::ostringstream num;
    const double mag = std::abs(coefficient);
    bool num_first = true;
    if (mag != 1.0) {
        num << format_number(mag);
        num_first = false;
    }
    append_factor(num, num_first, "m", exp_m);
    append_factor(num, num_first, "g", exp_g);
    append_factor(num, num_first, "J", exp_J);
    append_factor(num, num_first, "L", exp_L);
    if (num_first) num << '1';

    std::ostringstream den;
    bool den_first = true;
    append_factor(den, den_first, "m", -exp_m);
    append_factor(den, den_first, "g", -exp_g);
    append_factor(den, den_first, "J", -exp_J);
    append_factor(den, den_first, "L", -exp_L);
    const int den_factors = (exp_m < 0) + (exp_g < 0) + (exp_J < 0) + (exp_L < 0);
    append_factor(den, den_first, "s", s_power);

    std::string out = coefficient < 0 ? "-" : "";
    out += num.str();
    if (!den_first) {
        const bool parens = den_factors + (s_power > 0) > 1;
        out += " / " + (parens ? "(" + den.str() + ")" : den.str());
    }
    return out;
}

std::vector<std::vector<SymbolicEntry>> symbolic_tf(const QuadParams& params)
{
    params.validate();
    constexpr double kFactor = 2.0;
    const TfMatrix base = tf_from_ss(linearize(params));

    QuadParams pm = params, pg = params, pj = params, pl = params;
    pm.m *= kFactor;
    pg.g *= kFactor;
    pj.J *= kFactor;
    pl.L *= kFactor;
    const TfMatrix hm = tf_from_ss(linearize(pm));
    const TfMatrix hg = tf_from_ss(linearize(pg));
    const TfMatrix hj = tf_from_ss(linearize(pj));
    const TfMatrix hl = tf_from_ss(linearize(pl));

    std::vector<std::vector<SymbolicEntry>> out(static_cast<std::size_t>(base.rows()),
                                                std::vector<SymbolicEntry>(static_cast<std::size_t>(base.cols())));
    for (Eigen::Index i = 0; i < base.rows(); ++i) {
        for (Eigen::Index j = 0; j < base.cols(); ++j) {
            SymbolicEntry& e = out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const double k0 = chain_gain(base(i, j));
            if (k0 == 0.0) continue;
            e.zero = false;
            e.s_power = base(i, j).den().degree();
            e.exp_m = scaling_exponent(k0, chain_gain(hm(i, j)), kFactor);
            e.exp_g = scaling_exponent(k0, chain_gain(hg(i, j)), kFactor);
            e.exp_J = scaling_exponent(k0, chain_gain(hj(i, j)), kFactor);
            e.exp_L = scaling_exponent(k0, chain_gain(hl(i, j)), kFactor);
            double c = k0 / (std::pow(params.m, e.exp_m) * std::pow(params.g, e.exp_g) *
                             std::pow(params.J, e.exp_J) * std::pow(params.L, e.exp_L));
            const double rounded = std::round(c);
            if (std::abs(c - rounded) <= 1e-9 * std::max(1.0, std::abs(c))) c = rounded;
            e.coefficient = c;
        }
    }
    return out;
}

std::string format_symbolic_tf(const std::vector<std::vector<SymbolicEntry>>& h)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = 0; j < h[i].size(); ++j) {
            const std::string out_name = i < kOutputNames.size() ? kOutputNames[i] : "y" + std::to_string(i);
            const std::string in_name = j < kInputNames.size() ? kInputNames[j] : "u" + std::to_string(j);
            os << "H[" << out_name << "," << in_name << "] = " << h[i][j].to_string() << '\n';
        }
    }
    return os.str();
}

} // namespace planarquad
