#ifndef CRC_MIRROR_HPP
#define CRC_MIRROR_HPP

#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include <crc/cohomology.hpp>
#include <crc/laurent.hpp>
#include <crc/series.hpp>

namespace crc
{

// Orbifold class beta-hat(1..n-1). The derived entries beta(0), beta(n) are
// rational with denominator n; they are stored as numerators over n.
struct OrbifoldClass {
    int n = 0;
    MultiIndex beta;

    int beta0_num() const;  // n * beta(0) = -sum (n-k) beta(k)
    int betan_num() const;  // n * beta(n) = -sum k beta(k)
    Real beta0() const
    {
        return static_cast<Real>(beta0_num()) / n;
    }
    Real betan() const
    {
        return static_cast<Real>(betan_num()) / n;
    }
    // i(beta) = n frac(-beta(n)), in 0..n-1.
    int sector() const;
    int total() const
    {
        return total_degree(beta);
    }
    bool effective() const;
};

// All effective classes with total degree <= D, graded-lex order.
std::vector<OrbifoldClass> enumerate_effective(int n, int D);

// D_j(beta) for j = 0..n: D_0 = d_1, D_j = d_{j-1} - 2 d_j + d_{j+1}, D_n = d_{n-1}.
std::vector<int> curve_degrees(int n, std::span<const int> d);

// Which basis the rows of an IFunctionSeries are written in.
enum class IBasis { Delta, Gamma, FixedPoint };

// rows[r][c] is the coefficient of z^{1-r} on basis vector c, r = 0..Z+1.
// The e^{x0/z} (resp. e^{y0/z} y^{gamma/z}) prefactor is NOT included; rows()
// with the x0 prefactor are available from with_x0().
struct IFunctionSeries {
    Space side = Space::X;
    IBasis basis = IBasis::Delta;
    int n = 0;
    int degree = 0;
    int zorder = 0;
    LambdaPair lambda{};
    Complex x0{0};
    std::vector<std::vector<TruncatedSeries>> rows;

    int top_power() const
    {
        return 1;
    }
    int bottom_power() const
    {
        return -zorder;
    }
    const std::vector<TruncatedSeries> &row(int power) const;
    // Rows of e^{x0/z} * I (no logarithmic prefactor on the Y side).
    std::vector<std::vector<TruncatedSeries>> with_x0() const;
    // Coefficients of a single monomial on component c as a Laurent window.
    ZLaurent coefficient(std::span<const int> monomial, int component) const;
};

IFunctionSeries i_function_X(int n, int D, int Z, Complex x0, LambdaPair lambda);
// Y-side I-function with the y^{gamma/z} factor removed. basis is Gamma or FixedPoint.
IFunctionSeries i_function_Y(int n, int D, int Z, Complex y0, LambdaPair lambda, IBasis basis = IBasis::Gamma);
// Change of basis Gamma <-> FixedPoint for a Y-side I-function.
IFunctionSeries to_basis(const IFunctionSeries &I, IBasis basis);

// f_1..f_{n-1} from the Gamma-ratio closed form.
std::vector<TruncatedSeries> flat_coords_X(int n, int D);

// A multivalued function sum_k a_k log y_k + S(y).
struct LogSeries {
    std::vector<Complex> log_coeffs;
    TruncatedSeries analytic;

    Complex evaluate(std::span<const Complex> y, std::span<const Complex> log_y) const;
};

// g_k = log y_k + S_k(y), k = 1..n-1.
struct MirrorMapY {
    int n = 0;
    int degree = 0;
    std::vector<TruncatedSeries> S;

    LogSeries g(int k) const;
    // q_k = y_k exp(S_k(y)), the single-valued exponentiated flat coordinates.
    std::vector<TruncatedSeries> exp_flat() const;
};

MirrorMapY mirror_map_Y(int n, int D);

// x -> y on the torus (all x_i nonzero), and the principal-branch inverse.
std::vector<Complex> x_to_y(std::span<const Complex> x);
std::vector<Complex> y_to_x(std::span<const Complex> y);
// Exponent matrix C with y^a = x^{C a}: tridiagonal (1, -2, 1).
std::vector<std::vector<int>> xtoy_exponents(int n);

// GKZ operator prod_{D_j>0} prod_{m<D_j} (T_j - m) - y^d prod_{D_j<0} prod_{m<-D_j} (T_j - m).
struct GkzOperator {
    int n = 0;
    MultiIndex d;
    std::vector<int> D;

    int order() const;
    // T_j acting on y^a, a in y-exponents (possibly fractional).
    static Real theta_y(int n, int j, std::span<const Real> a);
    // T_j acting on x^b.
    static Real theta_x(int n, int j, std::span<const Real> b);
    Complex lhs_symbol(std::span<const Real> ell) const;
    Complex rhs_symbol(std::span<const Real> ell) const;
};

GkzOperator gkz_operator(int n, std::span<const int> d);
// The generators beta_1..beta_{n-1} (d = unit vectors).
std::vector<GkzOperator> gkz_generators(int n);

// Sparse residual keyed by exponent vector (x exponents, or n * y exponents for
// the Puiseux route).
struct GkzResidual {
    std::map<std::vector<int>, Complex> terms;
    Real max_abs = 0;
    Real input_scale = 0;

    Real relative() const
    {
        return input_scale > 0 ? max_abs / input_scale : max_abs;
    }
};

// Operator in y applied to a series in y with log terms. Valid through the cap.
GkzResidual gkz_residual(const LogSeries &g, const GkzOperator &op);
// n = 2 flat coordinate solved term by term from the generator in x, c_1 = 1.
// Independent of the Gamma-ratio closed form.
TruncatedSeries gkz_term_by_term_n2(int D);

// Operator in x (T_j = theta_j for 1 <= j < n) applied to a series in x.
GkzResidual gkz_residual_x(const TruncatedSeries &f, const GkzOperator &op);
// Same, with f pulled back to fractional y-exponents a = C^{-1} b and the
// operator applied in y. Keys are n * a.
GkzResidual gkz_residual_pulled_to_y(const TruncatedSeries &f, const GkzOperator &op);

struct PfResidual {
    int checked_top = 0;
    int checked_bottom = 0;
    std::size_t entries = 0;
    Real max_abs = 0;
    Real scale = 0;
    // monomial -> component -> power coefficients from checked_top down
    std::map<std::vector<int>, std::vector<std::vector<Complex>>> terms;

    Real relative() const
    {
        return scale > 0 ? max_abs / scale : max_abs;
    }
};

// Equivariant operator for an orbifold class with integral beta(0), beta(n):
//   prod_{beta(j)>0} prod_{m<beta(j)} (lambda_j + (T_j - m) z) I
//     - x^beta prod_{beta(j)<0} prod_{m<-beta(j)} (lambda_j + (T_j - m) z) I
// with lambda_0 = l1, lambda_n = l2 and lambda_j = 0 otherwise.
PfResidual pf_residual_X(const IFunctionSeries &I, const OrbifoldClass &beta);
// z d/dx0 (e^{x0/z} I) - e^{x0/z} I, with the derivative taken term by term.
// Works on either side (x0 plays the role of y0 for Y).
PfResidual pf_residual_b(const IFunctionSeries &I);
// Y-side analogue with omega_j + (T_j - m) z in the fixed-point representation.
PfResidual pf_residual_Y(const IFunctionSeries &I, std::span<const int> d);

nlohmann::json to_json(const IFunctionSeries &I);
nlohmann::json to_json(const MirrorMapY &m);

} // namespace crc

#endif
