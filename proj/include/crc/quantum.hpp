#ifndef CRC_QUANTUM_HPP
#define CRC_QUANTUM_HPP

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include <crc/cohomology.hpp>
#include <crc/linalg.hpp>
#include <crc/mirror.hpp>
#include <crc/series.hpp>

namespace crc
{

// Big quantum structure constants (e_i *)_j^k as series in u_1..u_{n-1} (X) or
// q_1..q_{n-1} = e^{t_1}..e^{t_{n-1}} (Y), at a numeric lambda.
struct StructureConstants {
    Space side = Space::X;
    int n = 0;
    int degree = 0;  // cap of the stored series
    int zorder = 0;  // I-function window the constants were read from
    LambdaPair lambda{};
    std::vector<std::vector<std::vector<TruncatedSeries>>> c;  // c[i][j][k]
    Real qde_residual = 0;  // rows below the leading one, relative

    const TruncatedSeries &at(int i, int j, int k) const
    {
        return c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
    // Matrix M(j, k) = c_ij^k at the origin of the series variables.
    CMatrix at_origin(int i) const;
    // Same, summed at a point.
    CMatrix at_point(int i, std::span<const Complex> point) const;
};

// I written in flat coordinates. X side: rows in the delta basis as series in u.
// Y side: K = e^{-sum S_i gamma_i / z} I_red(y(q)) in the fixed-point basis as
// series in q, so that J_Y = z e^{t_0/z} e^{sum t_i gamma_i / z} K.
IFunctionSeries to_flat_coordinates(const IFunctionSeries &I);

// Reads c_ij^k off z d_i z d_j J = sum_k c_ij^k z d_k J, order by order in the
// series variables, by least squares over every z-row of the window.
// X-side constants are valid through degree D - 2, Y-side through D.
StructureConstants extract_structure_constants(Space side, int n, int D, int Z, LambdaPair lambda);

// Structure constants re-extracted with Z + 1 and Z + 2 rows; max coefficient drift.
struct StabilityReport {
    std::vector<int> windows;
    Real max_drift = 0;
    Real scale = 0;
};
StabilityReport extraction_stability(Space side, int n, int D, int Z, LambdaPair lambda);

struct FrobeniusReport {
    Real symmetry = 0;          // max |c_ijk - c_{sigma(ijk)}| over permutations
    Real associativity = 0;     // max series coefficient of the associator
    Real associativity_at_point = 0;
    Real commutativity = 0;
    Real unit = 0;
    Real scale = 0;
    int through_degree = 0;
};
// Pairing is gram_X / gram_Y at the constants' lambda. `point` is used for the
// pointwise associativity residual.
FrobeniusReport frobenius_check(const StructureConstants &s, std::span<const Complex> point);

// (e_0 = 1, e_k) has lambda-degree 0 for k = 0 and 1 otherwise; c_ij^k is
// homogeneous of degree deg_i + deg_j - deg_k.
int lambda_degree(int i, int j, int k);

struct LambdaFitReport {
    std::vector<LambdaPair> samples;  // 3 fit samples, then the validation sample
    Real max_validation_error = 0;    // relative to the largest coefficient
    Real max_forbidden = 0;           // largest entry whose degree is negative, relative
    std::size_t entries = 0;
    bool pass = false;
};
// Fits every coefficient of every c_ij^k by a homogeneous polynomial in lambda
// over 3 samples and validates on a 4th. Samples run on up to `workers` threads.
LambdaFitReport lambda_homogeneity(Space side, int n, int D, int Z, std::mt19937_64 &rng, int workers = 1,
                                   Real tolerance = 1e-8);

// Pade-type fit num/den of a univariate series, with held-out validation.
struct RationalFit {
    bool valid = false;
    int p = 0;  // numerator degree
    int q = 0;  // denominator degree
    std::vector<Complex> num;
    std::vector<Complex> den;  // den[0] = 1
    int held_out = 0;
    Real validation_error = 0;  // relative

    Complex evaluate(Complex s) const;
};
// Smallest p + q whose fit reproduces at least `min_held_out` unused
// coefficients to `tolerance` relative. Invalid (not extrapolated) otherwise.
RationalFit rational_reconstruct(std::span<const Complex> coeffs, int min_held_out = 2, Real tolerance = 1e-8);

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string to_string(CheckStatus s);

struct CorollaryReport {
    int n = 0;
    LambdaPair lambda{};
    int degree = 0;
    CheckStatus status = CheckStatus::Inconclusive;
    Real max_relative_error = 0;
    Real pairing_error = 0;
    Real unit_error = 0;
    int worst_held_out = 0;
    int max_fit_degree = 0;
    std::vector<CMatrix> x_side;      // c^X at u = 0, [i](j, k)
    std::vector<CMatrix> y_conjugated;  // L-conjugated c^Y at q_i = e^{-2 pi i/n}
    std::string note;
};
// Y-side small products restricted to q_1 = ... = q_{n-1} = s, reconstructed as
// rational functions of s, evaluated at s = exp(-2 pi i / n), conjugated by L
// and compared with the X-side products at u = 0.
CorollaryReport corollary_check(int n, LambdaPair lambda, int degree, Real tolerance = 1e-6);

nlohmann::json to_json(const StructureConstants &s);
nlohmann::json to_json(const FrobeniusReport &r);
nlohmann::json to_json(const StabilityReport &r);
nlohmann::json to_json(const LambdaFitReport &r);
nlohmann::json to_json(const RationalFit &r);
nlohmann::json to_json(const CorollaryReport &r);

} // namespace crc

#endif
