#ifndef CRC_CONTINUATION_HPP
#define CRC_CONTINUATION_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include <crc/cohomology.hpp>

namespace crc
{

// Monic polynomial of degree n, coefficients in ascending powers.
struct PolyW {
    Space side = Space::X;
    std::vector<Complex> coeffs;

    int degree() const
    {
        return static_cast<int>(coeffs.size()) - 1;
    }
    Complex evaluate(Complex t) const;
    Complex derivative(Complex t) const;
    Real scale() const;
};

// W_X(k) = k^n + x_{n-1} k^{n-1} + ... + x_1 k + 1 from x_1..x_{n-1}.
PolyW poly_X(std::span<const Complex> x);
// W_Y(m) = m^n + m^{n-1} + y_1 m^{n-2} + y_1^2 y_2 m^{n-3} + ... from y_1..y_{n-1}.
PolyW poly_Y(std::span<const Complex> y);
// Monic polynomial with the given roots.
std::vector<Complex> coefficients_from_roots(std::span<const Complex> roots);
// Inverse of poly_X / poly_Y on polynomials of the right shape.
std::vector<Complex> x_from_poly(const PolyW &w);
std::vector<Complex> y_from_poly(const PolyW &w);

struct RootResult {
    std::vector<Complex> roots;
    Real max_residual = 0;   // max |W(r)| / scale
    Real min_separation = 0;
    bool near_multiple = false;
};

// Companion-matrix eigenvalues polished by Newton steps.
RootResult roots(const PolyW &p, Real separation_tolerance = 1e-9);

// kappa_i -> zeta^{2i+1} as x -> 0.
std::vector<Complex> label_roots_X(std::span<const Complex> x, Real basin = 0.1);
// mu_0 -> -1, mu_k ~ -y_1 ... y_k as y -> 0.
std::vector<Complex> label_roots_Y(std::span<const Complex> y, Real basin = 0.1);

struct TrackStep {
    Real t = 0;
    std::vector<Complex> roots;
    std::vector<Complex> logs;
};

struct RootTrack {
    Space side = Space::X;
    std::vector<TrackStep> steps;
    // perm[i] = position at the end of the trajectory that started at label i,
    // when a final labelling is available.
    std::vector<int> perm;
    Real max_residual = 0;
    Real min_separation = 0;
    Real max_log_jump = 0;
    long substeps = 0;
};

// Coefficients (ascending, monic) along t in [t0, t1].
using CoefficientPath = std::function<std::vector<Complex>(Real)>;

// Tracks labelled roots from t0 to t1 on a uniform grid of `steps` intervals,
// subdividing an interval (up to 2^20 pieces) when nearest-neighbour matching is
// ambiguous. Logs start from `start_logs` and are unwrapped step by step.
RootTrack track_roots(Space side, const CoefficientPath &path, Real t0, Real t1, int steps,
                      std::vector<Complex> start_roots, std::vector<Complex> start_logs);

// Closed-form roots on the two legs of the explicit path.
//
// As written, leg 1 sends mu_0 through 0 for n = 5 (at eps^2 + eps^3 = 1).
// Leg 1 replaces eps by eps exp(i bend sin(pi eps)); the root sum stays -1 and
// the endpoints are unchanged. As written, leg 2 sends every kappa_k through the same point at
// eps' = n/(2n+1), which lies on the discriminant. `bend` moves the roots off
// the unit circle by exp(bend sin(pi eps') (k - (n-1)/2)); the radii multiply to
// 1, the endpoints are unchanged and no root changes its winding about 0.
// bend = 0 is the literal path.
inline constexpr Real default_leg1_bend = 0.1;
inline constexpr Real default_leg2_bend = 0.1;

std::vector<Complex> leg1_roots(int n, Real eps, Real bend = default_leg1_bend);  // mu_0..mu_{n-1}
std::vector<Complex> leg2_roots(int n, Real eps, Real bend = default_leg2_bend);  // kappa_0..kappa_{n-1}
std::vector<Complex> leg1_y(int n, Real eps, Real bend = default_leg1_bend);
std::vector<Complex> leg2_x(int n, Real eps, Real bend = default_leg2_bend);

struct PathSpec {
    int n = 2;
    int steps = 2000;        // per leg
    Real y_endpoint = 0.05;  // start where max |y_i| <= y_endpoint
    Real x_endpoint = 0.05;  // stop where max |x_i| <= x_endpoint
    Real bend = default_leg2_bend;
    Real leg1_bend = default_leg1_bend;
};

struct PathRun {
    PathSpec spec;
    Real eps_start = 0;      // leg-1 parameter of the Y-side endpoint
    Real eps_end = 1;        // leg-2 parameter of the X-side endpoint
    std::vector<Complex> y_start;
    std::vector<Complex> x_end;
    RootTrack leg1;
    RootTrack leg2;
    std::vector<int> sigma;  // mu_i continues to 1/(x_1 kappa_sigma(i))
    Real junction_mismatch = 0;
    Real closed_form_deviation = 0;
    Real min_separation = 0;
    bool identity() const;
};

PathRun track_path(const PathSpec &spec);

// Junction check: leg-1 roots at eps = 1 against 1/(x_1 kappa) at eps' = 0.
Real junction_consistency(int n);

struct RoottofReport {
    std::vector<Real> residuals;
    Real max_residual = 0;
    Real log_sum_residual = 0;  // |sum log kappa_i| mod 2 pi i
};

RoottofReport verify_roottof(int n, std::span<const Complex> x, int D);

struct PropAcReport {
    int n = 0;
    int degree = 0;
    PathRun run;
    std::vector<int> branch_shift;   // m_i with g_i = log mu_i - log mu_{i-1} + 2 pi i m_i at the start
    std::vector<Complex> continued;  // g_i at the X endpoint
    std::vector<Complex> predicted;  // -2 pi i / n + sum_k L_ik f_k(x_end)
    std::vector<Real> errors;
    Real max_error = 0;
    Real y_series_tail = 0;
    Real x_series_tail = 0;
    Real tracking = 0;
};

PropAcReport verify_prop_ac(int n, int D, int steps);
PropAcReport verify_prop_ac(const PathSpec &spec, int D);

// Multiset distance between {1/(x_1 kappa_i)} and {mu_i(y(x))}, relative.
Real root_correspondence_residual(std::span<const Complex> x);

// Permutation of the W_X roots after following x(t), t in [0, 1], starting and
// ending inside the labelling basin.
std::vector<int> monodromy_X(int n, const std::function<std::vector<Complex>(Real)> &x_of_t, int steps);

nlohmann::json to_json(const RootTrack &t, std::size_t stride = 1);
nlohmann::json to_json(const PropAcReport &r);

} // namespace crc

#endif
