#include <crc/special.hpp>

#include <array>
#include <cmath>

namespace crc
{

namespace
{

// Lanczos coefficients for g = 7, nine terms.
constexpr Real lanczos_g = 7;
constexpr std::array<Real, 9> lanczos_p = {
    0.99999999999980993227684700473478L, 676.520368121885098567009190444019L, -1259.13921672240287047156078755283L,
    771.3234287776530788486528258894L,   -176.61502916214059906584551354L,    12.507343278686904814458936853L,
    -0.13857109526572011689554707L,      9.984369578019570859563e-6L,         1.50563273514931155834e-7L};

// 1/Gamma(z + 1) for z >= -1/2.
Real reciprocal_gamma_lanczos(Real z)
{
    Real a = lanczos_p[0];
    for (std::size_t k = 1; k < lanczos_p.size(); ++k) {
        a += lanczos_p[k] / (z + Real(k));
    }
    const Real t = z + lanczos_g + Real(0.5);
    return std::exp(t - (z + Real(0.5)) * std::log(t)) / (std::sqrt(2 * pi) * a);
}

} // namespace

Real sin_pi(Real s)
{
    if (s == std::floor(s)) {
        return 0;
    }
    Real r = s - 2 * std::round(s / 2); // r in [-1, 1]
    if (r > Real(0.5)) {
        r = 1 - r;
    } else if (r < Real(-0.5)) {
        r = -1 - r;
    }
    return std::sin(pi * r);
}

Real reciprocal_gamma(Real s)
{
    if (s <= 0 && s == std::floor(s)) {
        return 0;
    }
    if (s < Real(0.5)) {
        // Reflection: 1/Gamma(s) = sin(pi s) Gamma(1 - s) / pi.
        return sin_pi(s) / (pi * reciprocal_gamma_lanczos(-s));
    }
    return reciprocal_gamma_lanczos(s - 1);
}

} // namespace crc
