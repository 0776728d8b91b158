#ifndef CRC_COHOMOLOGY_HPP
#define CRC_COHOMOLOGY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include <crc/config.hpp>
#include <crc/linalg.hpp>

namespace crc
{

// Equivariant parameters, sampled numerically.
struct LambdaPair {
    Complex l1;
    Complex l2;
};

// Random rational lambda pair a/b, c/d with small numerators and denominators,
// redrawn until the localization denominators for `n` are safely nonzero.
LambdaPair sample_lambda(std::mt19937_64 &rng, int n);

enum class Space { X, Y };

// Element of H(X) (basis delta_0..delta_{n-1}) or H(Y) (basis gamma_0..gamma_{n-1})
// at a fixed numeric lambda.
struct CohomologyClass {
    Space space;
    std::vector<Complex> coeffs;
    LambdaPair lambda;

    int n() const
    {
        return static_cast<int>(coeffs.size());
    }
};

CohomologyClass basis_class(Space space, int n, int k, LambdaPair lambda);

// Torus-fixed points p_0..p_{n-1} of Y and the restrictions of the toric divisor
// classes to them. Tangent weights at p_i:
//   w_{i,1} = (i+1) l1 + (i+1-n) l2,   w_{i,2} = -i l1 + (n-i) l2.
// They are pinned by the fan cones <(1,i),(1,i+1)> and the torus action on a_0, a_n;
// residue_residual() and weight_certificate_residual() re-derive them at runtime.
class FixedPointData
{
public:
    FixedPointData(int n, LambdaPair lambda);

    int n() const
    {
        return n_;
    }
    const LambdaPair &lambda() const
    {
        return lambda_;
    }
    Complex weight1(int i) const
    {
        return w1_[static_cast<std::size_t>(i)];
    }
    Complex weight2(int i) const
    {
        return w2_[static_cast<std::size_t>(i)];
    }
    // omega_j restricted to p_i.
    Complex omega_restriction(int j, int i) const;
    // R(i, k) = gamma_k restricted to p_i.
    const CMatrix &restriction_matrix() const
    {
        return restriction_;
    }
    const CMatrix &restriction_inverse() const
    {
        return restriction_inv_;
    }

    // |sum_i 1/(w_{i,1} w_{i,2}) - 1/(n l1 l2)| * |n l1 l2|.
    Real residue_residual() const;
    // Max mismatch of the two omega relations not used to build gamma restrictions
    // (omega_{n-1} and omega_n).
    Real weight_certificate_residual() const;

private:
    int n_;
    LambdaPair lambda_;
    std::vector<Complex> w1_;
    std::vector<Complex> w2_;
    CMatrix restriction_;
    CMatrix restriction_inv_;
};

// omega_j, 0 <= j <= n, in the gamma basis.
CohomologyClass omega_class(int n, int j, LambdaPair lambda);

std::vector<Complex> restrict_to_fixed_points(const FixedPointData &fp, const CohomologyClass &c);
CohomologyClass from_fixed_points(const FixedPointData &fp, const std::vector<Complex> &restrictions);

// Equivariant cup product on Y, computed pointwise on the fixed locus.
CohomologyClass product_Y(const FixedPointData &fp, const CohomologyClass &a, const CohomologyClass &b);

Complex pair_Y(const FixedPointData &fp, const CohomologyClass &a, const CohomologyClass &b);
Complex pair_X(const CohomologyClass &a, const CohomologyClass &b);

// Gram matrices in the delta and gamma bases.
CMatrix gram_X(int n, LambdaPair lambda);
CMatrix gram_Y(const FixedPointData &fp);

// L_{ij} = zeta^{2ij} (zeta^{-j} - zeta^{j}) / n for 1 <= i, j < n, extended by
// L_{00} = 1 to the full n x n matrix of the map delta_j -> sum_i L_{ij} gamma_i.
CMatrix l_matrix(int n);

CohomologyClass L_map(const CohomologyClass &c);
// Adjoint for the two pairings: (L^dagger a, b)_X = (a, L b)_Y.
CohomologyClass L_adjoint(const FixedPointData &fp, const CohomologyClass &c);
// n sum_k L_{ik} delta_{n-k}, the closed form of L^dagger omega_i.
CohomologyClass L_adjoint_omega_closed_form(int n, int i, LambdaPair lambda);

struct CartanReport {
    int n = 0;
    LambdaPair lambda{};
    CMatrix matrix;                  // (L^dagger omega_i, L^dagger omega_j)_X, 1 <= i,j < n
    Complex unit_unit;               // (L^dagger 1, L^dagger 1)_X
    std::vector<Complex> unit_omega; // (L^dagger 1, L^dagger omega_i)_X
    Real max_residual = 0;           // against the expected -2 / 1 / 0 pattern
    Real unit_residual = 0;          // relative, against 1/(n l1 l2)
    std::string worst_entry;
    bool pass = false;
};

CartanReport cartan_check(int n, LambdaPair lambda, Real tolerance = 1e-10);

nlohmann::json to_json(const CartanReport &r);
nlohmann::json lambda_json(LambdaPair l);

} // namespace crc

#endif
