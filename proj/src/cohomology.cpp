#include <crc/cohomology.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crc
{

namespace
{

void require_space(const CohomologyClass &c, Space s, const char *what)
{
    if (c.space != s) {
        throw DomainError(std::string(what) + ": class lives on the wrong space");
    }
}

void require_same_lambda(const LambdaPair &a, const LambdaPair &b)
{
    if (a.l1 != b.l1 || a.l2 != b.l2) {
        throw DomainError("classes carry different lambda values");
    }
}

} // namespace

LambdaPair sample_lambda(std::mt19937_64 &rng, int n)
{
    auto rational = [&rng]() {
        const auto num = static_cast<long>(rng() % 9) + 1;
        const auto den = static_cast<long>(rng() % 7) + 1;
        const Real sign = (rng() & 1U) ? Real(1) : Real(-1);
        return sign * Real(num) / Real(den);
    };
    for (;;) {
        LambdaPair l{rational(), rational()};
        const Real scale = std::max(std::abs(l.l1), std::abs(l.l2));
        bool ok = std::abs(l.l1 - l.l2) > 0.05 * scale;
        for (int i = 0; i < n && ok; ++i) {
            const Complex w1 = Real(i + 1) * l.l1 + Real(i + 1 - n) * l.l2;
            const Complex w2 = Real(-i) * l.l1 + Real(n - i) * l.l2;
            ok = std::abs(w1) > 0.05 * scale && std::abs(w2) > 0.05 * scale;
        }
        if (ok) {
            return l;
        }
    }
}

CohomologyClass basis_class(Space space, int n, int k, LambdaPair lambda)
{
    if (k < 0 || k >= n) {
        throw DomainError("basis index out of range");
    }
    CohomologyClass c{space, std::vector<Complex>(static_cast<std::size_t>(n), Complex(0)), lambda};
    c.coeffs[static_cast<std::size_t>(k)] = Complex(1);
    return c;
}

FixedPointData::FixedPointData(int n, LambdaPair lambda) : n_(n), lambda_(lambda)
{
    if (n < 2) {
        throw DomainError("fixed point data needs n >= 2");
    }
    const Real scale = std::max(std::abs(lambda.l1), std::abs(lambda.l2));
    constexpr Real tiny = 1e-12;
    if (scale == 0 || std::abs(lambda.l1) <= tiny * scale || std::abs(lambda.l2) <= tiny * scale ||
        std::abs(lambda.l1 - lambda.l2) <= tiny * scale) {
        throw SingularPairingError("degenerate lambda: need l1, l2 nonzero and distinct");
    }
    for (int i = 0; i < n; ++i) {
        w1_.push_back(Real(i + 1) * lambda.l1 + Real(i + 1 - n) * lambda.l2);
        w2_.push_back(Real(-i) * lambda.l1 + Real(n - i) * lambda.l2);
        if (std::abs(w1_.back()) <= tiny * scale || std::abs(w2_.back()) <= tiny * scale) {
            throw SingularPairingError("degenerate lambda: a tangent weight vanishes");
        }
    }
    // gamma_0 = 1, gamma_1 = omega_0 - l1, gamma_{j+1} = omega_j + 2 gamma_j - gamma_{j-1}.
    restriction_ = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        restriction_(i, 0) = Complex(1);
        restriction_(i, 1) = omega_restriction(0, i) - lambda.l1;
        for (int j = 1; j + 1 < n; ++j) {
            const Complex prev = j >= 2 ? restriction_(i, j - 1) : Complex(0);
            restriction_(i, j + 1) = omega_restriction(j, i) + Real(2) * restriction_(i, j) - prev;
        }
    }
    Eigen::FullPivLU<CMatrix> lu(restriction_);
    if (!lu.isInvertible()) {
        throw SingularPairingError("restriction map is singular");
    }
    restriction_inv_ = lu.inverse();
}

Complex FixedPointData::omega_restriction(int j, int i) const
{
    if (j < 0 || j > n_ || i < 0 || i >= n_) {
        throw DomainError("omega restriction index out of range");
    }
    if (j == i) {
        return w1_[static_cast<std::size_t>(i)];
    }
    if (j == i + 1) {
        return w2_[static_cast<std::size_t>(i)];
    }
    return Complex(0);
}

Real FixedPointData::residue_residual() const
{
    Complex sum(0);
    for (int i = 0; i < n_; ++i) {
        sum += Real(1) / (weight1(i) * weight2(i));
    }
    const Complex top = Real(n_) * lambda_.l1 * lambda_.l2;
    return std::abs(sum * top - Real(1));
}

Real FixedPointData::weight_certificate_residual() const
{
    Real worst = 0;
    for (int i = 0; i < n_; ++i) {
        // omega_n = l2 + gamma_{n-1}
        const Complex wn = lambda_.l2 + restriction_(i, n_ - 1);
        worst = std::max(worst, std::abs(wn - omega_restriction(n_, i)));
        // omega_{n-1} = gamma_{n-2} - 2 gamma_{n-1}; for n = 2 the gamma_0 term is absent.
        const Complex prev = n_ >= 3 ? restriction_(i, n_ - 2) : Complex(0);
        const Complex wm = prev - Real(2) * restriction_(i, n_ - 1);
        worst = std::max(worst, std::abs(wm - omega_restriction(n_ - 1, i)));
    }
    return worst;
}

CohomologyClass omega_class(int n, int j, LambdaPair lambda)
{
    if (j < 0 || j > n) {
        throw DomainError("omega index out of range");
    }
    CohomologyClass c{Space::Y, std::vector<Complex>(static_cast<std::size_t>(n), Complex(0)), lambda};
    auto add = [&c, n](int k, Complex v) {
        if (k >= 1 && k < n) {
            c.coeffs[static_cast<std::size_t>(k)] += v;
        }
    };
    if (j == 0) {
        c.coeffs[0] = lambda.l1;
        add(1, Complex(1));
    } else if (j == n) {
        c.coeffs[0] = lambda.l2;
        add(n - 1, Complex(1));
    } else {
        // gamma_{j-1} - 2 gamma_j + gamma_{j+1}, dropping basis terms outside 1..n-1.
        add(j - 1, Complex(1));
        add(j, Complex(-2));
        add(j + 1, Complex(1));
    }
    return c;
}

std::vector<Complex> restrict_to_fixed_points(const FixedPointData &fp, const CohomologyClass &c)
{
    require_space(c, Space::Y, "restrict_to_fixed_points");
    if (c.n() != fp.n()) {
        throw ShapeError("class rank does not match fixed point data");
    }
    require_same_lambda(c.lambda, fp.lambda());
    CVector v(fp.n());
    for (int k = 0; k < fp.n(); ++k) {
        v(k) = c.coeffs[static_cast<std::size_t>(k)];
    }
    const CVector r = fp.restriction_matrix() * v;
    return {r.data(), r.data() + r.size()};
}

CohomologyClass from_fixed_points(const FixedPointData &fp, const std::vector<Complex> &restrictions)
{
    if (static_cast<int>(restrictions.size()) != fp.n()) {
        throw ShapeError("restriction vector has wrong length");
    }
    CVector r(fp.n());
    for (int i = 0; i < fp.n(); ++i) {
        r(i) = restrictions[static_cast<std::size_t>(i)];
    }
    const CVector v = fp.restriction_inverse() * r;
    return {Space::Y, {v.data(), v.data() + v.size()}, fp.lambda()};
}

CohomologyClass product_Y(const FixedPointData &fp, const CohomologyClass &a, const CohomologyClass &b)
{
    auto ra = restrict_to_fixed_points(fp, a);
    const auto rb = restrict_to_fixed_points(fp, b);
    for (std::size_t i = 0; i < ra.size(); ++i) {
        ra[i] *= rb[i];
    }
    return from_fixed_points(fp, ra);
}

Complex pair_Y(const FixedPointData &fp, const CohomologyClass &a, const CohomologyClass &b)
{
    const auto ra = restrict_to_fixed_points(fp, a);
    const auto rb = restrict_to_fixed_points(fp, b);
    Complex sum(0);
    for (int i = 0; i < fp.n(); ++i) {
        sum += ra[static_cast<std::size_t>(i)] * rb[static_cast<std::size_t>(i)] / (fp.weight1(i) * fp.weight2(i));
    }
    return sum;
}

CMatrix gram_X(int n, LambdaPair lambda)
{
    if (lambda.l1 == Complex(0) || lambda.l2 == Complex(0)) {
        throw SingularPairingError("orbifold pairing needs nonzero lambda");
    }
    CMatrix g = CMatrix::Zero(n, n);
    g(0, 0) = Real(1) / (Real(n) * lambda.l1 * lambda.l2);
    for (int a = 1; a < n; ++a) {
        g(a, n - a) = Complex(Real(1) / Real(n));
    }
    return g;
}

Complex pair_X(const CohomologyClass &a, const CohomologyClass &b)
{
    require_space(a, Space::X, "pair_X");
    require_space(b, Space::X, "pair_X");
    require_same_lambda(a.lambda, b.lambda);
    if (a.n() != b.n()) {
        throw ShapeError("pair_X: rank mismatch");
    }
    const CMatrix g = gram_X(a.n(), a.lambda);
    Complex sum(0);
    for (int i = 0; i < a.n(); ++i) {
        for (int j = 0; j < a.n(); ++j) {
            if (g(i, j) != Complex(0)) {
                sum += a.coeffs[static_cast<std::size_t>(i)] * g(i, j) * b.coeffs[static_cast<std::size_t>(j)];
            }
        }
    }
    return sum;
}

CMatrix gram_Y(const FixedPointData &fp)
{
    const int n = fp.n();
    CMatrix g(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            g(a, b) = pair_Y(fp, basis_class(Space::Y, n, a, fp.lambda()), basis_class(Space::Y, n, b, fp.lambda()));
        }
    }
    return g;
}

CMatrix l_matrix(int n)
{
    if (n < 2) {
        throw DomainError("L needs n >= 2");
    }
    const Complex z = zeta(n);
    CMatrix l = CMatrix::Zero(n, n);
    l(0, 0) = Complex(1);
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
            l(i, j) = std::pow(z, 2 * i * j) * (std::pow(z, -j) - std::pow(z, j)) / Real(n);
        }
    }
    return l;
}

CohomologyClass L_map(const CohomologyClass &c)
{
    require_space(c, Space::X, "L_map");
    const CMatrix l = l_matrix(c.n());
    CVector v(c.n());
    for (int k = 0; k < c.n(); ++k) {
        v(k) = c.coeffs[static_cast<std::size_t>(k)];
    }
    const CVector w = l * v;
    return {Space::Y, {w.data(), w.data() + w.size()}, c.lambda};
}

CohomologyClass L_adjoint(const FixedPointData &fp, const CohomologyClass &c)
{
    require_space(c, Space::Y, "L_adjoint");
    require_same_lambda(c.lambda, fp.lambda());
    const int n = fp.n();
    // (L^dagger)^T G_X = G_Y L  =>  L^dagger = G_X^{-1} L^T G_Y.
    const CMatrix adj = gram_X(n, fp.lambda()).fullPivLu().solve(CMatrix(l_matrix(n).transpose() * gram_Y(fp)));
    CVector v(n);
    for (int k = 0; k < n; ++k) {
        v(k) = c.coeffs[static_cast<std::size_t>(k)];
    }
    const CVector w = adj * v;
    return {Space::X, {w.data(), w.data() + w.size()}, c.lambda};
}

CohomologyClass L_adjoint_omega_closed_form(int n, int i, LambdaPair lambda)
{
    if (i < 1 || i >= n) {
        throw DomainError("closed-form adjoint is stated for 1 <= i < n");
    }
    const CMatrix l = l_matrix(n);
    CohomologyClass c{Space::X, std::vector<Complex>(static_cast<std::size_t>(n), Complex(0)), lambda};
    for (int k = 1; k < n; ++k) {
        c.coeffs[static_cast<std::size_t>(n - k)] += Real(n) * l(i, k);
    }
    return c;
}

CartanReport cartan_check(int n, LambdaPair lambda, Real tolerance)
{
    const FixedPointData fp(n, lambda);
    CartanReport r;
    r.n = n;
    r.lambda = lambda;
    std::vector<CohomologyClass> adj;
    for (int i = 1; i < n; ++i) {
        adj.push_back(L_adjoint(fp, omega_class(n, i, lambda)));
    }
    const CohomologyClass unit = L_adjoint(fp, basis_class(Space::Y, n, 0, lambda));

    r.matrix = CMatrix(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
            const Complex v = pair_X(adj[static_cast<std::size_t>(i - 1)], adj[static_cast<std::size_t>(j - 1)]);
            r.matrix(i - 1, j - 1) = v;
            const int gap = std::abs(i - j);
            const Real expected = gap == 0 ? -2 : (gap == 1 ? 1 : 0);
            const Real res = std::abs(v - expected);
            if (res >= r.max_residual) {
                std::ostringstream os;
                os << "(" << i << "," << j << ") residual " << static_cast<double>(res);
                r.worst_entry = os.str();
                r.max_residual = res;
            }
        }
        r.unit_omega.push_back(pair_X(unit, adj[static_cast<std::size_t>(i - 1)]));
        r.max_residual = std::max(r.max_residual, std::abs(r.unit_omega.back()));
    }
    r.unit_unit = pair_X(unit, unit);
    const Complex expected_unit = Real(1) / (Real(n) * lambda.l1 * lambda.l2);
    r.unit_residual = std::abs(r.unit_unit - expected_unit) / std::abs(expected_unit);
    r.pass = r.max_residual <= tolerance && r.unit_residual <= tolerance;
    return r;
}

nlohmann::json lambda_json(LambdaPair l)
{
    return nlohmann::json::array({nlohmann::json::array({static_cast<double>(l.l1.real()), static_cast<double>(l.l1.imag())}),
                                  nlohmann::json::array({static_cast<double>(l.l2.real()), static_cast<double>(l.l2.imag())})});
}

nlohmann::json to_json(const CartanReport &r)
{
    nlohmann::json m = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.matrix.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < r.matrix.cols(); ++j) {
            // The entries are real integers up to roundoff; report the real part and keep the
            // full residual separately.
            row.push_back(static_cast<double>(r.matrix(i, j).real()));
        }
        m.push_back(row);
    }
    nlohmann::json unit_omega = nlohmann::json::array();
    for (const auto &v : r.unit_omega) {
        unit_omega.push_back(static_cast<double>(std::abs(v)));
    }
    return {{"n", r.n},
            {"lambda", lambda_json(r.lambda)},
            {"cartan_matrix", m},
            {"residuals",
             {{"cartan_max_abs", static_cast<double>(r.max_residual)},
              {"unit_unit_relative", static_cast<double>(r.unit_residual)},
              {"unit_omega_abs", unit_omega},
              {"worst_entry", r.worst_entry}}},
            {"pass", r.pass}};
}

} // namespace crc
