#include <crc/mirror.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <crc/special.hpp>

namespace crc
{

namespace
{

int positive_mod(int a, int n)
{
    const int r = a % n;
    return r < 0 ? r + n : r;
}

Real factorial_product(std::span<const int> e)
{
    Real p = 1;
    for (int v : e) {
        for (int k = 2; k <= v; ++k) {
            p *= Real(k);
        }
    }
    return p;
}

void require_n(int n)
{
    if (n < 2) {
        throw DomainError("n must be at least 2");
    }
}

void require_window(int D, int Z)
{
    if (D < 0) {
        throw DomainError("degree must be nonnegative");
    }
    if (Z < 0) {
        throw WindowError("z-window must be nonnegative");
    }
}

std::vector<std::vector<TruncatedSeries>> zero_rows(int n, int D, int Z)
{
    return std::vector<std::vector<TruncatedSeries>>(
        static_cast<std::size_t>(Z + 2),
        std::vector<TruncatedSeries>(static_cast<std::size_t>(n), TruncatedSeries(n - 1, D)));
}

// T_j (log y_k): the constant produced by T_j on the log term.
Real theta_y_on_log(int n, int j, int k)
{
    std::vector<Real> a(static_cast<std::size_t>(n - 1), Real(0));
    a[static_cast<std::size_t>(k)] = 1;
    return GkzOperator::theta_y(n, j, a);
}

struct LogState {
    std::vector<Complex> a;
    TruncatedSeries s;
};

LogState apply_factor(const LogState &in, int n, int j, int m)
{
    LogState out{in.a, in.s};
    const auto &layout = in.s.layout();
    std::vector<Real> e(static_cast<std::size_t>(n - 1));
    for (std::size_t idx = 0; idx < layout.size(); ++idx) {
        const auto ex = layout.exponents(idx);
        std::copy(ex.begin(), ex.end(), e.begin());
        out.s[idx] = (GkzOperator::theta_y(n, j, e) - Real(m)) * in.s[idx];
    }
    Complex c(0);
    for (int k = 0; k < n - 1; ++k) {
        c += in.a[static_cast<std::size_t>(k)] * theta_y_on_log(n, j, k);
        out.a[static_cast<std::size_t>(k)] = -Real(m) * in.a[static_cast<std::size_t>(k)];
    }
    out.s[0] += c;
    return out;
}

bool has_log(const LogState &s)
{
    return std::any_of(s.a.begin(), s.a.end(), [](Complex v) { return v != Complex(0); });
}

std::vector<int> shifted(std::span<const int> b, std::span<const int> d, int sign)
{
    std::vector<int> r(b.begin(), b.end());
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] += sign * d[k];
    }
    return r;
}

bool within_cap(std::span<const int> e, int cap)
{
    // Entries may be negative (then the coefficient is exactly zero); only the
    // positive part can push a monomial past the truncation.
    int t = 0;
    for (int v : e) {
        t += std::max(v, 0);
    }
    return t <= cap;
}

void record(PfResidual &r, const std::vector<int> &mono, int component, int n, const ZLaurent &lhs,
            const ZLaurent &rhs)
{
    auto &slot = r.terms[mono];
    if (slot.empty()) {
        slot.assign(static_cast<std::size_t>(n), {});
    }
    auto &vals = slot[static_cast<std::size_t>(component)];
    vals.clear();
    for (int p = r.checked_top; p >= r.checked_bottom; --p) {
        const Complex a = lhs.at(p);
        const Complex b = rhs.at(p);
        vals.push_back(a - b);
        r.max_abs = std::max(r.max_abs, static_cast<Real>(std::abs(a - b)));
        r.scale = std::max({r.scale, static_cast<Real>(std::abs(a)), static_cast<Real>(std::abs(b))});
        ++r.entries;
    }
}

} // namespace

int OrbifoldClass::beta0_num() const
{
    int s = 0;
    for (int k = 1; k < n; ++k) {
        s -= (n - k) * beta[static_cast<std::size_t>(k - 1)];
    }
    return s;
}

int OrbifoldClass::betan_num() const
{
    int s = 0;
    for (int k = 1; k < n; ++k) {
        s -= k * beta[static_cast<std::size_t>(k - 1)];
    }
    return s;
}

int OrbifoldClass::sector() const
{
    return positive_mod(-betan_num(), n);
}

bool OrbifoldClass::effective() const
{
    return std::all_of(beta.begin(), beta.end(), [](int v) { return v >= 0; });
}

std::vector<OrbifoldClass> enumerate_effective(int n, int D)
{
    require_n(n);
    if (D < 0) {
        throw DomainError("degree must be nonnegative");
    }
    const auto layout = MonomialLayout::get(n - 1, D);
    std::vector<OrbifoldClass> out;
    out.reserve(layout->size());
    for (std::size_t idx = 0; idx < layout->size(); ++idx) {
        const auto e = layout->exponents(idx);
        out.push_back(OrbifoldClass{n, MultiIndex(e.begin(), e.end())});
    }
    return out;
}

std::vector<int> curve_degrees(int n, std::span<const int> d)
{
    require_n(n);
    if (static_cast<int>(d.size()) != n - 1) {
        throw ShapeError("curve class must have n-1 entries");
    }
    auto at = [&d, n](int k) { return (k >= 1 && k <= n - 1) ? d[static_cast<std::size_t>(k - 1)] : 0; };
    std::vector<int> D(static_cast<std::size_t>(n + 1));
    D[0] = at(1);
    D[static_cast<std::size_t>(n)] = at(n - 1);
    for (int j = 1; j < n; ++j) {
        D[static_cast<std::size_t>(j)] = at(j - 1) - 2 * at(j) + at(j + 1);
    }
    return D;
}

const std::vector<TruncatedSeries> &IFunctionSeries::row(int power) const
{
    if (power > 1 || power < -zorder) {
        throw WindowError("z power " + std::to_string(power) + " outside the stored window");
    }
    return rows[static_cast<std::size_t>(1 - power)];
}

std::vector<std::vector<TruncatedSeries>> IFunctionSeries::with_x0() const
{
    auto out = rows;
    for (int p = 1; p >= -zorder; --p) {
        auto &dst = out[static_cast<std::size_t>(1 - p)];
        Complex w(1);
        for (int j = 1; p + j <= 1; ++j) {
            w *= x0 / Real(j);
            const auto &src = rows[static_cast<std::size_t>(1 - p - j)];
            for (int c = 0; c < n; ++c) {
                dst[static_cast<std::size_t>(c)] += src[static_cast<std::size_t>(c)] * w;
            }
        }
    }
    return out;
}

ZLaurent IFunctionSeries::coefficient(std::span<const int> monomial, int component) const
{
    ZLaurent l(1, rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        l.c[r] = rows[r][static_cast<std::size_t>(component)].coeff(monomial);
    }
    return l;
}

IFunctionSeries i_function_X(int n, int D, int Z, Complex x0, LambdaPair lambda)
{
    require_n(n);
    require_window(D, Z);
    IFunctionSeries I{Space::X, IBasis::Delta, n, D, Z, lambda, x0, zero_rows(n, D, Z)};
    const auto classes = enumerate_effective(n, D);
    for (std::size_t idx = 0; idx < classes.size(); ++idx) {
        const auto &b = classes[idx];
        // ascending coefficients in z
        std::vector<Complex> poly{Complex(1)};
        auto times = [&poly](Complex w, Real r) {
            std::vector<Complex> next(poly.size() + 1, Complex(0));
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k] += w * poly[k];
                next[k + 1] += r * poly[k];
            }
            poly.swap(next);
        };
        for (int num = b.beta0_num() + n; num <= 0; num += n) {
            times(lambda.l1, Real(num) / Real(n));
        }
        for (int num = b.betan_num() + n; num <= 0; num += n) {
            times(lambda.l2, Real(num) / Real(n));
        }
        const Real scale = Real(1) / factorial_product(b.beta);
        const int sector = b.sector();
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const int row = b.total() - static_cast<int>(k);
            if (row >= 0 && row <= Z + 1) {
                I.rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(sector)][idx] += poly[k] * scale;
            }
        }
    }
    return I;
}

IFunctionSeries i_function_Y(int n, int D, int Z, Complex y0, LambdaPair lambda, IBasis basis)
{
    require_n(n);
    require_window(D, Z);
    if (basis == IBasis::Delta) {
        throw DomainError("the Y-side I-function lives in the gamma or fixed-point basis");
    }
    const FixedPointData fp(n, lambda);
    IFunctionSeries I{Space::Y, IBasis::FixedPoint, n, D, Z, lambda, y0, zero_rows(n, D, Z)};
    const auto layout = MonomialLayout::get(n - 1, D);
    const std::size_t terms = static_cast<std::size_t>(Z + 2);
    for (std::size_t idx = 0; idx < layout->size(); ++idx) {
        const auto e = layout->exponents(idx);
        const auto Dj = curve_degrees(n, e);
        for (int i = 0; i < n; ++i) {
            ZLaurent l(1, terms);
            l.c[0] = Complex(1);
            for (int j = 0; j <= n; ++j) {
                const Complex w = fp.omega_restriction(j, i);
                const int dj = Dj[static_cast<std::size_t>(j)];
                for (int m = dj + 1; m <= 0; ++m) {
                    l = l.times_linear(w, Complex(Real(m)));
                }
                for (int m = 1; m <= dj; ++m) {
                    l = l.over_linear(w, Complex(Real(m)));
                }
            }
            for (int p = std::min(l.top, 1); p >= std::max(l.bottom(), -Z); --p) {
                I.rows[static_cast<std::size_t>(1 - p)][static_cast<std::size_t>(i)][idx] = l.at(p);
            }
        }
    }
    return basis == IBasis::FixedPoint ? I : to_basis(I, basis);
}

IFunctionSeries to_basis(const IFunctionSeries &I, IBasis basis)
{
    if (I.side != Space::Y || basis == IBasis::Delta) {
        throw DomainError("basis change is only defined between gamma and fixed points");
    }
    if (I.basis == basis) {
        return I;
    }
    const FixedPointData fp(I.n, I.lambda);
    const CMatrix &M = basis == IBasis::FixedPoint ? fp.restriction_matrix() : fp.restriction_inverse();
    IFunctionSeries out = I;
    out.basis = basis;
    const std::size_t size = I.rows.front().front().size();
    for (std::size_t r = 0; r < I.rows.size(); ++r) {
        for (std::size_t idx = 0; idx < size; ++idx) {
            for (int a = 0; a < I.n; ++a) {
                Complex s(0);
                for (int b = 0; b < I.n; ++b) {
                    s += M(a, b) * I.rows[r][static_cast<std::size_t>(b)][idx];
                }
                out.rows[r][static_cast<std::size_t>(a)][idx] = s;
            }
        }
    }
    return out;
}

std::vector<TruncatedSeries> flat_coords_X(int n, int D)
{
    require_n(n);
    if (D < 1) {
        throw DomainError("flat coordinates need degree >= 1");
    }
    std::vector<TruncatedSeries> f(static_cast<std::size_t>(n - 1), TruncatedSeries(n - 1, D));
    const auto classes = enumerate_effective(n, D);
    for (std::size_t idx = 0; idx < classes.size(); ++idx) {
        const auto &b = classes[idx];
        const int k = b.sector();
        if (k == 0) {
            continue;
        }
        // Gamma(1 - k/n) Gamma(k/n) = pi / sin(pi k / n)
        const Real front = pi / std::sin(pi * Real(k) / Real(n));
        const Real c = front * reciprocal_gamma(1 + b.beta0()) * reciprocal_gamma(1 + b.betan())
                       / factorial_product(b.beta);
        f[static_cast<std::size_t>(k - 1)][idx] = Complex(c);
    }
    return f;
}

Complex LogSeries::evaluate(std::span<const Complex> y, std::span<const Complex> log_y) const
{
    Complex v = analytic.evaluate(y);
    for (std::size_t k = 0; k < log_coeffs.size(); ++k) {
        v += log_coeffs[k] * log_y[k];
    }
    return v;
}

LogSeries MirrorMapY::g(int k) const
{
    if (k < 1 || k >= n) {
        throw DomainError("flat coordinate index out of range");
    }
    LogSeries out{std::vector<Complex>(static_cast<std::size_t>(n - 1), Complex(0)),
                  S[static_cast<std::size_t>(k - 1)]};
    out.log_coeffs[static_cast<std::size_t>(k - 1)] = Complex(1);
    return out;
}

std::vector<TruncatedSeries> MirrorMapY::exp_flat() const
{
    std::vector<TruncatedSeries> q;
    for (int k = 1; k < n; ++k) {
        const auto yk = TruncatedSeries::variable(n - 1, degree, k - 1);
        q.push_back(yk * exp(S[static_cast<std::size_t>(k - 1)]));
    }
    return q;
}

MirrorMapY mirror_map_Y(int n, int D)
{
    require_n(n);
    if (D < 1) {
        throw DomainError("mirror map needs degree >= 1");
    }
    MirrorMapY m{n, D, std::vector<TruncatedSeries>(static_cast<std::size_t>(n - 1), TruncatedSeries(n - 1, D))};
    const auto layout = MonomialLayout::get(n - 1, D);
    // Only curve classes with exactly one negative D_j reach the z^0 row.
    for (std::size_t idx = 1; idx < layout->size(); ++idx) {
        const auto Dj = curve_degrees(n, layout->exponents(idx));
        int neg = -1;
        int count = 0;
        Real denom = 1;
        for (int j = 0; j <= n; ++j) {
            const int v = Dj[static_cast<std::size_t>(j)];
            if (v < 0) {
                neg = j;
                ++count;
            } else {
                for (int k = 2; k <= v; ++k) {
                    denom *= Real(k);
                }
            }
        }
        if (count != 1) {
            continue;
        }
        const int a = -Dj[static_cast<std::size_t>(neg)];
        Real c = (a % 2 == 1) ? Real(1) : Real(-1);
        for (int k = 2; k < a; ++k) {
            c *= Real(k);
        }
        c /= denom;
        // omega_neg = gamma_{neg-1} - 2 gamma_neg + gamma_{neg+1}
        for (int k = neg - 1; k <= neg + 1; ++k) {
            if (k < 1 || k > n - 1) {
                continue;
            }
            const Real w = (k == neg) ? Real(-2) : Real(1);
            m.S[static_cast<std::size_t>(k - 1)][idx] += Complex(c * w);
        }
    }
    return m;
}

std::vector<std::vector<int>> xtoy_exponents(int n)
{
    require_n(n);
    std::vector<std::vector<int>> C(static_cast<std::size_t>(n - 1), std::vector<int>(static_cast<std::size_t>(n - 1), 0));
    for (int i = 0; i < n - 1; ++i) {
        C[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -2;
        if (i > 0) {
            C[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1;
        }
        if (i + 1 < n - 1) {
            C[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = 1;
        }
    }
    return C;
}

std::vector<Complex> x_to_y(std::span<const Complex> x)
{
    const std::size_t m = x.size();
    for (Complex v : x) {
        if (v == Complex(0)) {
            throw DomainError("coordinate change needs all x_i nonzero");
        }
    }
    std::vector<Complex> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        Complex v = Real(1) / (x[i] * x[i]);
        if (i > 0) {
            v *= x[i - 1];
        }
        if (i + 1 < m) {
            v *= x[i + 1];
        }
        y[i] = v;
    }
    return y;
}

std::vector<Complex> y_to_x(std::span<const Complex> y)
{
    const int n = static_cast<int>(y.size()) + 1;
    std::vector<Complex> logy(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == Complex(0)) {
            throw DomainError("inverse coordinate change needs all y_i nonzero");
        }
        logy[i] = std::log(y[i]);
    }
    std::vector<Complex> x(y.size());
    for (int k = 1; k < n; ++k) {
        Complex s(0);
        for (int i = 1; i < n; ++i) {
            // (C^{-1})_{ki} = -min(k,i) (n - max(k,i)) / n
            const Real c = -Real(std::min(k, i) * (n - std::max(k, i))) / Real(n);
            s += c * logy[static_cast<std::size_t>(i - 1)];
        }
        x[static_cast<std::size_t>(k - 1)] = std::exp(s);
    }
    return x;
}

int GkzOperator::order() const
{
    int s = 0;
    for (int v : D) {
        s += std::max(v, 0);
    }
    return s;
}

Real GkzOperator::theta_y(int n, int j, std::span<const Real> a)
{
    auto at = [&a, n](int k) { return (k >= 1 && k <= n - 1) ? a[static_cast<std::size_t>(k - 1)] : Real(0); };
    if (j == 0) {
        return at(1);
    }
    if (j == n) {
        return at(n - 1);
    }
    return at(j - 1) - 2 * at(j) + at(j + 1);
}

Real GkzOperator::theta_x(int n, int j, std::span<const Real> b)
{
    if (j >= 1 && j <= n - 1) {
        return b[static_cast<std::size_t>(j - 1)];
    }
    Real s = 0;
    for (int k = 1; k < n; ++k) {
        s += Real(j == 0 ? n - k : k) * b[static_cast<std::size_t>(k - 1)];
    }
    return -s / Real(n);
}

Complex GkzOperator::lhs_symbol(std::span<const Real> ell) const
{
    Complex p(1);
    for (int j = 0; j <= n; ++j) {
        for (int m = 0; m < D[static_cast<std::size_t>(j)]; ++m) {
            p *= ell[static_cast<std::size_t>(j)] - Real(m);
        }
    }
    return p;
}

Complex GkzOperator::rhs_symbol(std::span<const Real> ell) const
{
    Complex p(1);
    for (int j = 0; j <= n; ++j) {
        for (int m = 0; m < -D[static_cast<std::size_t>(j)]; ++m) {
            p *= ell[static_cast<std::size_t>(j)] - Real(m);
        }
    }
    return p;
}

GkzOperator gkz_operator(int n, std::span<const int> d)
{
    return GkzOperator{n, MultiIndex(d.begin(), d.end()), curve_degrees(n, d)};
}

std::vector<GkzOperator> gkz_generators(int n)
{
    std::vector<GkzOperator> ops;
    for (int i = 0; i < n - 1; ++i) {
        MultiIndex d(static_cast<std::size_t>(n - 1), 0);
        d[static_cast<std::size_t>(i)] = 1;
        ops.push_back(gkz_operator(n, d));
    }
    return ops;
}

GkzResidual gkz_residual(const LogSeries &g, const GkzOperator &op)
{
    const int n = op.n;
    if (g.analytic.nvars() != n - 1 || g.log_coeffs.size() != static_cast<std::size_t>(n - 1)) {
        throw ShapeError("GKZ input has the wrong number of variables");
    }
    if (g.analytic.degree_cap() < op.order()) {
        throw WindowError("series degree is below the operator order");
    }
    LogState lhs{g.log_coeffs, g.analytic};
    LogState rhs = lhs;
    for (int j = 0; j <= n; ++j) {
        const int dj = op.D[static_cast<std::size_t>(j)];
        for (int m = 0; m < dj; ++m) {
            lhs = apply_factor(lhs, n, j, m);
        }
        for (int m = 0; m < -dj; ++m) {
            rhs = apply_factor(rhs, n, j, m);
        }
    }
    if (has_log(lhs) || has_log(rhs)) {
        throw DomainError("unsupported log structure: logarithms survive the GKZ operator");
    }
    const int cap = g.analytic.degree_cap();
    auto shift = TruncatedSeries::monomial(n - 1, cap, op.d, Complex(1));
    const TruncatedSeries res = lhs.s - shift * rhs.s;
    GkzResidual out;
    const auto &layout = res.layout();
    for (std::size_t idx = 0; idx < layout.size(); ++idx) {
        const auto e = layout.exponents(idx);
        out.terms[std::vector<int>(e.begin(), e.end())] = res[idx];
        out.max_abs = std::max(out.max_abs, static_cast<Real>(std::abs(res[idx])));
    }
    out.input_scale = g.analytic.max_abs();
    for (Complex a : g.log_coeffs) {
        out.input_scale = std::max(out.input_scale, static_cast<Real>(std::abs(a)));
    }
    return out;
}

TruncatedSeries gkz_term_by_term_n2(int D)
{
    if (D < 1) {
        throw DomainError("degree must be at least 1");
    }
    const GkzOperator op = gkz_generators(2).front();
    auto symbols = [](int m) {
        const std::vector<Real> b{Real(m)};
        return std::vector<Real>{GkzOperator::theta_x(2, 0, b), GkzOperator::theta_x(2, 1, b),
                                 GkzOperator::theta_x(2, 2, b)};
    };
    // residual at x^m: lhs(m) c_m - rhs(m + 2) c_{m+2}
    TruncatedSeries f(1, D);
    Complex c(1);
    for (int m = 1; m <= D; m += 2) {
        f.set_coeff(std::vector<int>{m}, c);
        const Complex den = op.rhs_symbol(symbols(m + 2));
        if (den == Complex(0)) {
            throw DomainError("GKZ recurrence is degenerate");
        }
        c *= op.lhs_symbol(symbols(m)) / den;
    }
    return f;
}

GkzResidual gkz_residual_x(const TruncatedSeries &f, const GkzOperator &op)
{
    const int n = op.n;
    if (f.nvars() != n - 1) {
        throw ShapeError("GKZ input has the wrong number of variables");
    }
    const int cap = f.degree_cap();
    if (cap < op.order()) {
        throw WindowError("series degree is below the operator order");
    }
    // y^d = x^{Dx}
    const std::vector<int> Dx(op.D.begin() + 1, op.D.end() - 1);
    const auto &layout = f.layout();
    std::vector<std::vector<int>> candidates;
    for (std::size_t idx = 0; idx < layout.size(); ++idx) {
        const auto e = layout.exponents(idx);
        candidates.emplace_back(e.begin(), e.end());
        candidates.push_back(shifted(e, Dx, +1));
    }
    GkzResidual out;
    std::vector<Real> b(static_cast<std::size_t>(n - 1));
    std::vector<Real> ell(static_cast<std::size_t>(n + 1));
    auto symbols_at = [&](std::span<const int> mono) {
        std::copy(mono.begin(), mono.end(), b.begin());
        for (int j = 0; j <= n; ++j) {
            ell[static_cast<std::size_t>(j)] = GkzOperator::theta_x(n, j, b);
        }
    };
    for (const auto &mono : candidates) {
        if (out.terms.count(mono) != 0) {
            continue;
        }
        const auto prev = shifted(mono, Dx, -1);
        if (!within_cap(mono, cap) || !within_cap(prev, cap)) {
            continue;
        }
        symbols_at(mono);
        const Complex l = op.lhs_symbol(ell) * f.coeff(mono);
        symbols_at(prev);
        const Complex r = op.rhs_symbol(ell) * f.coeff(prev);
        out.terms[mono] = l - r;
        out.max_abs = std::max(out.max_abs, static_cast<Real>(std::abs(l - r)));
    }
    out.input_scale = f.max_abs();
    return out;
}

GkzResidual gkz_residual_pulled_to_y(const TruncatedSeries &f, const GkzOperator &op)
{
    const int n = op.n;
    if (f.nvars() != n - 1) {
        throw ShapeError("GKZ input has the wrong number of variables");
    }
    const int cap = f.degree_cap();
    if (cap < op.order()) {
        throw WindowError("series degree is below the operator order");
    }
    const auto C = xtoy_exponents(n);
    const std::size_t m = static_cast<std::size_t>(n - 1);
    // n C^{-1} has integer entries -min(k,i)(n - max(k,i)).
    auto to_y = [&](std::span<const int> bx) {
        std::vector<int> A(m, 0);
        for (int k = 1; k < n; ++k) {
            int s = 0;
            for (int i = 1; i < n; ++i) {
                s -= std::min(k, i) * (n - std::max(k, i)) * bx[static_cast<std::size_t>(i - 1)];
            }
            A[static_cast<std::size_t>(k - 1)] = s;
        }
        return A;
    };
    auto to_x = [&](std::span<const int> A) {
        std::vector<int> bx(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            int s = 0;
            for (std::size_t k = 0; k < m; ++k) {
                s += C[i][k] * A[k];
            }
            bx[i] = s / n;
        }
        return bx;
    };
    std::vector<int> nd(m);
    for (std::size_t k = 0; k < m; ++k) {
        nd[k] = n * op.d[k];
    }
    const auto &layout = f.layout();
    std::vector<std::vector<int>> candidates;
    for (std::size_t idx = 0; idx < layout.size(); ++idx) {
        const auto A = to_y(layout.exponents(idx));
        candidates.push_back(A);
        candidates.push_back(shifted(A, nd, +1));
    }
    GkzResidual out;
    std::vector<Real> a(m);
    std::vector<Real> ell(static_cast<std::size_t>(n + 1));
    auto symbols_at = [&](std::span<const int> A) {
        for (std::size_t k = 0; k < m; ++k) {
            a[k] = Real(A[k]) / Real(n);
        }
        for (int j = 0; j <= n; ++j) {
            ell[static_cast<std::size_t>(j)] = GkzOperator::theta_y(n, j, a);
        }
    };
    for (const auto &A : candidates) {
        if (out.terms.count(A) != 0) {
            continue;
        }
        const auto prev = shifted(A, nd, -1);
        const auto bx = to_x(A);
        const auto bprev = to_x(prev);
        if (!within_cap(bx, cap) || !within_cap(bprev, cap)) {
            continue;
        }
        symbols_at(A);
        const Complex l = op.lhs_symbol(ell) * f.coeff(bx);
        symbols_at(prev);
        const Complex r = op.rhs_symbol(ell) * f.coeff(bprev);
        out.terms[A] = l - r;
        out.max_abs = std::max(out.max_abs, static_cast<Real>(std::abs(l - r)));
    }
    out.input_scale = f.max_abs();
    return out;
}

PfResidual pf_residual_X(const IFunctionSeries &I, const OrbifoldClass &beta)
{
    if (I.side != Space::X) {
        throw DomainError("pf_residual_X needs the X-side I-function");
    }
    const int n = I.n;
    if (beta.n != n || static_cast<int>(beta.beta.size()) != n - 1) {
        throw ShapeError("class does not match the I-function");
    }
    if (beta.sector() != 0) {
        throw DomainError("the Picard-Fuchs operator needs i(beta) = 0");
    }
    std::vector<int> full(static_cast<std::size_t>(n + 1));
    full[0] = beta.beta0_num() / n;
    full[static_cast<std::size_t>(n)] = beta.betan_num() / n;
    for (int k = 1; k < n; ++k) {
        full[static_cast<std::size_t>(k)] = beta.beta[static_cast<std::size_t>(k - 1)];
    }
    int deg = 0;
    for (int v : full) {
        deg += std::max(v, 0);
    }
    if (I.zorder < deg) {
        throw WindowError("z-window " + std::to_string(I.zorder) + " is smaller than the operator order "
                          + std::to_string(deg));
    }
    auto lambda_j = [&](int j) {
        if (j == 0) {
            return I.lambda.l1;
        }
        if (j == n) {
            return I.lambda.l2;
        }
        return Complex(0);
    };
    auto apply = [&](ZLaurent l, std::span<const int> mono, int sign) {
        std::vector<Real> b(mono.begin(), mono.end());
        for (int j = 0; j <= n; ++j) {
            const int count = sign * full[static_cast<std::size_t>(j)];
            const Real ell = GkzOperator::theta_x(n, j, b);
            for (int m = 0; m < count; ++m) {
                l = l.times_linear(lambda_j(j), Complex(ell - Real(m)));
            }
        }
        return l;
    };
    PfResidual r;
    r.checked_top = 1 + deg;
    r.checked_bottom = deg - I.zorder;
    const int cap = I.degree;
    const auto layout = MonomialLayout::get(n - 1, cap);
    std::vector<std::vector<int>> candidates;
    for (std::size_t idx = 0; idx < layout->size(); ++idx) {
        const auto e = layout->exponents(idx);
        candidates.emplace_back(e.begin(), e.end());
        candidates.push_back(shifted(e, beta.beta, +1));
    }
    for (const auto &mono : candidates) {
        if (r.terms.count(mono) != 0) {
            continue;
        }
        const auto prev = shifted(mono, beta.beta, -1);
        if (!within_cap(mono, cap) || !within_cap(prev, cap)) {
            continue;
        }
        for (int c = 0; c < n; ++c) {
            const ZLaurent lhs = apply(I.coefficient(mono, c), mono, +1);
            const ZLaurent rhs = apply(I.coefficient(prev, c), prev, -1);
            record(r, mono, c, n, lhs, rhs);
        }
    }
    return r;
}

PfResidual pf_residual_b(const IFunctionSeries &I)
{
    const auto full = I.with_x0();
    PfResidual r;
    r.checked_top = 1;
    r.checked_bottom = 1 - I.zorder;
    const auto layout = MonomialLayout::get(I.n - 1, I.degree);
    for (std::size_t idx = 0; idx < layout->size(); ++idx) {
        const auto e = layout->exponents(idx);
        const std::vector<int> mono(e.begin(), e.end());
        for (int c = 0; c < I.n; ++c) {
            // [z d/dx0 F]_p = sum_{j>=1} j x0^{j-1} / j! R_{p-1+j}
            ZLaurent lhs(1, static_cast<std::size_t>(I.zorder + 1));
            ZLaurent rhs(1, static_cast<std::size_t>(I.zorder + 1));
            for (int p = 1; p >= r.checked_bottom; --p) {
                Complex s(0);
                Complex w(1);
                for (int j = 1; p - 1 + j <= 1; ++j) {
                    if (j > 1) {
                        w *= I.x0 / Real(j - 1);
                    }
                    s += w * I.rows[static_cast<std::size_t>(2 - p - j)][static_cast<std::size_t>(c)][idx];
                }
                lhs.c[static_cast<std::size_t>(1 - p)] = s;
                rhs.c[static_cast<std::size_t>(1 - p)] = full[static_cast<std::size_t>(1 - p)][static_cast<std::size_t>(c)][idx];
            }
            record(r, mono, c, I.n, lhs, rhs);
        }
    }
    return r;
}

PfResidual pf_residual_Y(const IFunctionSeries &I, std::span<const int> d)
{
    if (I.side != Space::Y) {
        throw DomainError("pf_residual_Y needs the Y-side I-function");
    }
    const IFunctionSeries F = to_basis(I, IBasis::FixedPoint);
    const int n = I.n;
    const GkzOperator op = gkz_operator(n, d);
    const int deg = op.order();
    if (I.zorder < deg) {
        throw WindowError("z-window " + std::to_string(I.zorder) + " is smaller than the operator order "
                          + std::to_string(deg));
    }
    const FixedPointData fp(n, I.lambda);
    PfResidual r;
    r.checked_top = 1 + deg;
    r.checked_bottom = deg - I.zorder;
    const auto layout = MonomialLayout::get(n - 1, I.degree);
    for (std::size_t idx = 0; idx < layout->size(); ++idx) {
        const auto e = layout->exponents(idx);
        const std::vector<int> mono(e.begin(), e.end());
        const auto prev = shifted(mono, d, -1);
        for (int i = 0; i < n; ++i) {
            auto apply = [&](ZLaurent l, std::span<const int> at, int sign) {
                std::vector<Real> a(at.begin(), at.end());
                for (int j = 0; j <= n; ++j) {
                    const int count = sign * op.D[static_cast<std::size_t>(j)];
                    const Real ell = GkzOperator::theta_y(n, j, a);
                    for (int m = 0; m < count; ++m) {
                        l = l.times_linear(fp.omega_restriction(j, i), Complex(ell - Real(m)));
                    }
                }
                return l;
            };
            const ZLaurent lhs = apply(F.coefficient(mono, i), mono, +1);
            const ZLaurent rhs = apply(F.coefficient(prev, i), prev, -1);
            record(r, mono, i, n, lhs, rhs);
        }
    }
    return r;
}

namespace
{

const char *basis_name(IBasis b)
{
    switch (b) {
    case IBasis::Delta:
        return "delta";
    case IBasis::Gamma:
        return "gamma";
    case IBasis::FixedPoint:
        return "fixed_point";
    }
    return "?";
}

} // namespace

nlohmann::json to_json(const IFunctionSeries &I)
{
    nlohmann::json rows = nlohmann::json::array();
    for (int p = 1; p >= -I.zorder; --p) {
        nlohmann::json comps = nlohmann::json::array();
        for (const auto &s : I.row(p)) {
            comps.push_back(to_json(s));
        }
        rows.push_back({{"power", p}, {"components", comps}});
    }
    return {{"side", I.side == Space::X ? "X" : "Y"},
            {"basis", basis_name(I.basis)},
            {"n", I.n},
            {"degree", I.degree},
            {"zorder", I.zorder},
            {"lambda", lambda_json(I.lambda)},
            {"x0", {{"re", static_cast<double>(I.x0.real())}, {"im", static_cast<double>(I.x0.imag())}}},
            {"rows", rows}};
}

nlohmann::json to_json(const MirrorMapY &m)
{
    nlohmann::json g = nlohmann::json::array();
    for (int k = 1; k < m.n; ++k) {
        g.push_back({{"k", k}, {"log_coefficient", k}, {"S", to_json(m.S[static_cast<std::size_t>(k - 1)])}});
    }
    return {{"side", "Y"}, {"n", m.n}, {"degree", m.degree}, {"g", g}};
}

} // namespace crc
