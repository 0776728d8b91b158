#include <crc/series.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace crc
{

namespace
{

void append_compositions(int remaining, int slot, int nvars, std::vector<int> &cur, std::vector<int> &out)
{
    if (slot == nvars - 1) {
        cur[static_cast<std::size_t>(slot)] = remaining;
        out.insert(out.end(), cur.begin(), cur.end());
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[static_cast<std::size_t>(slot)] = v;
        append_compositions(remaining - v, slot + 1, nvars, cur, out);
    }
}

constexpr std::uint64_t dense_limit = std::uint64_t(1) << 22;

} // namespace

MonomialLayout::MonomialLayout(int nvars, int cap) : nvars_(nvars), cap_(cap), base_(static_cast<std::uint64_t>(cap) + 1)
{
    if (nvars < 0 || cap < 0) {
        throw ShapeError("series layout needs nvars >= 0 and cap >= 0");
    }
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    for (int t = 0; t <= cap; ++t) {
        if (nvars == 0) {
            if (t == 0) {
                totals_.push_back(0);
            }
        } else {
            const auto before = exps_.size() / static_cast<std::size_t>(nvars);
            append_compositions(t, 0, nvars, cur, exps_);
            const auto after = exps_.size() / static_cast<std::size_t>(nvars);
            totals_.insert(totals_.end(), after - before, t);
        }
        degree_end_.push_back(totals_.size());
    }
    keys_.resize(totals_.size());
    for (std::size_t i = 0; i < totals_.size(); ++i) {
        keys_[i] = key_of(exponents(i));
    }

    // Dense lookup when the key space is small enough, hashed otherwise.
    std::uint64_t space = 1;
    bool fits = true;
    for (int k = 0; k < nvars && fits; ++k) {
        space *= base_;
        fits = space <= dense_limit;
    }
    if (fits) {
        dense_.assign(static_cast<std::size_t>(space), -1);
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            dense_[static_cast<std::size_t>(keys_[i])] = static_cast<std::int32_t>(i);
        }
    } else {
        sparse_.reserve(keys_.size());
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            sparse_.emplace(keys_[i], static_cast<std::int32_t>(i));
        }
    }
}

std::shared_ptr<const MonomialLayout> MonomialLayout::get(int nvars, int cap)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialLayout>> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[{nvars, cap}];
    if (!slot) {
        slot = std::make_shared<const MonomialLayout>(nvars, cap);
    }
    return slot;
}

std::size_t MonomialLayout::count_upto(int d) const
{
    if (d < 0) {
        return 0;
    }
    return degree_end_[static_cast<std::size_t>(std::min(d, cap_))];
}

std::uint64_t MonomialLayout::key_of(std::span<const int> e) const
{
    std::uint64_t key = 0;
    std::uint64_t scale = 1;
    for (int v : e) {
        key += static_cast<std::uint64_t>(v) * scale;
        scale *= base_;
    }
    return key;
}

long MonomialLayout::index_of_key(std::uint64_t key) const
{
    if (!dense_.empty()) {
        return key < dense_.size() ? dense_[static_cast<std::size_t>(key)] : -1;
    }
    auto it = sparse_.find(key);
    return it == sparse_.end() ? -1 : it->second;
}

long MonomialLayout::index_of(std::span<const int> e) const
{
    if (static_cast<int>(e.size()) != nvars_) {
        throw ShapeError("exponent vector length does not match series variables");
    }
    int t = 0;
    for (int v : e) {
        if (v < 0) {
            return -1;
        }
        t += v;
    }
    if (t > cap_) {
        return -1;
    }
    return index_of_key(key_of(e));
}

TruncatedSeries::TruncatedSeries(int nvars, int cap)
    : layout_(MonomialLayout::get(nvars, cap)), coeffs_(layout_->size(), Complex(0))
{
}

TruncatedSeries TruncatedSeries::constant(int nvars, int cap, Complex c)
{
    TruncatedSeries s(nvars, cap);
    s.coeffs_[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::variable(int nvars, int cap, int k)
{
    if (k < 0 || k >= nvars) {
        throw ShapeError("variable index out of range");
    }
    TruncatedSeries s(nvars, cap);
    if (cap >= 1) {
        std::vector<int> e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(k)] = 1;
        s.set_coeff(e, Complex(1));
    }
    return s;
}

TruncatedSeries TruncatedSeries::monomial(int nvars, int cap, std::span<const int> e, Complex c)
{
    TruncatedSeries s(nvars, cap);
    s.add_coeff(e, c);
    return s;
}

Complex TruncatedSeries::coeff(std::span<const int> e) const
{
    const long idx = layout_->index_of(e);
    return idx < 0 ? Complex(0) : coeffs_[static_cast<std::size_t>(idx)];
}

void TruncatedSeries::set_coeff(std::span<const int> e, Complex c)
{
    const long idx = layout_->index_of(e);
    if (idx >= 0) {
        coeffs_[static_cast<std::size_t>(idx)] = c;
    }
}

void TruncatedSeries::add_coeff(std::span<const int> e, Complex c)
{
    const long idx = layout_->index_of(e);
    if (idx >= 0) {
        coeffs_[static_cast<std::size_t>(idx)] += c;
    }
}

TruncatedSeries &TruncatedSeries::operator+=(const TruncatedSeries &other)
{
    if (!same_shape(other)) {
        throw ShapeError("series shapes differ in addition");
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += other.coeffs_[i];
    }
    return *this;
}

TruncatedSeries &TruncatedSeries::operator-=(const TruncatedSeries &other)
{
    if (!same_shape(other)) {
        throw ShapeError("series shapes differ in subtraction");
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= other.coeffs_[i];
    }
    return *this;
}

TruncatedSeries &TruncatedSeries::operator*=(const TruncatedSeries &other)
{
    *this = *this * other;
    return *this;
}

TruncatedSeries &TruncatedSeries::operator*=(Complex c)
{
    for (auto &v : coeffs_) {
        v *= c;
    }
    return *this;
}

TruncatedSeries TruncatedSeries::operator-() const
{
    TruncatedSeries r = *this;
    for (auto &v : r.coeffs_) {
        v = -v;
    }
    return r;
}

TruncatedSeries TruncatedSeries::euler(int k) const
{
    TruncatedSeries r = *this;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
        r.coeffs_[i] *= Real(layout_->exponents(i)[static_cast<std::size_t>(k)]);
    }
    return r;
}

TruncatedSeries TruncatedSeries::derivative(int k) const
{
    TruncatedSeries r(nvars(), degree_cap());
    std::vector<int> e(static_cast<std::size_t>(nvars()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        auto src = layout_->exponents(i);
        const int p = src[static_cast<std::size_t>(k)];
        if (p == 0 || coeffs_[i] == Complex(0)) {
            continue;
        }
        std::copy(src.begin(), src.end(), e.begin());
        e[static_cast<std::size_t>(k)] -= 1;
        r.add_coeff(e, coeffs_[i] * Real(p));
    }
    return r;
}

TruncatedSeries TruncatedSeries::truncated(int d) const
{
    TruncatedSeries r = *this;
    for (std::size_t i = layout_->count_upto(d); i < r.coeffs_.size(); ++i) {
        r.coeffs_[i] = Complex(0);
    }
    return r;
}

TruncatedSeries TruncatedSeries::with_cap(int cap) const
{
    TruncatedSeries r(nvars(), cap);
    const std::size_t m = std::min(r.size(), size());
    // Both layouts share the graded prefix up to the smaller cap.
    for (std::size_t i = 0; i < m; ++i) {
        r.coeffs_[i] = coeffs_[i];
    }
    return r;
}

Complex TruncatedSeries::evaluate(std::span<const Complex> point) const
{
    if (static_cast<int>(point.size()) != nvars()) {
        throw ShapeError("evaluation point has wrong dimension");
    }
    const int cap = degree_cap();
    std::vector<Complex> powers(point.size() * static_cast<std::size_t>(cap + 1));
    for (std::size_t k = 0; k < point.size(); ++k) {
        Complex p(1);
        for (int d = 0; d <= cap; ++d) {
            powers[k * static_cast<std::size_t>(cap + 1) + static_cast<std::size_t>(d)] = p;
            p *= point[k];
        }
    }
    Complex sum(0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == Complex(0)) {
            continue;
        }
        Complex term = coeffs_[i];
        auto e = layout_->exponents(i);
        for (std::size_t k = 0; k < e.size(); ++k) {
            term *= powers[k * static_cast<std::size_t>(cap + 1) + static_cast<std::size_t>(e[k])];
        }
        sum += term;
    }
    return sum;
}

std::vector<Complex> TruncatedSeries::restrict_diagonal() const
{
    std::vector<Complex> out(static_cast<std::size_t>(degree_cap() + 1), Complex(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[static_cast<std::size_t>(layout_->total(i))] += coeffs_[i];
    }
    return out;
}

Real TruncatedSeries::max_abs() const
{
    Real m = 0;
    for (const auto &c : coeffs_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

Real TruncatedSeries::degree_magnitude(int d, std::span<const Complex> point) const
{
    Real sum = 0;
    const std::size_t lo = layout_->count_upto(d - 1);
    const std::size_t hi = layout_->count_upto(d);
    if (d > degree_cap()) {
        return 0;
    }
    for (std::size_t i = lo; i < hi; ++i) {
        Real term = std::abs(coeffs_[i]);
        auto e = layout_->exponents(i);
        for (std::size_t k = 0; k < e.size(); ++k) {
            term *= std::pow(std::abs(point[k]), Real(e[k]));
        }
        sum += term;
    }
    return sum;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b)
{
    a += b;
    return a;
}

TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b)
{
    a -= b;
    return a;
}

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return multiply(a, b, a.degree_cap());
}

TruncatedSeries operator*(TruncatedSeries a, Complex c)
{
    a *= c;
    return a;
}

TruncatedSeries operator*(Complex c, TruncatedSeries a)
{
    a *= c;
    return a;
}

TruncatedSeries multiply(const TruncatedSeries &a, const TruncatedSeries &b, int limit)
{
    if (!a.same_shape(b)) {
        throw ShapeError("series shapes differ in multiplication");
    }
    const auto &lay = a.layout();
    TruncatedSeries r(a.nvars(), a.degree_cap());
    limit = std::min(limit, a.degree_cap());
    const std::size_t na = lay.count_upto(limit);
    for (std::size_t i = 0; i < na; ++i) {
        const Complex ca = a[i];
        if (ca == Complex(0)) {
            continue;
        }
        const std::uint64_t ka = lay.key(i);
        const std::size_t nb = lay.count_upto(limit - lay.total(i));
        for (std::size_t j = 0; j < nb; ++j) {
            const Complex cb = b[j];
            if (cb == Complex(0)) {
                continue;
            }
            // Keys are additive while every digit stays within the cap.
            const long idx = lay.index_of_key(ka + lay.key(j));
            r[static_cast<std::size_t>(idx)] += ca * cb;
        }
    }
    return r;
}

namespace
{

struct Term {
    std::span<const int> exps;
    Complex c;
};

// Horner evaluation of `terms` (exponents in variables var..end) at the inner
// series, keeping only degrees <= limit.
TruncatedSeries compose_rec(std::vector<Term> &terms, std::size_t var, std::span<const TruncatedSeries> inner,
                            int limit)
{
    const TruncatedSeries &proto = inner.front();
    TruncatedSeries acc(proto.nvars(), proto.degree_cap());
    if (terms.empty() || limit < 0) {
        return acc;
    }
    if (var == inner.size()) {
        Complex sum(0);
        for (const auto &t : terms) {
            sum += t.c;
        }
        acc[0] = sum;
        return acc;
    }
    int top = 0;
    for (const auto &t : terms) {
        top = std::max(top, t.exps[var]);
    }
    top = std::min(top, limit);
    std::vector<std::vector<Term>> groups(static_cast<std::size_t>(top + 1));
    for (const auto &t : terms) {
        if (t.exps[var] <= top) {
            groups[static_cast<std::size_t>(t.exps[var])].push_back(t);
        }
    }
    acc = compose_rec(groups[static_cast<std::size_t>(top)], var + 1, inner, limit - top);
    for (int e = top - 1; e >= 0; --e) {
        acc = multiply(acc, inner[var], limit - e);
        acc += compose_rec(groups[static_cast<std::size_t>(e)], var + 1, inner, limit - e);
    }
    return acc.truncated(limit);
}

} // namespace

TruncatedSeries compose(const TruncatedSeries &outer, std::span<const TruncatedSeries> inner)
{
    if (static_cast<int>(inner.size()) != outer.nvars()) {
        throw ShapeError("compose: number of inner series must equal outer variable count");
    }
    if (inner.empty()) {
        throw ShapeError("compose: no inner series");
    }
    for (const auto &s : inner) {
        if (!s.same_shape(inner.front())) {
            throw ShapeError("compose: inner series shapes differ");
        }
        if (s.constant_term() != Complex(0)) {
            throw DomainError("compose: inner series must have zero constant term");
        }
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < outer.size(); ++i) {
        if (outer[i] != Complex(0)) {
            terms.push_back({outer.layout().exponents(i), outer[i]});
        }
    }
    return compose_rec(terms, 0, inner, inner.front().degree_cap());
}

std::vector<TruncatedSeries> reverse(std::span<const TruncatedSeries> maps)
{
    const std::size_t m = maps.size();
    if (m == 0) {
        throw ShapeError("reverse: empty map");
    }
    const int nv = maps.front().nvars();
    const int cap = maps.front().degree_cap();
    if (static_cast<std::size_t>(nv) != m) {
        throw ShapeError("reverse: need as many series as variables");
    }
    constexpr Real tol = 1e-12;
    // Linear part J with J[i][k] = d maps_i / d x_k at 0.
    std::vector<std::vector<Complex>> jac(m, std::vector<Complex>(m));
    std::vector<int> e(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (!maps[i].same_shape(maps.front())) {
            throw ShapeError("reverse: series shapes differ");
        }
        if (std::abs(maps[i].constant_term()) > tol) {
            throw DomainError("reverse: map has a nonzero constant term");
        }
        for (std::size_t k = 0; k < m; ++k) {
            e[k] = 1;
            jac[i][k] = maps[i].coeff(e);
            e[k] = 0;
        }
    }
    bool lower = true;
    bool upper = true;
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(jac[i][i] - Complex(1)) > tol) {
            lower = upper = false;
        }
        for (std::size_t k = 0; k < m; ++k) {
            if (k > i && std::abs(jac[i][k]) > tol) {
                lower = false;
            }
            if (k < i && std::abs(jac[i][k]) > tol) {
                upper = false;
            }
        }
    }
    if (!lower && !upper) {
        throw DomainError("reverse: Jacobian at the origin is not unit triangular");
    }

    // Nonlinear parts N_i = maps_i - (J x)_i.
    std::vector<TruncatedSeries> nonlinear(maps.begin(), maps.end());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            e[k] = 1;
            nonlinear[i].set_coeff(e, Complex(0));
            e[k] = 0;
        }
    }

    auto solve_linear = [&](std::vector<TruncatedSeries> rhs) {
        // Forward or back substitution with the unit-triangular J.
        std::vector<TruncatedSeries> x(m);
        if (lower) {
            for (std::size_t i = 0; i < m; ++i) {
                x[i] = rhs[i];
                for (std::size_t k = 0; k < i; ++k) {
                    x[i] -= jac[i][k] * x[k];
                }
            }
        } else {
            for (std::size_t ii = m; ii-- > 0;) {
                x[ii] = rhs[ii];
                for (std::size_t k = ii + 1; k < m; ++k) {
                    x[ii] -= jac[ii][k] * x[k];
                }
            }
        }
        return x;
    };

    std::vector<TruncatedSeries> ids;
    for (int k = 0; k < nv; ++k) {
        ids.push_back(TruncatedSeries::variable(nv, cap, k));
    }
    // Fixed point x = J^{-1}(u - N(x)); each sweep fixes one more degree.
    std::vector<TruncatedSeries> x = solve_linear(ids);
    for (int sweep = 1; sweep < cap; ++sweep) {
        std::vector<TruncatedSeries> rhs = ids;
        for (std::size_t i = 0; i < m; ++i) {
            rhs[i] -= compose(nonlinear[i], x).truncated(sweep + 1);
        }
        x = solve_linear(std::move(rhs));
    }
    return x;
}

TruncatedSeries exp(const TruncatedSeries &s)
{
    const Complex c0 = s.constant_term();
    TruncatedSeries t = s;
    t[0] = Complex(0);
    TruncatedSeries result = TruncatedSeries::constant(s.nvars(), s.degree_cap(), Complex(1));
    TruncatedSeries power = result;
    for (int m = 1; m <= s.degree_cap(); ++m) {
        power = power * t;
        power *= Complex(Real(1) / Real(m));
        result += power;
    }
    result *= std::exp(c0);
    return result;
}

nlohmann::json to_json(const TruncatedSeries &s)
{
    nlohmann::json terms = nlohmann::json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == Complex(0)) {
            continue;
        }
        auto e = s.layout().exponents(i);
        terms.push_back({{"exps", std::vector<int>(e.begin(), e.end())},
                         {"re", static_cast<double>(s[i].real())},
                         {"im", static_cast<double>(s[i].imag())}});
    }
    return {{"nvars", s.nvars()}, {"degree_cap", s.degree_cap()}, {"terms", terms}};
}

TruncatedSeries series_from_json(const nlohmann::json &j)
{
    TruncatedSeries s(j.at("nvars").get<int>(), j.at("degree_cap").get<int>());
    for (const auto &t : j.at("terms")) {
        const auto e = t.at("exps").get<std::vector<int>>();
        if (static_cast<int>(e.size()) != s.nvars()) {
            throw ShapeError("series JSON: exponent length mismatch");
        }
        if (total_degree(e) > s.degree_cap()) {
            throw ShapeError("series JSON: term above degree cap");
        }
        s.add_coeff(e, Complex(t.at("re").get<double>(), t.at("im").get<double>()));
    }
    return s;
}

} // namespace crc
