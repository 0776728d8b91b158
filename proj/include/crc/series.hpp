#ifndef CRC_SERIES_HPP
#define CRC_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include <crc/config.hpp>

namespace crc
{

using MultiIndex = std::vector<int>;

inline int total_degree(std::span<const int> e)
{
    int t = 0;
    for (int v : e) {
        t += v;
    }
    return t;
}

// Enumeration of all monomials in `nvars` variables with total degree <= cap,
// in graded-lex order: ascending total degree, then lexicographically
// descending exponent vectors (x1^2 before x1 x2 before x2^2).
//
// Layouts are immutable and shared between all series of the same shape.
class MonomialLayout
{
public:
    static std::shared_ptr<const MonomialLayout> get(int nvars, int cap);

    int nvars() const
    {
        return nvars_;
    }
    int cap() const
    {
        return cap_;
    }
    std::size_t size() const
    {
        return totals_.size();
    }
    std::span<const int> exponents(std::size_t idx) const
    {
        return {exps_.data() + idx * static_cast<std::size_t>(nvars_), static_cast<std::size_t>(nvars_)};
    }
    int total(std::size_t idx) const
    {
        return totals_[idx];
    }
    std::uint64_t key(std::size_t idx) const
    {
        return keys_[idx];
    }
    // Number of monomials with total degree <= d.
    std::size_t count_upto(int d) const;

    // -1 when the exponent vector has a negative entry or exceeds the cap.
    long index_of(std::span<const int> e) const;
    long index_of_key(std::uint64_t key) const;
    std::uint64_t key_of(std::span<const int> e) const;

    MonomialLayout(int nvars, int cap);

private:
    int nvars_;
    int cap_;
    std::uint64_t base_;
    std::vector<int> exps_;
    std::vector<int> totals_;
    std::vector<std::uint64_t> keys_;
    std::vector<std::size_t> degree_end_;
    std::vector<std::int32_t> dense_;
    std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

// Dense multivariate power series over Complex, truncated at total degree cap.
// Arithmetic is closed under the cap: anything above it is dropped.
class TruncatedSeries
{
public:
    TruncatedSeries() = default;
    TruncatedSeries(int nvars, int cap);

    static TruncatedSeries constant(int nvars, int cap, Complex c);
    // The coordinate function x_k, k zero-based.
    static TruncatedSeries variable(int nvars, int cap, int k);
    static TruncatedSeries monomial(int nvars, int cap, std::span<const int> e, Complex c);

    int nvars() const
    {
        return layout_->nvars();
    }
    int degree_cap() const
    {
        return layout_->cap();
    }
    const MonomialLayout &layout() const
    {
        return *layout_;
    }
    std::size_t size() const
    {
        return coeffs_.size();
    }
    std::span<const Complex> coeffs() const
    {
        return coeffs_;
    }

    Complex &operator[](std::size_t idx)
    {
        return coeffs_[idx];
    }
    const Complex &operator[](std::size_t idx) const
    {
        return coeffs_[idx];
    }

    // Zero for keys above the cap or with negative entries.
    Complex coeff(std::span<const int> e) const;
    void set_coeff(std::span<const int> e, Complex c);
    void add_coeff(std::span<const int> e, Complex c);

    Complex constant_term() const
    {
        return coeffs_.front();
    }
    bool same_shape(const TruncatedSeries &other) const
    {
        return layout_ == other.layout_;
    }

    TruncatedSeries &operator+=(const TruncatedSeries &other);
    TruncatedSeries &operator-=(const TruncatedSeries &other);
    TruncatedSeries &operator*=(const TruncatedSeries &other);
    TruncatedSeries &operator*=(Complex c);
    TruncatedSeries operator-() const;

    // x_k d/dx_k; exact on every stored coefficient.
    TruncatedSeries euler(int k) const;
    // d/dx_k; the top-degree part of the result is incomplete.
    TruncatedSeries derivative(int k) const;
    // Zero every coefficient above degree d (shape unchanged).
    TruncatedSeries truncated(int d) const;
    // Same coefficients re-laid-out at another cap (dropping what does not fit).
    TruncatedSeries with_cap(int cap) const;

    Complex evaluate(std::span<const Complex> point) const;
    // Coefficients of s(q, q, ..., q) as a univariate series.
    std::vector<Complex> restrict_diagonal() const;

    Real max_abs() const;
    // Sum of |c| |x^e| over the monomials of total degree d.
    Real degree_magnitude(int d, std::span<const Complex> point) const;

private:
    std::shared_ptr<const MonomialLayout> layout_;
    std::vector<Complex> coeffs_;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b);
TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
TruncatedSeries operator*(TruncatedSeries a, Complex c);
TruncatedSeries operator*(Complex c, TruncatedSeries a);

// Product keeping only the terms of total degree <= limit.
TruncatedSeries multiply(const TruncatedSeries &a, const TruncatedSeries &b, int limit);

// outer(inner_1, ..., inner_m) truncated at the inner series' cap. Every inner
// series must have zero constant term and share one shape.
TruncatedSeries compose(const TruncatedSeries &outer, std::span<const TruncatedSeries> inner);

// Formal inverse of the map u = maps(x). The linear part must be unit
// triangular; the result x(u) satisfies compose(maps_i, x(u)) = u_i to the cap.
std::vector<TruncatedSeries> reverse(std::span<const TruncatedSeries> maps);

TruncatedSeries exp(const TruncatedSeries &s);

nlohmann::json to_json(const TruncatedSeries &s);
TruncatedSeries series_from_json(const nlohmann::json &j);

} // namespace crc

#endif
