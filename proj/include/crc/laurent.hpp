#ifndef CRC_LAURENT_HPP
#define CRC_LAURENT_HPP

#include <vector>

#include <crc/config.hpp>

namespace crc
{

// Truncated Laurent expansion at z = infinity:
//   z^top (c_0 + c_1 z^-1 + ... + c_{K-1} z^{-(K-1)}) + O(z^{top-K}).
// Multiplying or dividing by a linear factor w + m z keeps the number of valid
// terms K and moves the window by one power.
struct ZLaurent {
    int top = 0;
    std::vector<Complex> c;

    ZLaurent() = default;
    ZLaurent(int top_power, std::size_t terms) : top(top_power), c(terms, Complex(0))
    {
    }

    int bottom() const
    {
        return top - static_cast<int>(c.size()) + 1;
    }
    // Coefficient of z^p; zero above the top, and below the window.
    Complex at(int p) const
    {
        if (p > top || p < bottom()) {
            return Complex(0);
        }
        return c[static_cast<std::size_t>(top - p)];
    }

    // *this * (w + m z)
    ZLaurent times_linear(Complex w, Complex m) const
    {
        if (m == Complex(0)) {
            ZLaurent r = *this;
            for (auto &v : r.c) {
                v *= w;
            }
            return r;
        }
        ZLaurent r(top + 1, c.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            r.c[k] = m * c[k] + (k > 0 ? w * c[k - 1] : Complex(0));
        }
        return r;
    }

    // *this / (w + m z), m != 0
    ZLaurent over_linear(Complex w, Complex m) const
    {
        ZLaurent r(top - 1, c.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            r.c[k] = (c[k] - (k > 0 ? w * r.c[k - 1] : Complex(0))) / m;
        }
        return r;
    }
};

} // namespace crc

#endif
