#ifndef CRC_SPECIAL_HPP
#define CRC_SPECIAL_HPP

#include <crc/config.hpp>

namespace crc
{

// 1/Gamma(s), computed directly so that the poles of Gamma come out as exact zeros.
Real reciprocal_gamma(Real s);

// sin(pi s) with argument reduction; exact zero at integers.
Real sin_pi(Real s);

} // namespace crc

#endif
