#ifndef CRC_LINALG_HPP
#define CRC_LINALG_HPP

#include <Eigen/Dense>

#include <crc/config.hpp>

namespace crc
{

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

} // namespace crc

#endif
