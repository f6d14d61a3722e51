#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ipsim {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

} // namespace ipsim
