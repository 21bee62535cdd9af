#pragma once

#include <cstddef>
#include <cstdint>

#include <boost/rational.hpp>

namespace mereoml {

/// 0-based row index into an information system.
using ObjectId = std::uint32_t;

/// Containment degree in [0, 1].
using Degree = double;

/// Exact degree for counts-over-counts quantities.
using Rational = boost::rational<std::int64_t>;

/// Tolerance used by every "holds to degree r" test on floating degrees.
inline constexpr double kDegreeTolerance = 1e-9;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

}  // namespace mereoml
