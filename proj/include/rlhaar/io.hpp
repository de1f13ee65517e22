#pragma once

#include <string>

#include "rlhaar/rate_analysis.hpp"

namespace rlhaar::io {

/// Shortest-of-17-significant-digits decimal form ("%.17g", C locale): the
/// bit pattern round-trips through the text exactly.
std::string format_double(double value);

/// Writes to "<path>.tmp" and renames over `path`, so a failure never leaves
/// a partial output file behind.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// Tail-error CSV schema: header "n,mean,std_error,replicas,seed", one row
/// per cut, reals at 17 significant digits.
std::string tail_curve_csv(const RateCurve& curve);

/// Parses the tail-error schema; throws std::invalid_argument on any
/// malformed content.  Only the rows are recovered (metadata travels on the
/// command line).
RateCurve parse_tail_curve_csv(const std::string& content);

}  // namespace rlhaar::io
