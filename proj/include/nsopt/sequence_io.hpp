#pragma once

#include <iosfwd>
#include <string>

#include "nsopt/cost.hpp"

namespace nsopt {

// Plain-text sequence files. Quadratic sequences:
//   # kind=quadratic d=<d> box=<lo..hi>
//   t,a,b_1,...,b_d,c
// Piecewise sequences (d=1):
//   # kind=piecewise d=1 box=<lo..hi>
//   t,delta,sign
// Multi-dimensional boxes list per-coordinate bounds separated by ';' inside
// the lo and hi fields.
void save_sequence(const FunctionSequence& seq, std::ostream& out);
void save_sequence(const FunctionSequence& seq, const std::string& path);

FunctionSequence load_sequence(std::istream& in);
FunctionSequence load_sequence(const std::string& path);

} // namespace nsopt
