#pragma once

#include <string>
#include <string_view>

#include "maxpoly/bounds.hpp"
#include "maxpoly/error.hpp"
#include "maxpoly/leastsq.hpp"
#include "maxpoly/mockcheb.hpp"
#include "maxpoly/nodes.hpp"
#include "maxpoly/remez.hpp"

namespace maxpoly::io {

/// Shortest round-trip decimal form (17 significant digits at most).
std::string format_double(double v);

std::string nodes_csv(const NodeSet& nodes);             // m,x,theta
std::string nodes_json(const NodeSet& nodes);
std::string bounds_json(const BoundReport& report);      // log10 values
std::string witness_json(const Witness& w);
std::string maximal_json(const MaximalResult& r);
std::string maximal_csv(const MaximalResult& r);         // m,local_max,iterations
std::string trace_csv(const RemezTrace& trace);          // iteration,lvalue,violation,exchanges
std::string fit_json(const LsqFit& fit, const ConditionEstimate* kappa = nullptr);
std::string mockcheb_csv(const MockChebSubset& s);       // n,x,z_prev,z_next
/// Diagnostic object {"error": kind, "message": ..., "details": {...}}.
std::string error_json(const NumericalError& e);
std::string error_json(std::string_view kind, std::string_view message);

/// Writes `content` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, std::string_view content);

}  // namespace maxpoly::io
