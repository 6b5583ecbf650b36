#pragma once

#include <string>
#include <variant>

#include "odd/approx.hpp"
#include "odd/bessel.hpp"
#include "odd/norms.hpp"
#include "odd/smoothness.hpp"

namespace odd {

/// Any scalar the toolkit computes from a single matrix.
using QuantitySpec = std::variant<NormSpec, BesovSpec, ApproxSpaceSpec, BesselSpec>;

/// Dispatches on the leading keyword: besov:, approx:, bessel:, otherwise a norm spec.
QuantitySpec parse_quantity(const std::string& text);
std::string to_string(const QuantitySpec& spec);

/// Throws NonConvergence when a hypersingular Bessel evaluation does not stabilize.
double evaluate_quantity(const LatticeMatrix& a, const QuantitySpec& spec);

}  // namespace odd
