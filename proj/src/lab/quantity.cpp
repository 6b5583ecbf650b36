#include "odd/quantity.hpp"

#include "odd/grammar.hpp"

namespace odd {

QuantitySpec parse_quantity(const std::string& text) {
  const grammar::Cursor probe(text);
  const std::string kind = probe.peek_identifier();
  if (kind == "besov") return parse_besov_spec(text);
  if (kind == "approx") return parse_approx_spec(text);
  if (kind == "bessel") return parse_bessel_spec(text);
  return parse_norm_spec(text);
}

std::string to_string(const QuantitySpec& spec) {
  return std::visit([](const auto& s) { return s.to_string(); }, spec);
}

double evaluate_quantity(const LatticeMatrix& a, const QuantitySpec& spec) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NormSpec>) {
          return norm(a, s);
        } else if constexpr (std::is_same_v<T, BesovSpec>) {
          return besov_norm(a, s);
        } else if constexpr (std::is_same_v<T, ApproxSpaceSpec>) {
          return approx_space_norm(a, s);
        } else {
          if (s.method == BesselSpec::Method::Weighted) return bessel_norm(a, s.r, s.base);
          return hypersingular_norm_checked(a, s.r, s.base);
        }
      },
      spec);
}

}  // namespace odd
