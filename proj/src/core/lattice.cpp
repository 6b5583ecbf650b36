#include "odd/lattice.hpp"

#include "odd/errors.hpp"

namespace odd {

std::string LatticeIndex::to_string() const {
  if (dim == 1) return std::to_string(c[0]);
  return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + ")";
}

Window::Window(int dim, int half_width) : dim_(dim), half_(half_width) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("window dimension must be 1 or 2");
  if (half_width < 0) throw InvalidArgument("window half-width must be nonnegative");
  size_ = 1;
  offset_count_ = 1;
  for (int j = 0; j < dim; ++j) {
    size_ *= std::size_t(side());
    offset_count_ *= std::size_t(offset_side());
  }
}

LatticeIndex Window::point(std::size_t pos) const {
  LatticeIndex k = LatticeIndex::zero(dim_);
  for (int j = dim_ - 1; j >= 0; --j) {
    k.c[j] = int(pos % std::size_t(side())) - half_;
    pos /= std::size_t(side());
  }
  return k;
}

LatticeIndex Window::offset(std::size_t slot) const {
  LatticeIndex m = LatticeIndex::zero(dim_);
  for (int j = dim_ - 1; j >= 0; --j) {
    m.c[j] = int(slot % std::size_t(offset_side())) - max_offset();
    slot /= std::size_t(offset_side());
  }
  return m;
}

std::size_t Window::diagonal_length(const LatticeIndex& m) const {
  std::size_t len = 1;
  for (int j = 0; j < dim_; ++j) {
    const int n = side() - std::abs(m.c[j]);
    if (n <= 0) return 0;
    len *= std::size_t(n);
  }
  return len;
}

LatticeIndex Window::diagonal_row(const LatticeIndex& m, std::size_t i) const {
  LatticeIndex k = LatticeIndex::zero(dim_);
  for (int j = dim_ - 1; j >= 0; --j) {
    const std::size_t n = std::size_t(side() - std::abs(m.c[j]));
    k.c[j] = row_lo(m, j) + int(i % n);
    i /= n;
  }
  return k;
}

}  // namespace odd
