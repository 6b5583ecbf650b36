#pragma once

#include <iosfwd>
#include <string>

#include "odd/lattice_matrix.hpp"

namespace odd {

/// {"dim": d, "window": W, "diagonals": [{"offset": [m...], "re": [...], "im": [...]}]}
/// Only stored diagonals are written; doubles use shortest round-trip form.
void write_matrix_json(std::ostream& os, const LatticeMatrix& a);
/// Throws ParseError on malformed input or inconsistent diagonal lengths.
LatticeMatrix read_matrix_json(std::istream& is);

/// Dense CSV for d = 1: lines "row,col,re,im" in lattice coordinates (an
/// optional header line starting with a letter is skipped). Missing entries are
/// zero. With half_width < 0 the window is the smallest one holding every index.
LatticeMatrix read_dense_csv(std::istream& is, int half_width = -1);
/// Writes every window entry (zeros included) in the same layout, with header.
void write_dense_csv(std::ostream& os, const LatticeMatrix& a);

/// Dispatch on extension: ".csv" reads dense CSV, anything else matrix JSON.
LatticeMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const LatticeMatrix& a);

}  // namespace odd
