#include "odd/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "odd/errors.hpp"
#include "odd/grammar.hpp"

namespace odd {

void write_matrix_json(std::ostream& os, const LatticeMatrix& a) {
  const Window& w = a.window();
  nlohmann::json diagonals = nlohmann::json::array();
  for (std::size_t s = 0; s < w.offset_count(); ++s) {
    if (!a.has_slot(s)) continue;
    const LatticeIndex m = w.offset(s);
    std::vector<int> offset(m.c.begin(), m.c.begin() + m.dim);
    std::vector<double> re, im;
    for (const cplx& v : a.slot_data(s)) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    diagonals.push_back({{"offset", offset}, {"re", re}, {"im", im}});
  }
  const nlohmann::json j{{"dim", w.dim()}, {"window", w.half_width()}, {"diagonals", diagonals}};
  os << j.dump() << '\n';
}

LatticeMatrix read_matrix_json(std::istream& is) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
  try {
    const int dim = j.at("dim").get<int>();
    const int half = j.at("window").get<int>();
    if (dim != 1 && dim != 2) throw ParseError("matrix JSON: dim must be 1 or 2");
    if (half < 0) throw ParseError("matrix JSON: window must be >= 0");
    const Window w(dim, half);
    std::vector<std::vector<cplx>> slots(w.offset_count());
    for (const auto& d : j.at("diagonals")) {
      const auto offset = d.at("offset").get<std::vector<int>>();
      if (int(offset.size()) != dim) throw ParseError("matrix JSON: offset length must equal dim");
      const LatticeIndex m = dim == 1 ? LatticeIndex::d1(offset[0]) : LatticeIndex::d2(offset[0], offset[1]);
      if (!w.contains_offset(m)) throw ParseError("matrix JSON: offset " + m.to_string() + " outside the window");
      const auto re = d.at("re").get<std::vector<double>>();
      const auto im = d.contains("im") ? d.at("im").get<std::vector<double>>() : std::vector<double>(re.size(), 0.0);
      const std::size_t len = w.diagonal_length(m);
      if (re.size() != len || im.size() != len)
        throw ParseError("matrix JSON: diagonal " + m.to_string() + " needs " + std::to_string(len) + " entries");
      auto& slot = slots[w.slot(m)];
      if (!slot.empty()) throw ParseError("matrix JSON: duplicate diagonal " + m.to_string());
      slot.resize(len);
      for (std::size_t i = 0; i < len; ++i) slot[i] = {re[i], im[i]};
    }
    return LatticeMatrix(w, std::move(slots));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
}

LatticeMatrix read_dense_csv(std::istream& is, int half_width) {
  std::map<std::pair<int, int>, cplx> entries;
  int extent = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (lineno == 1 && std::isalpha(static_cast<unsigned char>(line[0]))) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() < 3 || fields.size() > 4)
      throw ParseError("dense CSV line " + std::to_string(lineno) + ": expected row,col,re,im");
    try {
      for (auto& x : fields) {
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(x.begin());
      }
      const double rd = grammar::parse_number(fields[0]);
      const double cd = grammar::parse_number(fields[1]);
      if (rd != std::floor(rd) || cd != std::floor(cd)) throw ParseError("indices must be integers");
      const int r = int(rd), c = int(cd);
      const double re = grammar::parse_number(fields[2]);
      const double im = fields.size() == 4 ? grammar::parse_number(fields[3]) : 0.0;
      entries[{r, c}] = {re, im};
      extent = std::max({extent, std::abs(r), std::abs(c)});
    } catch (const ParseError& e) {
      throw ParseError("dense CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (half_width < 0) half_width = extent;
  if (extent > half_width) throw ParseError("dense CSV: index outside the requested window");
  const Window w(1, half_width);
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(Eigen::Index(w.size()), Eigen::Index(w.size()));
  for (const auto& [rc, v] : entries)
    dense(Eigen::Index(w.position(LatticeIndex::d1(rc.first))), Eigen::Index(w.position(LatticeIndex::d1(rc.second)))) = v;
  return LatticeMatrix::from_dense(w, dense);
}

void write_dense_csv(std::ostream& os, const LatticeMatrix& a) {
  if (a.dim() != 1) throw InvalidArgument("dense CSV is defined for d = 1 only");
  const int half = a.window().half_width();
  os << "row,col,re,im\n";
  for (int k = -half; k <= half; ++k)
    for (int l = -half; l <= half; ++l) {
      const cplx v = a.at(LatticeIndex::d1(k), LatticeIndex::d1(l));
      os << k << ',' << l << ',' << grammar::format_number(v.real()) << ',' << grammar::format_number(v.imag()) << '\n';
    }
}

LatticeMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? read_dense_csv(in) : read_matrix_json(in);
}

void save_matrix(const std::string& path, const LatticeMatrix& a) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (csv)
    write_dense_csv(out, a);
  else
    write_matrix_json(out, a);
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

}  // namespace odd
