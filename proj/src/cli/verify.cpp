#include "odd/verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "odd/approx.hpp"
#include "odd/bessel.hpp"
#include "odd/errors.hpp"
#include "odd/io.hpp"
#include "odd/lab.hpp"
#include "odd/ops.hpp"
#include "odd/quantity.hpp"
#include "odd/smoothness.hpp"

namespace odd::verify {
namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

json matrix_json(const LatticeMatrix& a) {
  std::stringstream ss;
  write_matrix_json(ss, a);
  return json::parse(ss);
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  double unit() { return double(gen_() >> 11) * 0x1.0p-53; }
  Vec point(int dim) {
    Vec t{0.0, 0.0};
    for (int j = 0; j < dim; ++j) t[std::size_t(j)] = unit();
    return t;
  }

 private:
  std::mt19937_64 gen_;
};

json vec_json(const Vec& t, int dim) { return std::vector<double>(t.begin(), t.begin() + dim); }

struct Interval {
  double lo = kInf;
  double hi = 0.0;
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool within(double c) const { return lo >= 1.0 / c && hi <= c; }
  json to_json() const { return json::array({lo, hi}); }
};

void fail(SuiteResult& r, json failure) {
  if (r.passed) r.failure = std::move(failure);
  r.passed = false;
}

std::vector<NormSpec> solid_specs(int dim) {
  std::vector<NormSpec> s{NormSpec::jaffard(0.0),      NormSpec::jaffard(2.0),
                          NormSpec::schur(1.0, 0.0),   NormSpec::schur(2.0, double(dim)),
                          NormSpec::cpr(1.0, 0.0),     NormSpec::cpr(2.0, double(dim)),
                          NormSpec::cpr(1.0, 1.0, true), NormSpec::weighted(NormSpec::jaffard(0.0), WeightSpec::bessel(1.0))};
  return s;
}

using Corpus = std::vector<LatticeMatrix>;
using Suite = std::function<void(const Config&, const Corpus&, Sampler&, SuiteResult&)>;

void leibniz(const Config& cfg, const Corpus& corpus, Sampler& rng, SuiteResult& res) {
  double worst = 0.0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& a = corpus[i];
    const auto& b = corpus[(i + 1) % corpus.size()];
    const auto ab = multiply(a, b);
    for (int n = 0; n < cfg.t_samples; ++n) {
      const Vec t = rng.point(cfg.dim);
      const auto lhs = difference(ab, t, 1);
      const auto rhs = add(multiply(modulate(a, t), difference(b, t, 1)), multiply(difference(a, t, 1), b));
      const double e = max_abs_difference(lhs, rhs);
      worst = std::max(worst, e);
      if (e >= 1e-12)
        fail(res, {{"a", matrix_json(a)}, {"b", matrix_json(b)}, {"t", vec_json(t, cfg.dim)}, {"residual", e}});
    }
  }
  res.metrics["max_residual"] = worst;
}

void quotient(const Config& cfg, const Corpus& corpus, Sampler& rng, SuiteResult& res) {
  double worst = 0.0;
  for (const auto& a : corpus) {
    const auto b = make_invertible(a, 2.0);
    const auto x = invert_finite_section(b);
    for (int n = 0; n < cfg.t_samples; ++n) {
      const Vec t = rng.point(cfg.dim);
      const auto lhs = difference(x, t, 1);
      const auto rhs = scale(multiply(multiply(modulate(x, t), difference(b, t, 1)), x), -1.0);
      const double e = max_abs_difference(lhs, rhs);
      worst = std::max(worst, e);
      if (e >= 1e-10) fail(res, {{"b", matrix_json(b)}, {"t", vec_json(t, cfg.dim)}, {"residual", e}});
    }
  }
  res.metrics["max_residual"] = worst;
}

void group_law(const Config& cfg, const Corpus& corpus, Sampler& rng, SuiteResult& res) {
  double worst = 0.0;
  for (const auto& a : corpus) {
    for (int n = 0; n < cfg.t_samples; ++n) {
      const Vec s = rng.point(cfg.dim);
      const Vec t = rng.point(cfg.dim);
      const Vec st{s[0] + t[0], s[1] + t[1]};
      const double e = max_abs_difference(modulate(modulate(a, s), t), modulate(a, st));
      worst = std::max(worst, e);
      if (e >= 1e-12)
        fail(res, {{"a", matrix_json(a)}, {"s", vec_json(s, cfg.dim)}, {"t", vec_json(t, cfg.dim)}, {"residual", e}});
    }
  }
  res.metrics["max_residual"] = worst;
}

void binomial(const Config& cfg, const Corpus& corpus, Sampler& rng, SuiteResult& res) {
  double worst = 0.0;
  for (const auto& a : corpus) {
    for (int n = 0; n < cfg.t_samples; ++n) {
      const Vec t = rng.point(cfg.dim);
      for (int k = 1; k <= 3; ++k) {
        LatticeMatrix sum(a.window());
        double c = 1.0;  // C(k, j)
        for (int j = 0; j <= k; ++j) {
          const double sign = (k - j) % 2 == 0 ? 1.0 : -1.0;
          sum = add(sum, scale(modulate(a, {j * t[0], j * t[1]}), sign * c));
          c = c * double(k - j) / double(j + 1);
        }
        const double e = max_abs_difference(difference(a, t, k), sum);
        worst = std::max(worst, e);
        if (e >= 1e-12)
          fail(res, {{"a", matrix_json(a)}, {"t", vec_json(t, cfg.dim)}, {"order", k}, {"residual", e}});
      }
    }
  }
  res.metrics["max_residual"] = worst;
}

void bernstein(const Config& cfg, const Corpus& corpus, Sampler&, SuiteResult& res) {
  double worst = 0.0;
  for (const auto& a : corpus) {
    for (const int n : {4, 8, 16}) {
      if (n > a.window().max_offset()) continue;
      const auto t = band_truncate(a, n);
      for (int j = 0; j < cfg.dim; ++j) {
        std::array<int, kMaxDim> alpha{0, 0};
        alpha[std::size_t(j)] = 1;
        const auto d = derivation(t, alpha);
        for (const auto& spec : solid_specs(cfg.dim)) {
          const double ratio = norm(d, spec) / norm(t, spec) / (kTwoPi * n);
          worst = std::max(worst, ratio);
          if (ratio > 1.0 + 1e-12)
            fail(res, {{"a", matrix_json(a)}, {"N", n}, {"axis", j}, {"spec", spec.to_string()}, {"ratio", ratio}});
        }
      }
    }
  }
  res.metrics["max_ratio_over_2piN"] = worst;
}

void solidity(const Config& cfg, const Corpus& corpus, Sampler& rng, SuiteResult& res) {
  std::size_t pairs = 0;
  for (const auto& b : corpus) {
    for (int n = 0; n < cfg.t_samples; ++n) {
      // |A| = u |B| entrywise with u in [0, 1] and exact unit phases.
      std::vector<std::vector<cplx>> slots = b.slots();
      for (auto& d : slots)
        for (cplx& v : d) {
          static const cplx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
          v = v * rng.unit() * phases[std::size_t(rng.unit() * 4.0) % 4];
        }
      const LatticeMatrix a(b.window(), std::move(slots));
      for (const auto& spec : solid_specs(cfg.dim)) {
        ++pairs;
        const double na = norm(a, spec), nb = norm(b, spec);
        if (!(na <= nb)) fail(res, {{"a", matrix_json(a)}, {"b", matrix_json(b)}, {"spec", spec.to_string()}});
      }
    }
    for (const auto& spec : solid_specs(cfg.dim))
      if (norm(abs(b), spec) != norm(b, spec)) fail(res, {{"a", matrix_json(b)}, {"spec", spec.to_string()}, {"check", "abs"}});
  }
  res.metrics["pairs"] = pairs;
}

void isometry(const Config& cfg, const Corpus& corpus, Sampler& rng, SuiteResult& res) {
  double worst = 0.0;
  for (const auto& a : corpus) {
    auto specs = solid_specs(cfg.dim);
    specs.push_back(NormSpec::op());
    std::vector<double> base;
    for (const auto& s : specs) base.push_back(norm(a, s));
    for (int n = 0; n < cfg.t_samples; ++n) {
      const Vec t = rng.point(cfg.dim);
      const auto m = modulate(a, t);
      for (std::size_t i = 0; i < specs.size(); ++i) {
        const double e = std::abs(norm(m, specs[i]) - base[i]) / base[i];
        worst = std::max(worst, e);
        if (e > 1e-12) fail(res, {{"a", matrix_json(a)}, {"t", vec_json(t, cfg.dim)}, {"spec", specs[i].to_string()}});
      }
    }
  }
  res.metrics["max_relative_change"] = worst;
}

void truncation(const Config& cfg, const Corpus& corpus, Sampler& rng, SuiteResult& res) {
  std::size_t trials = 0;
  for (const auto& a : corpus) {
    for (const auto& spec : solid_specs(cfg.dim)) {
      if (!spec.is_diagonal_separable()) continue;
      for (const int n : {1, 2, 4, 8}) {
        const double best = approx_error(a, n, spec);
        for (int k = 0; k < cfg.t_samples; ++k) {
          const auto t = band_truncate(LatticeMatrix::from_function(a.window(),
                                                                    [&](const LatticeIndex& x, const LatticeIndex& y) {
                                                                      return a.at(x, y) + cplx(rng.unit() - 0.5, rng.unit() - 0.5) * 0.1;
                                                                    }),
                                       n);
          ++trials;
          if (norm(subtract(a, t), spec) < best * (1.0 - 1e-12))
            fail(res, {{"a", matrix_json(a)}, {"t", matrix_json(t)}, {"N", n}, {"spec", spec.to_string()}});
        }
      }
    }
  }
  res.metrics["trials"] = trials;
}

void partition(const Config&, const Corpus& corpus, Sampler&, SuiteResult& res) {
  const DyadicPartition part(corpus.front().window());
  const double id = part.identity_residual();
  res.metrics["identity_residual"] = id;
  if (id > 1e-12 || part.value(-1, LatticeIndex::zero(part.window().dim())) != 1.0) fail(res, {{"identity_residual", id}});
  double worst = 0.0;
  for (const auto& a : corpus) {
    LatticeMatrix sum(a.window());
    for (int k = -1; k <= part.top_level(); ++k) {
      const auto& b = part.block(k);
      sum = add(sum, odd::apply(a, Multiplier(b.begin(), b.end())));
    }
    const double e = max_abs_difference(sum, a);
    worst = std::max(worst, e);
    if (e > 1e-12) fail(res, {{"a", matrix_json(a)}, {"reconstruction", e}});
  }
  res.metrics["max_reconstruction_error"] = worst;
}

void submultiplicativity(const Config& cfg, const Corpus& corpus, Sampler&, SuiteResult& res) {
  json per = json::object();
  for (const auto& spec : solid_specs(cfg.dim)) {
    Interval iv;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& a = corpus[i];
      const auto& b = corpus[(i + 1) % corpus.size()];
      const double ratio = norm(multiply(a, b), spec) / (norm(a, spec) * norm(b, spec));
      iv.add(ratio);
      const bool schur_test = spec == NormSpec::schur(1.0, 0.0);
      if ((schur_test && ratio > 1.0 + 1e-12) || ratio > cfg.constant_bound)
        fail(res, {{"a", matrix_json(a)}, {"b", matrix_json(b)}, {"spec", spec.to_string()}, {"ratio", ratio}});
    }
    per[spec.to_string()] = iv.to_json();
  }
  res.metrics["ratio_intervals"] = per;
}

void cpr_schur(const Config& cfg, const Corpus& corpus, Sampler&, SuiteResult& res) {
  Interval iv;
  for (const auto& a : corpus) {
    for (const auto& [p, r] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {2.0, 1.0 * cfg.dim}, {kInf, 2.0}}) {
      const double ratio = schur_norm(a, p, r) / cpr_norm(a, p, r);
      iv.add(ratio);
      if (ratio > cfg.constant_bound) fail(res, {{"a", matrix_json(a)}, {"p", p}, {"r", r}, {"ratio", ratio}});
    }
  }
  res.metrics["schur_over_cpr"] = iv.to_json();
}

const std::vector<std::pair<double, double>> kRp{{0.5, kInf}, {1.5, kInf}, {1.0, 1.0}};

void lp_equivalence(const Config& cfg, const Corpus& corpus, Sampler&, SuiteResult& res) {
  const NormSpec base = NormSpec::jaffard(0.0);
  json per = json::object();
  for (const auto& [r, p] : kRp) {
    Interval iv;
    for (const auto& a : corpus) {
      const double m = besov_norm_modulus(a, BesovSpec{.base = base, .r = r, .p = p});
      const double s = besov_norm_solid_lp(a, base, r, p);
      const double f = besov_norm_phi_lp(a, base, r, p);
      for (const double v : {m / s, m / f, s / f}) iv.add(v);
      if (!iv.within(cfg.constant_bound)) fail(res, {{"a", matrix_json(a)}, {"r", r}, {"p", p}});
    }
    per["r=" + grammar::format_number(r) + ",p=" + grammar::format_number(p)] = iv.to_json();
  }
  res.metrics["ratio_intervals"] = per;
}

void jackson_bernstein(const Config& cfg, const Corpus& corpus, Sampler&, SuiteResult& res) {
  json per = json::object();
  for (const auto& [r, p] : kRp) {
    Interval iv;
    for (const auto& a : corpus) {
      iv.add(jackson_bernstein_ratio(a, NormSpec::jaffard(0.0), r, p));
      if (!iv.within(cfg.constant_bound)) fail(res, {{"a", matrix_json(a)}, {"r", r}, {"p", p}});
    }
    per["r=" + grammar::format_number(r) + ",p=" + grammar::format_number(p)] = iv.to_json();
  }
  res.metrics["ratio_intervals"] = per;
}

void reiteration(const Config& cfg, const Corpus& corpus, Sampler&, SuiteResult& res) {
  Interval iv;
  for (const auto& a : corpus) {
    iv.add(reiteration_ratio(a, NormSpec::jaffard(0.0), 0.5, 0.5, kInf));
    if (!iv.within(cfg.constant_bound)) fail(res, {{"a", matrix_json(a)}});
  }
  res.metrics["ratio_interval"] = iv.to_json();
}

void bessel_exactness(const Config& cfg, const Corpus& corpus, Sampler&, SuiteResult& res) {
  double worst = 0.0;
  for (const double r : {0.5, 1.0, 1.9}) {
    for (const auto& a : corpus) {
      const auto g = bessel_convolve(a, r);
      for (const auto& spec : solid_specs(cfg.dim)) {
        const double x = norm(a, spec);
        const double e = std::abs(bessel_norm(g, r, spec) - x) / x;
        worst = std::max(worst, e);
        if (e > 1e-12) fail(res, {{"a", matrix_json(a)}, {"r", r}, {"spec", spec.to_string()}, {"relative_error", e}});
      }
    }
  }
  double semigroup = 0.0;
  const Window& w = corpus.front().window();
  for (const double r : {0.5, 1.0, 1.9})
    for (const double s : {0.5, 1.0, 1.9}) {
      const auto a = bessel_multiplier(w, r), b = bessel_multiplier(w, s), c = bessel_multiplier(w, r + s);
      for (std::size_t i = 0; i < c.size(); ++i) semigroup = std::max(semigroup, std::abs(a[i] * b[i] - c[i]) / c[i]);
    }
  if (semigroup > 1e-12) fail(res, {{"semigroup_error", semigroup}});
  res.metrics["max_relative_error"] = worst;
  res.metrics["semigroup_error"] = semigroup;
}

void embedding(const Config& cfg, const Corpus& corpus, Sampler&, SuiteResult& res) {
  Interval lower, upper, hyper, smooth;
  bool converged = true;
  for (const auto& a : corpus) {
    const auto rep = embedding_check(a, 0.5, NormSpec::jaffard(0.0));
    lower.add(rep.lower_ratio);
    upper.add(rep.upper_ratio);
    smooth.add(rep.smoothing_ratio);
    converged = converged && rep.hypersingular->converged;
    hyper.add(*rep.hypersingular_ratio);
    if (rep.lower_ratio > cfg.constant_bound || rep.upper_ratio > cfg.constant_bound ||
        !rep.hypersingular->converged || !hyper.within(cfg.constant_bound) || !smooth.within(cfg.constant_bound))
      fail(res, {{"a", matrix_json(a)}, {"r", 0.5}});
  }
  res.metrics["bessel_over_besov1"] = lower.to_json();
  res.metrics["besovinf_over_bessel"] = upper.to_json();
  res.metrics["hypersingular_over_bessel"] = hyper.to_json();
  res.metrics["smoothing_ratio"] = smooth.to_json();
  res.metrics["quadrature_converged"] = converged;
}

void roundtrip(const Config&, const Corpus& corpus, Sampler&, SuiteResult& res) {
  for (const auto& a : corpus) {
    std::stringstream ss;
    write_matrix_json(ss, a);
    if (!(read_matrix_json(ss) == a)) fail(res, {{"a", matrix_json(a)}, {"check", "matrix json"}});
  }
  const std::vector<std::string> specs{"op",
                                       "jaffard:r=2",
                                       "schur:p=1,r=0",
                                       "cpr:p=2,r=1.5",
                                       "cpr:p=inf,r=0.25,literal=1",
                                       "w[bessel:r=1]jaffard:r=0",
                                       "w[poly:r=0.5]w[bessel:r=1]schur:p=2,r=1",
                                       "besov:base=jaffard:r=0,r=1.5,p=inf,method=solidlp",
                                       "besov:base=cpr:p=2,r=1,r=0.5,p=1,method=modulus,k=3,lmax=5,grid=16",
                                       "approx:base=schur:p=1,r=0,r=1,p=2,form=dyadic",
                                       "bessel:base=jaffard:r=0,r=0.5,method=hypersingular"};
  for (const auto& s : specs) {
    const auto q = parse_quantity(s);
    if (!(parse_quantity(to_string(q)) == q)) fail(res, {{"spec", s}, {"check", "grammar"}});
  }
  res.metrics["matrices"] = corpus.size();
  res.metrics["specs"] = specs.size();
}

const std::vector<std::pair<std::string, Suite>>& registry() {
  static const std::vector<std::pair<std::string, Suite>> r{
      {"leibniz", leibniz},
      {"quotient", quotient},
      {"group-law", group_law},
      {"binomial", binomial},
      {"bernstein", bernstein},
      {"solidity", solidity},
      {"isometry", isometry},
      {"truncation", truncation},
      {"partition", partition},
      {"submultiplicativity", submultiplicativity},
      {"cpr-schur", cpr_schur},
      {"lp-equivalence", lp_equivalence},
      {"jackson-bernstein", jackson_bernstein},
      {"reiteration", reiteration},
      {"bessel-exactness", bessel_exactness},
      {"embedding", embedding},
      {"roundtrip", roundtrip},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, _] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const Config& config) {
  if (config.count == 0) throw InvalidArgument("verification corpus is empty");
  if (config.t_samples < 1) throw InvalidArgument("need at least one t sample");
  for (const auto& [n, suite] : registry()) {
    if (n != name) continue;
    const Corpus corpus = decay_corpus(config.dim, config.half_width, config.count, config.seed);
    Sampler rng(config.seed ^ 0x5eedULL);
    SuiteResult res;
    res.name = name;
    suite(config, corpus, rng, res);
    return res;
  }
  throw InvalidArgument("unknown verification suite '" + name + "'");
}

}  // namespace odd::verify
