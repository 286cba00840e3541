#include "rank1/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rank1/complete.hpp"
#include "rank1/decide.hpp"
#include "rank1/error.hpp"
#include "rank1/io.hpp"
#include "rank1/optimize.hpp"
#include "rank1/semialg.hpp"
#include "rank1/tensor.hpp"

namespace rank1 {

namespace {

using nlohmann::json;

NumericPolicy default_policy() {
  NumericPolicy p;
  if (const char* env = std::getenv("RANK1_PRECISION_CAP")) {
    try {
      long bits = std::stol(env);
      if (bits >= 64) p.cap_bits = static_cast<unsigned>(bits);
    } catch (const std::exception&) {
      // A malformed value leaves the built-in cap in place.
    }
  }
  return p;
}

std::string real_string(const Real& x, int digits) {
  if (x.is_exact()) return to_string(*x.exact());
  return x.enclosure().certified_decimal(digits);
}

json interval_json(const AlgebraicInterval& iv) {
  return {{"lower", iv.lower_double()}, {"upper", iv.upper_double()}, {"decimal", iv.certified_decimal()}};
}

json vector_json(const std::vector<Real>& v, int digits) {
  json a = json::array();
  for (const auto& x : v) a.push_back(real_string(x, digits));
  return a;
}

json completion_json(const RankOneFactorization& f, int digits) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.u.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < f.v.size(); ++j) row.push_back(real_string(f.entry(i, j), digits));
    rows.push_back(row);
  }
  return {{"u", vector_json(f.u, digits)}, {"v", vector_json(f.v, digits)}, {"matrix", rows}};
}

json positions_json(const std::vector<Position>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back({p.row, p.col});
  return a;
}

json evidence_json(const Certificate& c, int digits) {
  json e = {{"kind", c.evidence_kind()}};
  std::visit(
      [&](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, Witness>) {
          if (!ev.tensor_factors.empty()) {
            json fs = json::array();
            for (const auto& f : ev.tensor_factors) fs.push_back(vector_json(f, digits));
            e["factors"] = fs;
          } else {
            e["completion"] = completion_json(ev.factorization, digits);
          }
        } else if constexpr (std::is_same_v<T, CycleViolation>) {
          e["cycle"] = positions_json(ev.cycle.edges);
          e["lhs"] = to_string(ev.lhs);
          e["rhs"] = to_string(ev.rhs);
        } else if constexpr (std::is_same_v<T, ThreeLineViolation>) {
          e["positions"] = positions_json({ev.positions.begin(), ev.positions.end()});
        } else if constexpr (std::is_same_v<T, NormExcess>) {
          e["sqrt_sum"] = interval_json(ev.sqrt_sum);
        } else if constexpr (std::is_same_v<T, SumNotOne>) {
          e["total"] = to_string(ev.total);
        } else if constexpr (std::is_same_v<T, PolynomialNoRoot>) {
          json cs = json::array();
          for (const auto& q : ev.coefficients) cs.push_back(to_string(q));
          e["coefficients"] = cs;
          e["lower"] = to_string(ev.lower);
          e["upper"] = to_string(ev.upper);
        }
      },
      c.evidence());
  return e;
}

void print_matrix(std::ostream& out, const RankOneFactorization& f, int digits, const std::string& indent = "  ") {
  for (std::size_t i = 0; i < f.u.size(); ++i) {
    out << indent;
    for (std::size_t j = 0; j < f.v.size(); ++j) out << (j ? "  " : "") << real_string(f.entry(i, j), digits);
    out << '\n';
  }
}

void print_evidence(std::ostream& out, const Certificate& c, int digits) {
  out << "evidence: " << c.evidence_kind() << '\n';
  std::visit(
      [&](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, Witness>) {
          if (!ev.tensor_factors.empty()) {
            for (std::size_t k = 0; k < ev.tensor_factors.size(); ++k) {
              out << "factor " << k + 1 << ':';
              for (const auto& x : ev.tensor_factors[k]) out << ' ' << real_string(x, digits);
              out << '\n';
            }
          } else {
            out << "completion:\n";
            print_matrix(out, ev.factorization, digits);
          }
        } else if constexpr (std::is_same_v<T, CycleViolation>) {
          out << "cycle:";
          for (const auto& p : ev.cycle.edges) out << " (" << p.row << ',' << p.col << ')';
          out << "\nproducts: " << to_string(ev.lhs) << " vs " << to_string(ev.rhs) << '\n';
        } else if constexpr (std::is_same_v<T, ThreeLineViolation>) {
          out << "positions:";
          for (const auto& p : ev.positions) out << " (" << p.row << ',' << p.col << ')';
          out << '\n';
        } else if constexpr (std::is_same_v<T, NormExcess>) {
          out << "sqrt sum: " << ev.sqrt_sum.certified_decimal() << " in [" << std::setprecision(17)
              << ev.sqrt_sum.lower_double() << ", " << ev.sqrt_sum.upper_double() << "]\n";
        } else if constexpr (std::is_same_v<T, SumNotOne>) {
          out << "total: " << to_string(ev.total) << '\n';
        } else if constexpr (std::is_same_v<T, PolynomialNoRoot>) {
          out << "polynomial (constant term first):";
          for (const auto& q : ev.coefficients) out << ' ' << to_string(q);
          out << "\nno root in (" << to_string(ev.lower) << ", " << to_string(ev.upper) << "]\n";
        }
      },
      c.evidence());
}

int exit_code(const Certificate& c) { return c.completable() ? kExitCompletable : kExitNotCompletable; }

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw Error(ErrorCode::Parse, "empty value list");
  return out;
}

Eigen::MatrixXd read_target(const std::string& path, const PartialMatrix& m) {
  PartialMatrix t = read_instance_file(path);
  if (t.rows() != m.rows() || t.cols() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "target has a different shape than the instance");
  if (t.size() != t.rows() * t.cols()) throw Error(ErrorCode::Parse, "target must specify every entry");
  Eigen::MatrixXd out(t.rows(), t.cols());
  for (const auto& [p, v] : t.entries()) out(p.row, p.col) = to_double(v);
  return out;
}

void write_samples_tsv(std::ostream& out, const std::vector<RankOneFactorization>& samples) {
  if (samples.empty()) return;
  out << "t";
  for (std::size_t i = 0; i < samples[0].u.size(); ++i) out << "\tu" << i + 1;
  for (std::size_t j = 0; j < samples[0].v.size(); ++j) out << "\tv" << j + 1;
  out << '\n' << std::setprecision(17);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    out << k;
    for (const auto& x : samples[k].u) out << '\t' << x.to_double();
    for (const auto& x : samples[k].v) out << '\t' << x.to_double();
    out << '\n';
  }
}

struct CommonOptions {
  std::string path;
  bool json = false;
  unsigned precision = 0;
};

NumericPolicy policy_for(const CommonOptions& o) {
  NumericPolicy p = default_policy();
  if (o.precision != 0) p.cap_bits = std::max(o.precision, p.start_bits);
  return p;
}

int cmd_check(const CommonOptions& o, std::ostream& out) {
  PartialMatrix m = read_instance_file(o.path);
  Certificate c = decide(m, policy_for(o));
  if (o.json) {
    json r = {{"verdict", to_string(c.verdict())}, {"evidence", evidence_json(c, 30)}, {"completions", json::array()}};
    if (const auto* w = c.witness()) r["completions"].push_back(completion_json(*w, 30));
    out << r.dump(2) << '\n';
  } else {
    out << "verdict: " << to_string(c.verdict()) << '\n';
    print_evidence(out, c, 30);
  }
  return exit_code(c);
}

struct CompleteOptions {
  bool all = false;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  double eps = 1e-12;
  std::string plot;
};

int cmd_complete(const CommonOptions& o, const CompleteOptions& c, std::ostream& out) {
  if (!(c.eps > 0) || c.eps >= 1) throw Error(ErrorCode::InvalidArgument, "--eps must lie in (0, 1)");
  PartialMatrix m = read_instance_file(o.path);
  NumericPolicy policy = policy_for(o);
  int digits = std::min(300, static_cast<int>(std::ceil(-std::log10(c.eps))));
  policy.working_bits = std::max(policy.working_bits, static_cast<unsigned>(digits * 3.33 + 64));
  Certificate cert = decide(m, policy);
  if (!cert.completable()) {
    if (o.json) {
      json r = {{"verdict", to_string(cert.verdict())}, {"evidence", evidence_json(cert, digits)},
                {"kind", to_string(CompletionKind::Empty)}, {"dimension", 0}, {"completions", json::array()}};
      out << r.dump(2) << '\n';
    } else {
      out << "verdict: " << to_string(cert.verdict()) << "\nkind: Empty\n";
      print_evidence(out, cert, digits);
    }
    return kExitNotCompletable;
  }
  CompletionSetDescription d = classify_completions(m, policy);
  std::vector<RankOneFactorization> shown;
  if (c.all) {
    shown = d.completions;
    // A family lists its base point, which is the first walk completion.
    for (const auto& b : d.branches) {
      const auto& inst = b.instance;
      if (b.kind == CompletionKind::Family && inst.free_rows.empty() && inst.free_cols.empty() && inst.s() >= 2) {
        shown.push_back(pair_walk(inst, policy)[1]);
      }
    }
  }
  else if (d.base_point())
    shown.push_back(*d.base_point());
  std::vector<RankOneFactorization> samples;
  if (c.sample > 0 && d.kind == CompletionKind::Family) samples = sample_family(m, c.sample, c.seed, policy);
  if (!c.plot.empty()) {
    std::ofstream f(c.plot);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + c.plot);
    write_samples_tsv(f, samples);
  }

  if (o.json) {
    json r = {{"verdict", to_string(cert.verdict())}, {"evidence", evidence_json(cert, digits)},
              {"kind", to_string(d.kind)}, {"dimension", d.dimension}, {"completions", json::array()}};
    for (const auto& f : shown) r["completions"].push_back(completion_json(f, digits));
    json branches = json::array();
    for (const auto& b : d.branches)
      branches.push_back({{"zero_rows", b.support.rows}, {"zero_cols", b.support.cols}, {"minimal", b.minimal},
                          {"kind", to_string(b.kind)}, {"dimension", b.dimension}});
    r["branches"] = branches;
    if (d.cap_exceeded) r["cap_exceeded"] = true;
    if (c.sample > 0) {
      r["seed"] = c.seed;
      json s = json::array();
      for (const auto& f : samples) s.push_back(completion_json(f, digits));
      r["samples"] = s;
    }
    out << r.dump(2) << '\n';
    return kExitCompletable;
  }

  out << "verdict: Completable\nkind: " << to_string(d.kind) << '\n';
  if (d.kind == CompletionKind::Family) out << "dimension: " << d.dimension << '\n';
  if (d.cap_exceeded) out << "note: zero-support enumeration hit its cap; branches not listed\n";
  if (d.branches.size() > 1 || (d.branches.size() == 1 && !d.branches[0].support.empty())) {
    out << "branches:\n";
    for (const auto& b : d.branches) {
      out << "  zero rows {";
      for (std::size_t k = 0; k < b.support.rows.size(); ++k) out << (k ? "," : "") << b.support.rows[k];
      out << "} zero cols {";
      for (std::size_t k = 0; k < b.support.cols.size(); ++k) out << (k ? "," : "") << b.support.cols[k];
      out << "} " << to_string(b.kind);
      if (b.kind == CompletionKind::Family) out << " dim " << b.dimension;
      if (b.minimal) out << " minimal";
      out << '\n';
    }
  }
  for (std::size_t k = 0; k < shown.size(); ++k) {
    out << "completion " << k + 1 << ":\n";
    print_matrix(out, shown[k], digits);
  }
  if (c.sample > 0) {
    out << "seed: " << c.seed << '\n';
    if (d.kind != CompletionKind::Family)
      out << "no samples: the completion set is not a family\n";
    else if (c.plot.empty())
      write_samples_tsv(out, samples);
    else
      out << "samples written to " << c.plot << '\n';
  }
  return kExitCompletable;
}

struct OptimizeOptions {
  std::string target = "uniform";
  std::string sense = "min";
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
};

int cmd_optimize(const CommonOptions& o, const OptimizeOptions& opt, std::ostream& out) {
  PartialMatrix m = read_instance_file(o.path);
  Certificate cert = decide(m, policy_for(o));
  if (!cert.completable()) {
    if (o.json) {
      out << json{{"verdict", to_string(cert.verdict())}, {"evidence", evidence_json(cert, 30)},
                  {"completions", json::array()}, {"seed", opt.seed}}
                 .dump(2)
          << '\n';
    } else {
      out << "verdict: NotCompletable\n";
      print_evidence(out, cert, 30);
    }
    return kExitNotCompletable;
  }
  OptimizationProblem p(m);
  if (opt.target != "uniform") p.target = read_target(opt.target, m);
  if (opt.sense == "min")
    p.sense = Sense::Min;
  else if (opt.sense == "max")
    p.sense = Sense::Max;
  else
    throw Error(ErrorCode::InvalidArgument, "--sense must be min or max");
  p.restarts = opt.restarts;
  p.seed = opt.seed;
  OptimizationResult r = optimize_distance(p);
  if (o.json) {
    json rep = {{"verdict", "Completable"}, {"evidence", evidence_json(cert, 30)},
                {"objective", r.objective}, {"seed", opt.seed}, {"completions", json::array()}};
    rep["completions"].push_back(completion_json(r.best, 17));
    json cands = json::array();
    for (const auto& c : r.candidates)
      cands.push_back({{"objective", c.objective}, {"stationarity", c.stationarity}, {"converged", c.converged}});
    rep["candidates"] = cands;
    out << rep.dump(2) << '\n';
  } else {
    out << std::setprecision(10) << "objective: " << r.objective << "\nseed: " << opt.seed
        << "\nstationary points: " << r.stationary_count() << "\nmatrix:\n";
    out << std::setprecision(12);
    for (std::size_t i = 0; i < r.best.u.size(); ++i) {
      out << "  ";
      for (std::size_t j = 0; j < r.best.v.size(); ++j) out << (j ? "  " : "") << r.best.entry(i, j).to_double();
      out << '\n';
    }
  }
  return kExitCompletable;
}

int cmd_tensor(unsigned order, const std::string& diag, bool as_json, const NumericPolicy& policy, std::ostream& out) {
  DiagonalTensorInstance t{order, parse_list(diag)};
  Certificate c = decide_diagonal_tensor(t, policy);
  Comparison position = compare_root_sum(t.diag, order, Rational(1), policy).result;
  const char* where = position == Comparison::Less ? "interior" : position == Comparison::Equal ? "boundary" : "outside";
  if (as_json) {
    json r = {{"verdict", to_string(c.verdict())}, {"evidence", evidence_json(c, 30)}, {"position", where},
              {"completions", json::array()}};
    out << r.dump(2) << '\n';
  } else {
    out << "verdict: " << to_string(c.verdict()) << "\nposition: " << where << '\n';
    print_evidence(out, c, 30);
  }
  return exit_code(c);
}

int cmd_poly(unsigned order, unsigned size, unsigned cap, bool as_json, std::ostream& out) {
  MultivariatePolynomial p = boundary_polynomial(order, size, cap);
  if (as_json) {
    json terms = json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
      terms.push_back({{"coef", to_string(it->second)}, {"exponents", it->first}});
    out << json{{"order", order}, {"size", size}, {"degree", p.total_degree()}, {"terms", terms}}.dump(2) << '\n';
  } else {
    out << p.to_text();
  }
  return kExitCompletable;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-one completion of partial probability matrices"};
  app.name("rank1");
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("file", common.path, "Instance JSON file")->required();
    sub->add_option("--precision", common.precision, "Precision cap in bits for root-sum comparisons");
    sub->add_flag("--json", common.json, "Print the report as JSON");
  };

  auto* check = app.add_subcommand("check", "Decide completability and print a certificate");
  add_common(check);

  CompleteOptions copt;
  auto* complete = app.add_subcommand("complete", "Describe the set of completions");
  add_common(complete);
  complete->add_flag("--all", copt.all, "Print every listed completion");
  complete->add_option("--sample", copt.sample, "Draw k points of a positive-dimensional family");
  complete->add_option("--seed", copt.seed, "Seed for --sample");
  complete->add_option("--eps", copt.eps, "Print entries with error below eps");
  complete->add_option("--plot", copt.plot, "Write samples as tab-separated values to this file");

  OptimizeOptions oopt;
  auto* optimize = app.add_subcommand("optimize", "Extremize the distance to a target over all completions");
  add_common(optimize);
  optimize->add_option("--target", oopt.target, "uniform, or an instance file specifying every entry");
  optimize->add_option("--sense", oopt.sense, "min or max")->check(CLI::IsMember({"min", "max"}));
  optimize->add_option("--restarts", oopt.restarts, "Number of start points");
  optimize->add_option("--seed", oopt.seed, "Seed for start points");

  unsigned order = 2;
  std::string diag;
  bool tensor_json = false;
  unsigned tensor_precision = 0;
  auto* tensor = app.add_subcommand("tensor", "Decide a diagonal tensor");
  tensor->add_option("--order", order, "Tensor order d")->required();
  tensor->add_option("--diag", diag, "Comma-separated diagonal values")->required();
  tensor->add_option("--precision", tensor_precision, "Precision cap in bits");
  tensor->add_flag("--json", tensor_json, "Print the report as JSON");

  unsigned poly_order = 2;
  unsigned poly_size = 2;
  unsigned cap = kDefaultDegreeCap;
  bool poly_json = false;
  auto* poly = app.add_subcommand("poly", "Print the boundary polynomial");
  poly->add_option("--order", poly_order, "Root order d")->required();
  poly->add_option("--size", poly_size, "Number of variables n")->required();
  poly->add_option("--cap", cap, "Degree cap");
  poly->add_flag("--json", poly_json, "Print the polynomial as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*check) return cmd_check(common, out);
    if (*complete) return cmd_complete(common, copt, out);
    if (*optimize) return cmd_optimize(common, oopt, out);
    if (*tensor) {
      NumericPolicy p = default_policy();
      if (tensor_precision != 0) p.cap_bits = std::max(tensor_precision, p.start_bits);
      return cmd_tensor(order, diag, tensor_json, p, out);
    }
    if (*poly) return cmd_poly(poly_order, poly_size, cap, poly_json, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::NoCompletions:
      case ErrorCode::NotCompletable:
        return kExitNotCompletable;
      case ErrorCode::DidNotConverge:
      case ErrorCode::InternalInconsistency:
        return kExitNumericalFailure;
      default:
        return kExitInputError;
    }
  }
  return kExitInputError;
}

}  // namespace rank1
