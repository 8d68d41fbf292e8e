// pfqed: command-line front end. Every subcommand writes a schema_version 1 JSON document
// (or CSV for the sweeps) to stdout or --out; failures print an error JSON on stderr.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "CLI11.hpp"
#include "pfqed/block_encoding.hpp"
#include "pfqed/commutators.hpp"
#include "pfqed/cutoff.hpp"
#include "pfqed/errors.hpp"
#include "pfqed/gate_cost.hpp"
#include "pfqed/lattice.hpp"
#include "pfqed/lcu_catalog.hpp"
#include "pfqed/operators.hpp"
#include "pfqed/smx.hpp"
#include "pfqed/state_prep.hpp"
#include "pfqed/trotter.hpp"

using namespace pfqed;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitGuard = 4;
constexpr int kExitCheck = 5;
constexpr double kCheckTol = 1e-9;

// Outcome of a subcommand: the payload plus the list of failed oracle comparisons.
struct Output {
  json doc;
  std::string csv;  // non-empty when the subcommand emits CSV
  std::vector<std::string> violations;
};

struct Common {
  std::string out;
  std::string format;  // sweeps default to csv
  bool check = false;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

ParamsInput load_params(const std::string& path, bool neon_default) {
  if (path.empty()) {
    if (neon_default) return neon_reference();
    throw InvalidArgument("--params is required");
  }
  return params_from_json(read_json_file(path));
}

Support load_support(const std::string& path) {
  if (path.empty()) throw InvalidArgument("--support is required");
  const json j = read_json_file(path);
  Support s;
  try {
    s.particles = j.value("particles", 0);
    s.spin = j.value("spin", false);
    s.positions = j.value("positions", true);
    for (const auto& l : j.value("links", json::array())) {
      const auto v = l.get<std::vector<std::int64_t>>();
      if (v.size() != 4) throw InvalidArgument("support links are [x, y, z, mu]");
      s.links.push_back({{v[0], v[1], v[2]}, static_cast<int>(v[3])});
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("support: ") + e.what());
  }
  return s;
}

// Shortest round-trip rendering, shared by JSON and CSV output.
std::string num(double x) { return json(x).dump(); }

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("not a number: " + item);
    }
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json matrix_json(const DenseOperator& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

void expect(Output& o, bool ok, const std::string& what) {
  if (!ok) o.violations.push_back(what);
}

// ---------------------------------------------------------------- lcu / blockenc

void add_generator_options(CLI::App* sub, GeneratorSpec& g, std::string& values) {
  sub->add_option("--op", g.op, "signature|integer|A|A2|A2bits|E2|U|grad|lap")->required();
  sub->add_option("--lambda", g.lambda, "electric cutoff; link dimension d = 2*lambda");
  sub->add_option("--delta", g.delta, "lattice spacing");
  sub->add_option("-a,--a", g.a, "stencil half-width");
  sub->add_option("--spacing", g.h, "stencil spacing");
  sub->add_option("--ring", g.ring, "stencil ring size (default d)");
  sub->add_option("--values", values, "comma-separated diagonal for signature/integer");
}

void finish_spec(GeneratorSpec& g, const std::string& values) {
  if (!values.empty()) g.values = parse_list(values);
}

Output lcu_decompose(GeneratorSpec g, const std::string& values, bool check) {
  finish_spec(g, values);
  const auto dec = build_generator(g);
  Output o;
  o.doc = to_json(dec);
  o.doc["op"] = g.op;
  const auto row = table_row(g);
  o.doc["table_row"] = {{"max_terms", row.max_terms}, {"max_l1", row.max_l1}, {"form", row.note}};
  if (check) {
    expect(o, static_cast<double>(dec.term_count()) <= row.max_terms, "term count above table row");
    expect(o, dec.l1() <= row.max_l1 * (1 + 1e-12), "l1 above table row");
  }
  return o;
}

Output lcu_verify(GeneratorSpec g, const std::string& values, bool check) {
  finish_spec(g, values);
  const auto dec = build_generator(g);
  const DenseOperator rec = reconstruct(dec);
  const DenseOperator direct = direct_operator(g);
  const double dev = max_abs_diff(rec, direct);
  const double norm = spectral_norm(direct);
  const auto row = table_row(g);
  Output o;
  o.doc = {{"op", g.op},
           {"dim", dec.target_dim},
           {"deviation", dev},
           {"term_count", dec.term_count()},
           {"l1", dec.l1()},
           {"spectral_norm", norm},
           {"table_row", {{"max_terms", row.max_terms}, {"max_l1", row.max_l1}, {"form", row.note}}}};
  if (check) {
    expect(o, dev <= kCheckTol, "reconstruction deviates from the direct operator");
    expect(o, norm <= dec.l1() * (1 + 1e-12) + 1e-12, "spectral norm exceeds l1");
    expect(o, static_cast<double>(dec.term_count()) <= row.max_terms, "term count above table row");
    expect(o, dec.l1() <= row.max_l1 * (1 + 1e-12), "l1 above table row");
  }
  return o;
}

Output blockenc_verify(const std::vector<std::string>& ops, std::vector<double> weights,
                       const std::string& mode, GeneratorSpec base, const std::string& values,
                       bool check) {
  if (ops.empty()) throw InvalidArgument("--op is required");
  finish_spec(base, values);
  std::vector<BlockEncoding> parts;
  std::vector<DenseOperator> targets;
  for (const auto& name : ops) {
    GeneratorSpec g = base;
    g.op = name;
    const auto dec = build_generator(g);
    parts.push_back(encode(dec));
    targets.push_back(direct_operator(g));
  }
  BlockEncoding be;
  DenseOperator target;
  if (mode == "single") {
    if (parts.size() != 1) throw InvalidArgument("mode single takes exactly one --op");
    be = parts.front();
    target = targets.front();
  } else if (mode == "sum") {
    if (weights.empty()) weights.assign(parts.size(), 1.0);
    if (weights.size() != parts.size()) throw InvalidArgument("one --weight per --op");
    std::vector<std::pair<double, BlockEncoding>> terms;
    target = zeros(static_cast<std::size_t>(targets.front().rows()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      terms.emplace_back(weights[i], parts[i]);
      if (targets[i].rows() != target.rows()) throw InvalidArgument("operand dimensions differ");
      target += weights[i] * targets[i];
    }
    be = compose_sum(terms);
  } else if (mode == "product") {
    be = compose_product(parts);
    target = targets.front();
    for (std::size_t i = 1; i < targets.size(); ++i) {
      if (targets[i].rows() != target.rows()) throw InvalidArgument("operand dimensions differ");
      target = DenseOperator(target * targets[i]);
    }
  } else {
    throw InvalidArgument("unknown mode: " + mode);
  }
  const double dev = verify_block(be, target);
  Output o;
  o.doc = {{"mode", mode},
           {"ops", ops},
           {"lambda", be.lambda},
           {"ancilla_width", be.ancilla_width},
           {"sys_dim", be.sys_dim},
           {"deviation", dev}};
  if (check) expect(o, dev <= kCheckTol, "block encoding deviates from the target");
  return o;
}

// ---------------------------------------------------------------- ops

Output ops_run(const std::string& fragment, const std::string& params_path,
               const std::string& support_path, bool with_matrix, bool check) {
  const auto p = derive(load_params(params_path, false));
  const auto s = load_support(support_path);
  const auto id = fragment_from_name(fragment);
  const DenseOperator h = op_fragment(id, p, s);
  const double norm = spectral_norm(h);
  const double bound = support_l1_bound(id, p, s);
  Output o;
  o.doc = {{"fragment", fragment_name(id)},
           {"dims", support_dims(p, s)},
           {"dim", support_dim(p, s)},
           {"retained_terms", retained_terms(id, p, s)},
           {"hermitian", is_hermitian(h, 1e-9)},
           {"spectral_norm", norm},
           {"support_l1_bound", bound},
           {"l1_bound", fragment_l1_bound(id, p)}};
  if (with_matrix) o.doc["matrix"] = matrix_json(h);
  if (check) {
    expect(o, is_hermitian(h, 1e-9), "fragment is not Hermitian");
    expect(o, norm <= bound * (1 + 1e-9) + 1e-12, "spectral norm exceeds the support l1 bound");
  }
  return o;
}

// ---------------------------------------------------------------- comm

Output comm_table(const std::string& params_path, bool check) {
  const auto p = derive_relaxed(load_params(params_path, true));
  Output o;
  o.doc = {{"rows", commutator_table(p)}};
  if (check) {
    for (auto a : kAllGroups) {
      for (auto b : kAllGroups) {
        const double ab = bound_pair(a, b, p), ba = bound_pair(b, a, p);
        expect(o, ab >= 0 && ab == ba, "asymmetric or negative entry " + group_name(a) + "," +
                                           group_name(b));
      }
    }
  }
  return o;
}

Output comm_exact(const std::string& ga, const std::string& gb, const std::string& params_path,
                  const std::string& support_path, bool check) {
  const auto p = derive(load_params(params_path, false));
  const auto s = load_support(support_path);
  const auto a = group_from_name(ga), b = group_from_name(gb);
  const double exact = exact_pair_norm(a, b, p, s);
  const double bound = support_bound(a, b, p, s);
  Output o;
  o.doc = {{"a", group_name(a)},
           {"b", group_name(b)},
           {"dim", support_dim(p, s)},
           {"exact", exact},
           {"support_bound", bound},
           {"table_bound", bound_pair(a, b, p)},
           {"printed_zero", printed_zero(a, b)},
           {"structurally_zero", structurally_commute(a, b, p, s)},
           {"interacting_pairs", interacting_pairs(a, b, p, s)}};
  if (check) expect(o, exact <= bound * (1 + 1e-9) + 1e-12, "exact commutator exceeds its bound");
  return o;
}

// "inner:n1,n2,..."
NestedGroup parse_group(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("--group expects inner:n1,n2,...");
  const auto inner = parse_list(text.substr(0, colon));
  if (inner.size() != 1) throw InvalidArgument("--group expects one inner value");
  return {inner.front(), parse_list(text.substr(colon + 1))};
}

DenseOperator random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseOperator m(dim, dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = cplx(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

Output comm_nested(const std::vector<std::string>& groups, int p, int p_prime, bool check,
                   std::uint64_t seed, int trials) {
  std::vector<NestedGroup> parsed;
  for (const auto& g : groups) parsed.push_back(parse_group(g));
  Output o;
  o.doc = {{"p", p}, {"p_prime", p_prime}, {"bound", nested_bound(parsed, p, p_prime)}};
  if (check) {
    // Random 4x4 brute force: depth p+1 nested commutator of p+1 Hermitians against the bound
    // built from the innermost (p'+1)-fold commutator and the outer norms.
    std::mt19937_64 rng(seed);
    double worst = 0;
    int violations = 0;
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<DenseOperator> hs;
      for (int k = 0; k <= p; ++k) hs.push_back(random_hermitian(rng, 4));
      DenseOperator inner = hs[0];
      for (int k = 1; k <= p_prime; ++k) inner = commutator(hs[static_cast<std::size_t>(k)], inner);
      DenseOperator full = inner;
      NestedGroup g{spectral_norm(inner), {}};
      for (int k = p_prime + 1; k <= p; ++k) {
        full = commutator(hs[static_cast<std::size_t>(k)], full);
        g.norms.push_back(spectral_norm(hs[static_cast<std::size_t>(k)]));
      }
      const double exact = spectral_norm(full);
      const double bound = nested_bound({g}, p, p_prime);
      worst = std::max(worst, bound > 0 ? exact / bound : 0.0);
      if (exact > bound * (1 + 1e-10) + 1e-12) ++violations;
    }
    o.doc["check"] = {{"seed", seed}, {"trials", trials}, {"violations", violations},
                      {"worst_ratio", worst}};
    expect(o, violations == 0, "brute-force nested commutator exceeds the bound");
  }
  return o;
}

// ---------------------------------------------------------------- trotter

double expanded_error(const BudgetTree& tree) {
  double total = 0, prefix = 1;
  for (const auto& lv : tree.levels) {
    double deltas = 0;
    for (const auto& leaf : lv.leaves) deltas += leaf.delta;
    total += prefix * lv.r * (lv.eps + lv.exponentials * deltas);
    prefix *= lv.r * lv.exponentials;
  }
  return total;
}

double expanded_gates(const BudgetTree& tree) {
  double total = 0, prefix = 1;
  for (const auto& lv : tree.levels) {
    prefix *= lv.r * lv.exponentials;
    double gates = 0;
    for (const auto& leaf : lv.leaves) gates += leaf.gates;
    total += prefix * gates;
  }
  return total;
}

Output trotter_budget(const std::string& params_path, int p1, bool check) {
  const auto p = derive_relaxed(load_params(params_path, true));
  const auto choice = choose_parameters(p, p1);
  const auto tree = default_tree(p, p1);
  const double err = total_error(tree), gates = total_gates(tree);
  Output o;
  o.doc = {{"p1", p1},
           {"choice",
            {{"r1", choice.r1}, {"r2", choice.r2}, {"r3", choice.r3},
             {"r1_real", choice.r1_real}, {"r2_real", choice.r2_real},
             {"r3_real", choice.r3_real}, {"delta1", choice.delta1},
             {"delta2", choice.delta2}, {"delta31", choice.delta31},
             {"delta32", choice.delta32}}},
           {"tree", to_json(tree)},
           {"total_error", err},
           {"error_over_eps", err / p.eps},
           {"total_gates", gates}};
  if (check) {
    expect(o, std::abs(err - expanded_error(tree)) <= 1e-12 * std::abs(err),
           "error recurrence disagrees with its expansion");
    expect(o, std::abs(gates - expanded_gates(tree)) <= 1e-12 * std::abs(gates),
           "gate recurrence disagrees with its expansion");
  }
  return o;
}

// ---------------------------------------------------------------- smx

json choice_json(const Partition& part) {
  return {{"M", part.M},
          {"requested_M", part.requested_M},
          {"widths", part.widths},
          {"t_count", t_count(part)},
          {"cnot", cnot_count(part)},
          {"ancillae", ancilla_count(part)}};
}

Output smx_count(std::int64_t M, const std::string& widths, int n, bool check) {
  Partition part;
  if (!widths.empty()) {
    std::vector<int> w;
    for (double x : parse_list(widths)) {
      if (x != std::round(x)) throw InvalidArgument("widths must be integers");
      w.push_back(static_cast<int>(x));
    }
    part = make_partition(M, w);
  } else {
    part = equal_partition(M, n);
  }
  Output o;
  o.doc = choice_json(part);
  const auto single = equal_partition(M, 1);
  o.doc["savings"] = t_count(single) - t_count(part);
  if (check) {
    const std::int64_t m = part.M;
    expect(o, t_count(single) == 12 * m, "n = 1 T count differs from 12M");
    bool equal = std::adjacent_find(part.widths.begin(), part.widths.end(),
                                    std::not_equal_to<>()) == part.widths.end();
    if (equal) {
      const int k = static_cast<int>(part.widths.size());
      expect(o, t_savings_equal(M, k) == t_count(single) - t_count(part),
             "savings closed form disagrees with the counts");
    }
  }
  return o;
}

Output smx_sweep(const std::vector<std::int64_t>& Ms, const std::string& format, bool check) {
  Output o;
  json rows = json::array();
  std::ostringstream csv;
  csv << "M,n,T_n,savings,ancillae\n";
  for (std::int64_t M : Ms) {
    const auto padded = pad_pow2(M);
    const int lg = ceil_log2(padded);
    for (int n = 1; n <= lg; ++n) {
      if (lg % n != 0) continue;
      const auto part = equal_partition(padded, n);
      const std::int64_t t = t_count(part), s = t_savings_equal(padded, n);
      const std::int64_t anc = ancilla_count(part);
      rows.push_back({{"M", padded}, {"n", n}, {"T_n", t}, {"savings", s}, {"ancillae", anc}});
      csv << padded << ',' << n << ',' << t << ',' << s << ',' << anc << '\n';
      if (check) {
        const bool endpoint = (n == 1 || n == lg);
        expect(o, endpoint ? s == 0 : s > 0,
               "savings sign wrong at M=" + std::to_string(padded) + " n=" + std::to_string(n));
      }
    }
  }
  o.doc = {{"columns", {"M", "n", "T_n", "savings", "ancillae"}}, {"rows", rows}};
  if (format != "json") o.csv = csv.str();
  return o;
}

Output smx_optimize(std::int64_t M, bool check) {
  const auto best = optimize_partition(M);
  Output o;
  o.doc = choice_json(best.partition);
  o.doc["savings"] = best.savings;
  if (check) {
    const int lg = ceil_log2(pad_pow2(M));
    for (int n = 1; n <= lg; ++n) {
      if (lg % n != 0) continue;
      expect(o, best.t_count <= t_count(equal_partition(pad_pow2(M), n)),
             "optimum beaten by the equal split n=" + std::to_string(n));
    }
  }
  return o;
}

// ---------------------------------------------------------------- cost

Output cost_model(const std::string& model, const std::string& params_path, bool check) {
  const auto p = derive_relaxed(load_params(params_path, true));
  const auto m = evaluate_model(model, p);
  Output o;
  o.doc = to_json(m);
  o.doc["params"] = params_to_json(p.input);
  if (model.starts_with("dc")) {
    const auto tree = default_tree(p, m.p1);
    o.doc["tree_gates"] = total_gates(tree);
  }
  if (check) expect(o, std::isfinite(m.total) && m.total > 0, "cost is not a positive number");
  return o;
}

Output cost_ratio(const std::string& sweep, double from, double to, int points,
                  const std::string& models_text, const std::string& params_path,
                  const std::string& format, bool check) {
  const auto var = sweep_variable_from_name(sweep);
  const auto models = split_names(models_text);
  ParamsInput ref = load_params(params_path, true);
  (var == SweepVariable::N ? ref.N : ref.Lambda) = from;
  const auto rows = cost_ratio_sweep(var, log_grid(from, to, points), ref, models);
  Output o;
  std::vector<std::string> columns = {"x"};
  for (const auto& m : models) columns.push_back("ratio_" + m);
  json jrows = json::array();
  std::ostringstream csv;
  for (std::size_t i = 0; i < columns.size(); ++i) csv << (i ? "," : "") << columns[i];
  csv << '\n';
  for (const auto& r : rows) {
    json jr = {{"x", r.x}};
    csv << num(r.x);
    for (std::size_t i = 0; i < models.size(); ++i) {
      jr["ratio_" + models[i]] = r.ratios[i];
      csv << ',' << num(r.ratios[i]);
    }
    csv << '\n';
    jrows.push_back(jr);
  }
  o.doc = {{"sweep", sweep_variable_name(var)},
           {"reference", params_to_json(ref)},
           {"columns", columns},
           {"rows", jrows}};
  if (format != "json") o.csv = csv.str();
  if (check) {
    for (double r : rows.front().ratios)
      expect(o, std::abs(r - 1) <= 1e-12, "reference row ratio differs from 1");
  }
  return o;
}

// ---------------------------------------------------------------- cutoff

Output cutoff_leakage(LeakageParams lp, bool chi_given, const std::string& params_path,
                      bool check) {
  if (!chi_given) lp.chi = chi_bound(derive_relaxed(load_params(params_path, true)));
  const double lam = leakage_lambda(lp);
  Output o;
  o.doc = {{"Lambda0", lp.Lambda0}, {"delta", lp.delta}, {"chi", lp.chi},
           {"r", lp.r},             {"t", lp.t},         {"Lambda", lam}};
  if (check) {
    LeakageParams zero = lp;
    zero.t = 0;
    expect(o, leakage_lambda(zero) == lp.Lambda0, "Lambda(t=0) differs from Lambda0");
    const double steps = (lam - lp.Lambda0) / (lp.delta - 1);
    expect(o, lam >= lp.Lambda0 && std::abs(steps - std::round(steps)) <= 1e-9,
           "Lambda is not Lambda0 plus whole steps");
  }
  return o;
}

Output cutoff_heuristic(double eta, double zmax, const std::string& params_path, bool check) {
  if (eta <= 0 || zmax < 0) {
    const auto p = derive_relaxed(load_params(params_path, true));
    if (eta <= 0) eta = p.eta;
    if (zmax < 0) zmax = p.Z_max;
  }
  const double lam = heuristic_lambda(eta, zmax);
  Output o;
  o.doc = {{"eta", eta}, {"Z_max", zmax}, {"Lambda", lam}};
  if (check) expect(o, lam == eta * zmax * zmax / 2, "heuristic differs from eta Z_max^2/2");
  return o;
}

// ---------------------------------------------------------------- stateprep

Output stateprep_sim(const PrepConfig& cfg, bool entries, bool check) {
  const auto r = simulate_prep(cfg);
  Output o;
  o.doc = to_json(r, entries);
  if (check) {
    expect(o, std::abs(r.success + r.failure.total() - 1) <= 1e-12, "probabilities do not sum to 1");
    expect(o, r.deviation < 1.0 / static_cast<double>(cfg.M), "deviation is not below 1/M");
  }
  return o;
}

Output stateprep_gates(const PrepConfig& cfg, bool check) {
  const auto g = prep_gate_estimate(cfg);
  Output o;
  o.doc = to_json(g);
  if (check) {
    const double n = cfg.n_p;
    expect(o, g.minus_zero_flags.t_gates == 2 * (4 * n - 8), "minus-zero flag T count");
    expect(o, g.minus_zero_flags.cnot == 2 * (4 * n - 7), "minus-zero flag CNOT count");
  }
  return o;
}

// ---------------------------------------------------------------- driver

void emit_error(const std::string& kind, const std::string& message, int code) {
  json e = {{"schema_version", kSchemaVersion},
            {"error", {{"kind", kind}, {"message", message}}},
            {"exit_code", code}};
  std::cerr << e.dump() << '\n';
}

int write_output(const std::string& command, const Common& c, Output o) {
  std::string text;
  if (!o.csv.empty()) {
    text = o.csv;
  } else {
    json doc = {{"schema_version", kSchemaVersion}, {"command", command}, {"result", o.doc}};
    if (c.check) doc["check"] = {{"passed", o.violations.empty()}, {"violations", o.violations}};
    text = doc.dump(2) + "\n";
  }
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + c.out);
    f << text;
  }
  if (c.check && !o.violations.empty()) {
    json e = {{"schema_version", kSchemaVersion},
              {"error", {{"kind", "check_failed"}, {"violations", o.violations}}},
              {"exit_code", kExitCheck}};
    std::cerr << e.dump() << '\n';
    return kExitCheck;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pauli-Fierz simulation cost toolkit"};
  app.require_subcommand(1);
  Common common;
  std::string command;
  std::function<Output()> action;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  bool csv_capable = false) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("--out", common.out, "output file (default stdout)");
    sub->add_flag("--check", common.check, "run oracle comparisons; nonzero exit on violation");
    if (csv_capable) {
      sub->add_option("--format", common.format, "csv or json")
          ->check(CLI::IsMember({"csv", "json"}));
    }
    const std::string full = parent->get_name() + " " + name;
    return std::make_pair(sub, full);
  };
  auto bind = [&](std::pair<CLI::App*, std::string> s, std::function<Output()> fn) {
    s.first->callback([&, s, fn] {
      command = s.second;
      action = fn;
    });
  };

  // lcu
  CLI::App* lcu = app.add_subcommand("lcu", "LCU decompositions")->require_subcommand(1);
  GeneratorSpec gen;
  std::string gen_values;
  {
    auto s = leaf(lcu, "decompose", "print the term list of a generator");
    add_generator_options(s.first, gen, gen_values);
    bind(s, [&] { return lcu_decompose(gen, gen_values, common.check); });
    auto v = leaf(lcu, "verify", "compare the reconstruction against the direct operator");
    add_generator_options(v.first, gen, gen_values);
    bind(v, [&] { return lcu_verify(gen, gen_values, common.check); });
  }

  // blockenc
  CLI::App* blockenc = app.add_subcommand("blockenc", "block encodings")->require_subcommand(1);
  std::vector<std::string> be_ops;
  std::vector<double> be_weights;
  std::string be_mode = "single";
  {
    auto s = leaf(blockenc, "verify", "encode generators and compare the top-left block");
    s.first->add_option("--op", be_ops, "generator name (repeatable)")->required();
    s.first->add_option("--weight", be_weights, "sum weights, one per --op");
    s.first->add_option("--mode", be_mode, "single|sum|product");
    s.first->add_option("--lambda", gen.lambda, "electric cutoff");
    s.first->add_option("--delta", gen.delta, "lattice spacing");
    s.first->add_option("-a,--a", gen.a, "stencil half-width");
    s.first->add_option("--spacing", gen.h, "stencil spacing");
    s.first->add_option("--ring", gen.ring, "stencil ring size");
    s.first->add_option("--values", gen_values, "diagonal for signature/integer");
    bind(s, [&] {
      return blockenc_verify(be_ops, be_weights, be_mode, gen, gen_values, common.check);
    });
  }

  // ops
  CLI::App* ops = app.add_subcommand("ops", "dense fragment operators")->require_subcommand(1);
  std::string fragment, params_path, support_path;
  bool with_matrix = false;
  for (const char* name : {"build", "norm"}) {
    auto s = leaf(ops, name, name == std::string("build") ? "build a fragment on a support"
                                                          : "spectral norm against the l1 bound");
    s.first->add_option("--fragment", fragment, "H1pi|H2pi|H3pi|Hf1|Hf2|Hs|Hvee|Hvne")->required();
    s.first->add_option("--params", params_path, "params JSON")->required();
    s.first->add_option("--support", support_path, "support JSON")->required();
    const bool build = name == std::string("build");
    if (build) s.first->add_flag("--matrix", with_matrix, "include the dense matrix");
    bind(s, [&, build] {
      return ops_run(fragment, params_path, support_path, build && with_matrix, common.check);
    });
  }

  // comm
  CLI::App* comm = app.add_subcommand("comm", "commutator bounds")->require_subcommand(1);
  std::string ga, gb;
  std::vector<std::string> nested_groups;
  int nest_p = 2, nest_pp = 1, trials = 200;
  std::uint64_t seed = 2024;
  {
    auto t = leaf(comm, "table", "pairwise bound table");
    t.first->add_option("--params", params_path, "params JSON (default neon)");
    bind(t, [&] { return comm_table(params_path, common.check); });
    auto e = leaf(comm, "exact", "exact commutator norm on a support");
    e.first->add_option("--a", ga, "first group")->required();
    e.first->add_option("--b", gb, "second group")->required();
    e.first->add_option("--params", params_path, "params JSON")->required();
    e.first->add_option("--support", support_path, "support JSON")->required();
    bind(e, [&] { return comm_exact(ga, gb, params_path, support_path, common.check); });
    auto n = leaf(comm, "nested", "nested commutator bound");
    n.first->add_option("--group", nested_groups, "inner:n1,n2,... (repeatable)");
    n.first->add_option("--p", nest_p, "outer depth p");
    n.first->add_option("--pprime", nest_pp, "inner depth p'");
    n.first->add_option("--seed", seed, "seed for --check");
    n.first->add_option("--trials", trials, "random instances for --check");
    bind(n, [&] { return comm_nested(nested_groups, nest_p, nest_pp, common.check, seed, trials); });
  }

  // trotter
  CLI::App* trotter = app.add_subcommand("trotter", "divide-and-conquer budget")->require_subcommand(1);
  int p1 = 1;
  {
    auto s = leaf(trotter, "budget", "default three-level budget tree");
    s.first->add_option("--params", params_path, "params JSON (default neon)");
    s.first->add_option("--p1", p1, "splitting order");
    bind(s, [&] { return trotter_budget(params_path, p1, common.check); });
  }

  // smx
  CLI::App* smx = app.add_subcommand("smx", "split-and-merge SELECT counts")->require_subcommand(1);
  std::int64_t M = 16;
  std::vector<std::int64_t> Ms;
  std::string widths;
  int n_groups = 1;
  {
    auto c = leaf(smx, "count", "counts for one partition");
    c.first->add_option("--M", M, "number of unitaries")->required();
    c.first->add_option("--n", n_groups, "equal split into n groups");
    c.first->add_option("--widths", widths, "explicit control widths, comma-separated");
    bind(c, [&] { return smx_count(M, widths, n_groups, common.check); });
    auto s = leaf(smx, "sweep", "equal splits for every n dividing log2 M", true);
    s.first->add_option("--M", Ms, "number of unitaries (repeatable)")->required();
    bind(s, [&] { return smx_sweep(Ms, common.format, common.check); });
    auto o = leaf(smx, "optimize", "best partition");
    o.first->add_option("--M", M, "number of unitaries")->required();
    bind(o, [&] { return smx_optimize(M, common.check); });
  }

  // cost
  CLI::App* cost = app.add_subcommand("cost", "asymptotic cost models")->require_subcommand(1);
  std::string sweep = "lambda", models = "dc1,dc2,qub";
  double from = 0, to = 0;
  int points = 25;
  {
    auto d = leaf(cost, "dc", "divide-and-conquer total");
    d.first->add_option("--params", params_path, "params JSON (default neon)");
    d.first->add_option("--p1", p1, "splitting order");
    bind(d, [&] { return cost_model("dc" + std::to_string(p1), params_path, common.check); });
    auto q = leaf(cost, "qub", "qubitization total");
    q.first->add_option("--params", params_path, "params JSON (default neon)");
    bind(q, [&] { return cost_model("qub", params_path, common.check); });
    auto r = leaf(cost, "ratio", "cost ratios along a sweep", true);
    r.first->add_option("--sweep", sweep, "lambda or N");
    r.first->add_option("--from", from, "sweep start, also the reference point");
    r.first->add_option("--to", to, "sweep end");
    r.first->add_option("--points", points, "log-spaced grid points");
    r.first->add_option("--models", models, "comma-separated: dc<p1>, qub");
    r.first->add_option("--params", params_path, "reference params JSON (default neon)");
    bind(r, [&] {
      const bool lam = sweep_variable_from_name(sweep) == SweepVariable::Lambda;
      if (from <= 0) from = lam ? 2 : 1e2;
      if (to <= 0) to = lam ? 1e10 : 1e15;
      return cost_ratio(sweep, from, to, points, models, params_path, common.format, common.check);
    });
  }

  // cutoff
  CLI::App* cutoff = app.add_subcommand("cutoff", "electric cutoff estimates")->require_subcommand(1);
  LeakageParams lp;
  CLI::Option* chi_opt = nullptr;
  double eta = 0, zmax = -1;
  {
    auto l = leaf(cutoff, "leakage", "cutoff from the leakage bound");
    l.first->add_option("--lambda0", lp.Lambda0, "initial cutoff")->required();
    l.first->add_option("--step", lp.delta, "integer cutoff step (>= 2)");
    chi_opt = l.first->add_option("--chi", lp.chi, "per-link norm bound (default from params)");
    l.first->add_option("--r", lp.r, "growth exponent");
    l.first->add_option("--t", lp.t, "evolution time");
    l.first->add_option("--params", params_path, "params JSON for chi (default neon)");
    bind(l, [&] { return cutoff_leakage(lp, chi_opt->count() > 0, params_path, common.check); });
    auto h = leaf(cutoff, "heuristic", "eta Z_max^2 / 2");
    h.first->add_option("--eta", eta, "electron count (default from params)");
    h.first->add_option("--zmax", zmax, "largest nuclear charge (default from params)");
    h.first->add_option("--params", params_path, "params JSON (default neon)");
    bind(h, [&] { return cutoff_heuristic(eta, zmax, params_path, common.check); });
  }

  // stateprep
  CLI::App* sp = app.add_subcommand("stateprep", "1/||v|| state preparation")->require_subcommand(1);
  PrepConfig cfg;
  bool entries = false;
  {
    auto s = leaf(sp, "sim", "exact classical simulation");
    s.first->add_option("--np", cfg.n_p, "bits per signed coordinate");
    s.first->add_option("--M", cfg.M, "inequality-test resolution");
    s.first->add_flag("--entries", entries, "include per-point amplitudes");
    bind(s, [&] { return stateprep_sim(cfg, entries, common.check); });
    auto g = leaf(sp, "gates", "gate estimate");
    g.first->add_option("--np", cfg.n_p, "bits per signed coordinate");
    g.first->add_option("--M", cfg.M, "inequality-test resolution");
    bind(g, [&] { return stateprep_gates(cfg, common.check); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what(), kExitUsage);
    return kExitUsage;
  }
  if (!action) {
    emit_error("usage", "no subcommand selected", kExitUsage);
    return kExitUsage;
  }
  try {
    return write_output(command, common, action());
  } catch (const GuardExceeded& e) {
    emit_error("guard_exceeded", e.what(), kExitGuard);
    return kExitGuard;
  } catch (const InvalidArgument& e) {
    emit_error("invalid_argument", e.what(), kExitInvalid);
    return kExitInvalid;
  } catch (const json::exception& e) {
    emit_error("invalid_argument", e.what(), kExitInvalid);
    return kExitInvalid;
  }
}
