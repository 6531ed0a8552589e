#include "trajint/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "trajint/classify.hpp"
#include "trajint/construct.hpp"
#include "trajint/io.hpp"
#include "trajint/martingale.hpp"
#include "trajint/measure.hpp"
#include "trajint/oracle.hpp"
#include "trajint/superhedge.hpp"

namespace trajint {

namespace {

struct Options {
  // shared
  std::string model;
  bool exact = false;
  bool json = false;
  std::size_t threads = 0;
  std::string out_file;

  // gen
  std::string kind;
  std::size_t horizon = 1;
  std::string up = "2";
  std::string mid = "1";
  std::string down = "1/2";
  std::string s0 = "1";
  std::uint64_t seed = 1;
  std::size_t branching = 3;
  double type1_rate = 0.0;
  double type2_rate = 0.0;

  // classify
  std::string format = "tsv";

  // price / martingale / oracle
  std::string payoff;
  std::string node = "root";
  std::string mode = "upper";
  std::vector<std::string> constraints;
  std::string certificate;
  std::string slack = "0";
  bool all_nodes = false;

  // verify
  std::string properties = "L";
  std::size_t trials = 10;
  std::size_t terms = 16;

  // martingale
  bool classify = false;
  std::string tower;

  // nullcheck
  std::string leaves;

  // oracle
  std::string method = "dual";
  std::string h_range = "-10,10";
  double step = 1e-3;
  std::size_t superpositions = 1;
  std::string coefficients = "-1,-0.5,0,0.5,1";
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TRAJINT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

// Runs body(i) for i in [0, n) on up to `threads` workers. Results are
// written by index, so output order does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, std::size_t threads, F&& body) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <class T>
ConstraintSet<T> build_constraint(const Options& o) {
  ConstraintSet<T> cs;
  for (const auto& c : o.constraints) {
    // "lo,hi" applies to every depth; "d:lo,hi" to one depth.
    const auto colon = c.find(':');
    if (colon == std::string::npos) {
      cs = ConstraintSet<T>(parse_interval<T>(c));
    }
  }
  for (const auto& c : o.constraints) {
    const auto colon = c.find(':');
    if (colon == std::string::npos) continue;
    std::size_t depth = 0;
    try {
      depth = std::stoul(c.substr(0, colon));
    } catch (const std::exception&) {
      throw InputError("constraint '" + c + "': bad depth");
    }
    cs.set_depth(depth, parse_interval<T>(c.substr(colon + 1)));
  }
  return cs;
}

std::filesystem::path model_dir(const Options& o) { return std::filesystem::path(o.model).parent_path(); }

template <class T>
LeafFunction<T> load_payoff(const Options& o, const TrajectoryTree<T>& tree) {
  if (o.payoff.empty()) throw InputError("--payoff is required");
  return parse_payoff_spec<T>(o.payoff, model_dir(o)).tabulate(tree);
}

void emit(const Options& o, std::ostream& out, const Json& doc) {
  if (o.out_file.empty() || o.out_file == "-") {
    out << doc.dump(2) << '\n';
  } else {
    write_json_file(o.out_file, doc);
  }
}

// ---------------------------------------------------------------- gen

int cmd_gen(const Options& o, std::ostream& out) {
  Json doc;
  if (o.kind == "example1") {
    doc = model_to_json(gen_example1<Rational>(o.horizon));
  } else if (o.kind == "example2") {
    doc = model_to_json(gen_example2<Rational>(o.horizon));
  } else if (o.kind == "binomial" || o.kind == "trinomial") {
    LatticeParams<Rational> p;
    p.kind = o.kind == "binomial" ? LatticeKind::binomial : LatticeKind::trinomial;
    p.up = parse_scalar<Rational>(o.up);
    p.mid = parse_scalar<Rational>(o.mid);
    p.down = parse_scalar<Rational>(o.down);
    try {
      doc = model_to_json(gen_lattice(p, o.horizon, parse_scalar<Rational>(o.s0)));
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      throw InputError(e.what());
    }
  } else if (o.kind == "random") {
    RandomTreeOptions r;
    r.depth = o.horizon;
    r.max_branching = o.branching;
    r.arbitrage_type1_rate = o.type1_rate;
    r.arbitrage_type2_rate = o.type2_rate;
    doc = model_to_json(random_tree<Rational>(r, o.seed));
  } else {
    throw InputError("unknown generator '" + o.kind + "' (expected example1|example2|binomial|trinomial|random)");
  }
  emit(o, out, doc);
  return kExitOk;
}

// ---------------------------------------------------------------- classify

template <class T>
int cmd_classify(const Options& o, std::ostream& out) {
  const auto tree = load_model<T>(o.model);
  const auto scan = scan_tree(tree);
  if (o.format == "json") {
    Json nodes = Json::array();
    for (const auto& [path, c] : scan.nodes) {
      nodes.push_back(Json{{"node", path.to_string()},
                           {"depth", path.depth()},
                           {"kind", to_string(c.kind)},
                           {"zero_neutral", c.zero_neutral}});
    }
    emit(o, out, Json{{"locally_0_neutral", scan.locally_0_neutral},
                      {"locally_arbitrage_free", scan.locally_arbitrage_free},
                      {"has_type_II", scan.has_type_II},
                      {"nodes", std::move(nodes)}});
  } else if (o.format == "tsv") {
    out << "node\tdepth\tkind\tzero_neutral\n";
    for (const auto& [path, c] : scan.nodes) {
      out << path.to_string() << '\t' << path.depth() << '\t' << to_string(c.kind) << '\t'
          << (c.zero_neutral ? "true" : "false") << '\n';
    }
    out << "# locally_0_neutral=" << std::boolalpha << scan.locally_0_neutral
        << " locally_arbitrage_free=" << scan.locally_arbitrage_free << " has_type_II=" << scan.has_type_II << '\n';
  } else {
    throw InputError("unknown format '" + o.format + "' (expected json|tsv)");
  }
  return kExitOk;
}

// ---------------------------------------------------------------- price

template <class T>
int cmd_price(const Options& o, std::ostream& out) {
  const auto tree = load_model<T>(o.model);
  const auto f = load_payoff(o, tree);
  const auto constraint = build_constraint<T>(o);
  const PriceMode mode = parse_price_mode(o.mode);
  const NodePath node = NodePath::parse(o.node);
  const NodeId at = tree.find(node);
  const auto priced = price_all(tree, f, mode, constraint);

  Json doc = Json::object();
  doc["mode"] = to_string(mode);
  doc["node"] = node.to_string();
  doc["value"] = ext_to_json(priced.at(at));
  Json restricted = Json::array();
  for (const auto& r : priced.restricted_type2_finite) restricted.push_back(r.to_string());
  doc["restricted_type2_finite"] = std::move(restricted);
  if (o.all_nodes) {
    Json all = Json::array();
    for (NodeId id = 0; id < tree.size(); ++id) {
      Json row{{"node", tree.path(id).to_string()}, {"value", ext_to_json(priced.at(id))}};
      if (priced.minimizers[id]) row["holding"] = scalar_to_json(*priced.minimizers[id]);
      all.push_back(std::move(row));
    }
    doc["nodes"] = std::move(all);
  }

  int code = kExitOk;
  if (!o.certificate.empty()) {
    const T slack = parse_scalar<T>(o.slack);
    const auto cert = hedge_certificate(tree, f, node, constraint, slack, mode);
    const auto check = validate_certificate(tree, f, cert, priced.at(at));
    Json c = certificate_to_json(cert);
    c["valid"] = check.ok();
    if (!check.detail.empty()) c["detail"] = check.detail;
    if (!check.ok()) code = kExitViolated;
    if (o.certificate == "-") {
      doc["certificate"] = std::move(c);
    } else {
      write_json_file(o.certificate, c);
      doc["certificate_file"] = o.certificate;
      doc["certificate_valid"] = check.ok();
    }
  }

  if (o.json) {
    out << doc.dump(2) << '\n';
  } else {
    out << to_string(mode) << " value at " << node.to_string() << ": " << priced.at(at) << '\n';
    for (const auto& r : priced.restricted_type2_finite) {
      out << "note: constraint keeps type II node " << r.to_string() << " finite\n";
    }
    if (o.all_nodes) {
      for (NodeId id = 0; id < tree.size(); ++id) {
        out << "  " << tree.path(id).to_string() << '\t' << priced.at(id);
        if (priced.minimizers[id]) out << "\th=" << format_scalar(*priced.minimizers[id]);
        out << '\n';
      }
    }
    if (doc.contains("certificate")) out << doc["certificate"].dump(2) << '\n';
    if (doc.contains("certificate_valid")) {
      out << "certificate " << (doc["certificate_valid"].get<bool>() ? "valid" : "INVALID") << " -> " << o.certificate
          << '\n';
    }
  }
  return code;
}

// ---------------------------------------------------------------- verify

template <class T>
std::vector<LeafFunction<T>> monotone_family(const LeafFunction<T>& f, std::size_t terms) {
  T top(0);
  for (const auto& v : f) {
    if (v.is_finite() && v.value() > top) top = v.value();
  }
  std::vector<LeafFunction<T>> family;
  for (std::size_t n = 1; n <= terms; ++n) {
    const ExtReal<T> level(T(top * T(static_cast<long>(n)) / T(static_cast<long>(terms))));
    family.push_back(map_leaves<T>(f, [&](const ExtReal<T>& v) { return ext_min(v, level); }));
  }
  return family;
}

template <class T>
int cmd_verify(const Options& o, std::ostream& out) {
  const auto tree = load_model<T>(o.model);
  const auto constraint = build_constraint<T>(o);
  const std::size_t threads = resolve_threads(o.threads);
  Json doc = Json::object();
  bool all_ok = true;
  std::ostringstream text;
  text << std::boolalpha;

  for (const auto& prop : split(o.properties, ',')) {
    if (prop == "L") {
      const auto r = check_L_property(tree, constraint);
      Json nodes = Json::object();
      for (const auto& [path, v] : r.upper_of_zero) nodes[path.to_string()] = ext_to_json(v);
      doc["L"] = Json{{"holds", r.all}, {"upper_of_zero", std::move(nodes)}};
      text << "L: " << (r.all ? "holds" : "FAILS") << " at " << r.holds.size() << " nodes\n";
      for (const auto& [path, ok] : r.holds) {
        if (!ok) text << "  upper integral of 0 at " << path.to_string() << " = " << r.upper_of_zero.at(path) << '\n';
      }
      all_ok = all_ok && r.all;
    } else if (prop == "K") {
      std::vector<NodeId> interior;
      for (NodeId id = 0; id < tree.size(); ++id) {
        if (!tree.is_leaf(id)) interior.push_back(id);
      }
      if (interior.empty()) interior.push_back(tree.root());
      std::vector<KReport<T>> reports(o.trials);
      std::vector<NodePath> where(o.trials);
      parallel_for(o.trials, threads, [&](std::size_t i) {
        const std::uint64_t s = o.seed * 1000003ULL + i;
        where[i] = tree.path(interior[s % interior.size()]);
        reports[i] = check_K_property(tree, random_elementary(tree, where[i], s), where[i], constraint);
      });
      bool ok = true;
      Json rows = Json::array();
      for (std::size_t i = 0; i < o.trials; ++i) {
        ok = ok && reports[i].holds;
        rows.push_back(Json{{"node", where[i].to_string()},
                            {"norm_positive", ext_to_json(reports[i].norm_positive)},
                            {"integral", scalar_to_json(reports[i].integral)},
                            {"norm_negative", ext_to_json(reports[i].norm_negative)},
                            {"holds", reports[i].holds}});
        if (!reports[i].holds) {
          text << "  K fails at " << where[i].to_string() << ": " << reports[i].norm_positive
               << " != " << format_scalar(reports[i].integral) << " + " << reports[i].norm_negative << '\n';
        }
      }
      doc["K"] = Json{{"holds", ok}, {"trials", std::move(rows)}};
      text << "K: " << (ok ? "holds" : "FAILS") << " on " << o.trials << " random elementary functions\n";
      all_ok = all_ok && ok;
    } else if (prop == "integrable") {
      const auto f = load_payoff(o, tree);
      bool ok = true;
      Json depths = Json::array();
      for (std::size_t j = 0; j <= tree.horizon(); ++j) {
        const auto r = check_integrable(tree, f, j, constraint);
        ok = ok && r.integrable;
        depths.push_back(Json{{"depth", j}, {"integrable", r.integrable}, {"exception_norm", ext_to_json(r.exception_norm)}});
        text << "integrable at depth " << j << ": " << r.integrable << " (exception norm " << r.exception_norm << ")\n";
      }
      doc["integrable"] = Json{{"holds", ok}, {"depths", std::move(depths)}};
      all_ok = all_ok && ok;
    } else if (prop == "convergence") {
      const auto f = load_payoff(o, tree);
      const auto family = monotone_family(f, o.terms);
      std::vector<LeafFunction<T>> pieces;
      LeafFunction<T> prev = constant_function(tree, ExtReal<T>(T(0)));
      for (const auto& g : monotone_family(positive_part(f), o.terms)) {
        LeafFunction<T> piece(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) piece[i] = g[i] - prev[i];
        pieces.push_back(std::move(piece));
        prev = g;
      }
      bool ok = true;
      Json rows = Json::array();
      for (std::size_t j = 0; j <= tree.horizon(); ++j) {
        const auto m = verify_convergence_theorems(tree, family, j, ConvergenceMode::monotone, o.terms, constraint);
        const auto b = verify_convergence_theorems(tree, pieces, j, ConvergenceMode::beppo_levi, o.terms, constraint);
        ok = ok && m.holds && b.holds;
        rows.push_back(Json{{"depth", j}, {"monotone", m.holds}, {"beppo_levi", b.holds}});
        text << "convergence at depth " << j << ": monotone " << m.holds << ", beppo-levi " << b.holds << '\n';
      }
      doc["convergence"] = Json{{"holds", ok}, {"depths", std::move(rows)}};
      all_ok = all_ok && ok;
    } else {
      throw InputError("unknown property '" + prop + "' (expected L,K,integrable,convergence)");
    }
  }
  doc["all"] = all_ok;
  if (o.json) {
    out << doc.dump(2) << '\n';
  } else {
    out << text.str() << (all_ok ? "all properties hold\n" : "some properties FAIL\n");
  }
  return all_ok ? kExitOk : kExitViolated;
}

// ---------------------------------------------------------------- martingale

template <class T>
int cmd_martingale(const Options& o, std::ostream& out) {
  const auto tree = load_model<T>(o.model);
  const auto f = load_payoff(o, tree);
  const auto constraint = build_constraint<T>(o);
  const ProcessMode mode = parse_process_mode(o.mode);
  PriceProcess<T> p;
  try {
    p = price_process(tree, f, mode, constraint);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    out << "not integrable: " << e.what() << '\n';
    return kExitViolated;
  }
  Json doc = process_to_json(tree, p);
  int code = kExitOk;
  std::ostringstream text;
  text << std::boolalpha;
  if (o.classify) {
    const auto c = classify_process(tree, p, constraint);
    doc["class"] = to_string(c.label());
    doc["supermartingale"] = c.supermartingale;
    doc["submartingale"] = c.submartingale;
    doc["martingale"] = c.martingale;
    text << "class: " << to_string(c.label()) << " (super " << c.supermartingale << ", sub " << c.submartingale
         << ")\n";
  }
  if (!o.tower.empty()) {
    const auto jk = split(o.tower, ',');
    if (jk.size() != 2) throw InputError("--check-tower expects j,k");
    std::size_t j = 0;
    std::size_t k = 0;
    try {
      j = std::stoul(jk[0]);
      k = std::stoul(jk[1]);
    } catch (const std::exception&) {
      throw InputError("--check-tower expects two integers");
    }
    if (j > k || k > tree.horizon()) throw InputError("--check-tower needs 0 <= j <= k <= N");
    const auto r = verify_tower(tree, f, j, k, constraint);
    doc["tower"] = Json{{"j", j}, {"k", k}, {"chain_holds", r.chain_holds}, {"integrable", r.integrable},
                        {"equality_holds", r.equality_holds}};
    text << "tower " << j << "," << k << ": chain " << r.chain_holds << ", integrable " << r.integrable
         << ", equality " << r.equality_holds << '\n';
    if (!r.chain_holds || (r.integrable && !r.equality_holds)) code = kExitViolated;
  }
  if (!o.out_file.empty()) write_json_file(o.out_file, doc);
  if (o.json) {
    out << doc.dump(2) << '\n';
  } else {
    for (NodeId id = 0; id < tree.size(); ++id) out << tree.path(id).to_string() << '\t' << p.values[id] << '\n';
    out << text.str();
  }
  return code;
}

// ---------------------------------------------------------------- nullcheck

template <class T>
int cmd_nullcheck(const Options& o, std::ostream& out) {
  const auto tree = load_model<T>(o.model);
  const auto constraint = build_constraint<T>(o);
  std::vector<NodePath> leaves;
  if (!o.leaves.empty() && o.leaves.front() == '@') {
    const Json list = read_json_file(o.leaves.substr(1));
    if (!list.is_array()) throw InputError(o.leaves.substr(1) + ": expected an array of leaf paths");
    for (const auto& v : list) leaves.push_back(NodePath::parse(v.get<std::string>()));
  } else {
    for (const auto& s : split(o.leaves, ';')) leaves.push_back(NodePath::parse(s));
  }
  if (leaves.empty()) throw InputError("--leaves is required");
  for (const auto& l : leaves) {
    const NodeId id = tree.find(l);
    if (!tree.is_leaf(id)) throw InputError(l.to_string() + " is not a leaf");
  }
  const NodePath node = NodePath::parse(o.node);
  const auto r = is_conditionally_null(tree, leaves, node, constraint);
  Json doc{{"node", node.to_string()}, {"norm", ext_to_json(r.norm_value)}, {"null", r.is_null}};
  std::optional<CertificateCheck> check;
  if (!o.certificate.empty()) {
    std::set<std::size_t> pos;
    for (const auto& l : leaves) pos.insert(tree.leaf_position(tree.find(l)));
    const auto f = indicator_function(tree, pos);
    const auto cert = hedge_certificate(tree, f, node, constraint, parse_scalar<T>(o.slack), PriceMode::norm);
    check = validate_certificate(tree, f, cert, r.norm_value);
    Json c = certificate_to_json(cert);
    c["valid"] = check->ok();
    if (o.certificate == "-") {
      doc["certificate"] = std::move(c);
    } else {
      write_json_file(o.certificate, c);
    }
  }
  if (o.json) {
    out << doc.dump(2) << '\n';
  } else {
    out << "norm at " << node.to_string() << ": " << r.norm_value << (r.is_null ? " (null)" : " (not null)") << '\n';
    if (check) out << "certificate " << (check->ok() ? "valid" : "INVALID") << '\n';
    if (doc.contains("certificate")) out << doc["certificate"].dump(2) << '\n';
  }
  return check && !check->ok() ? kExitViolated : kExitOk;
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(const Options& o, std::ostream& out) {
  const auto tree = load_model<double>(o.model);
  const auto f = load_payoff(o, tree);
  const NodePath node = NodePath::parse(o.node);
  const NodeId at = tree.find(node);
  const auto dp = price_all(tree, f, PriceMode::upper);
  Json doc{{"method", o.method}, {"node", node.to_string()}, {"dp", ext_to_json(dp.at(at))}};
  if (o.method == "grid") {
    const auto iv = parse_interval<double>(o.h_range);
    if (!iv.lo.is_finite() || !iv.hi.is_finite()) throw InputError("--h-range must be finite");
    GridOptions g{iv.lo.value(), iv.hi.value(), o.step};
    doc["oracle"] = ext_to_json(grid_superhedge(tree, f, node, g));
  } else if (o.method == "dual") {
    if (tree.is_leaf(at)) throw InputError("dual oracle needs an interior node");
    std::vector<HedgePoint<double>> pts;
    for (NodeId c : tree.children(at)) pts.push_back({tree.increment(c), dp.at(c)});
    doc["oracle"] = ext_to_json(martingale_measure_value(pts));
  } else if (o.method == "enum") {
    std::vector<double> coeffs;
    for (const auto& s : split(o.coefficients, ',')) coeffs.push_back(parse_scalar<double>(s));
    doc["oracle"] = ext_to_json(enumerate_superpositions(tree, f, node, o.superpositions, coeffs));
  } else {
    throw InputError("unknown method '" + o.method + "' (expected grid|dual|enum)");
  }
  if (o.json) {
    out << doc.dump(2) << '\n';
  } else {
    out << o.method << " oracle at " << node.to_string() << ": " << doc["oracle"].dump() << "  (dp "
        << doc["dp"].dump() << ")\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"trajint: conditional integration on trajectory trees"};
  app.require_subcommand(1);
  Options o;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("model", o.model, "model JSON file")->required();
    sub->add_flag("--exact", o.exact, "exact rational arithmetic");
    sub->add_flag("--json", o.json, "JSON report");
    sub->add_option("--threads", o.threads, "worker threads (default TRAJINT_THREADS or 1)");
    sub->add_option("--constraint", o.constraints, "holding interval lo,hi or d:lo,hi (repeatable)");
  };

  auto* gen = app.add_subcommand("gen", "generate a model");
  gen->add_option("kind", o.kind, "example1|example2|binomial|trinomial|random")->required();
  gen->add_option("--horizon,-N", o.horizon, "horizon N")->required();
  gen->add_option("--up,-u", o.up, "up factor");
  gen->add_option("--mid,-m", o.mid, "middle factor (trinomial)");
  gen->add_option("--down,-d", o.down, "down factor");
  gen->add_option("--s0", o.s0, "initial price");
  gen->add_option("--seed", o.seed, "seed (random)");
  gen->add_option("--branching", o.branching, "max branching (random)");
  gen->add_option("--type1-rate", o.type1_rate, "share of ArbitrageI nodes (random)");
  gen->add_option("--type2-rate", o.type2_rate, "share of ArbitrageII nodes (random)");
  gen->add_option("-o,--out", o.out_file, "output file (default stdout)");

  auto* classify = app.add_subcommand("classify", "node taxonomy");
  add_model(classify);
  classify->add_option("--format", o.format, "json|tsv");
  classify->add_option("-o,--out", o.out_file, "output file (json format)");

  auto* price = app.add_subcommand("price", "upper/lower integrals and conditional norm");
  add_model(price);
  price->add_option("--payoff", o.payoff, "payoff spec")->required();
  price->add_option("--node", o.node, "conditioning node path");
  price->add_option("--mode", o.mode, "upper|lower|norm");
  price->add_option("--certificate", o.certificate, "write a hedge certificate (file or -)");
  price->add_option("--slack", o.slack, "premium slack for limit-only values");
  price->add_flag("--all", o.all_nodes, "report every node");

  auto* verify = app.add_subcommand("verify", "check structural properties");
  add_model(verify);
  verify->add_option("--properties", o.properties, "comma list of L,K,integrable,convergence");
  verify->add_option("--payoff", o.payoff, "payoff spec (integrable, convergence)");
  verify->add_option("--seed", o.seed, "seed for random elementary functions");
  verify->add_option("--trials", o.trials, "number of random elementary functions (K)");
  verify->add_option("--terms", o.terms, "family length (convergence)");

  auto* mart = app.add_subcommand("martingale", "price processes and tower property");
  add_model(mart);
  mart->add_option("--payoff", o.payoff, "payoff spec")->required();
  mart->add_option("--mode", o.mode, "upper|lower|integral");
  mart->add_flag("--classify", o.classify, "classify the process");
  mart->add_option("--check-tower", o.tower, "j,k");
  mart->add_option("--out", o.out_file, "write the process as JSON");

  auto* nullcheck = app.add_subcommand("nullcheck", "conditional norm of a leaf set");
  add_model(nullcheck);
  nullcheck->add_option("--leaves", o.leaves, "leaf paths separated by ';' or @file")->required();
  nullcheck->add_option("--node", o.node, "conditioning node path");
  nullcheck->add_option("--certificate", o.certificate, "write a hedge certificate (file or -)");
  nullcheck->add_option("--slack", o.slack, "premium slack");

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks (floating point)");
  oracle->add_option("model", o.model, "model JSON file")->required();
  oracle->add_flag("--json", o.json, "JSON report");
  oracle->add_option("--payoff", o.payoff, "payoff spec")->required();
  oracle->add_option("--method", o.method, "grid|dual|enum");
  oracle->add_option("--node", o.node, "node path");
  oracle->add_option("--h-range", o.h_range, "grid holding range lo,hi");
  oracle->add_option("--step", o.step, "grid step");
  oracle->add_option("--terms", o.superpositions, "number of superposed portfolios (enum)");
  oracle->add_option("--coefficients", o.coefficients, "holding grid for enum, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*classify) return o.exact ? cmd_classify<Rational>(o, out) : cmd_classify<double>(o, out);
    if (*price) return o.exact ? cmd_price<Rational>(o, out) : cmd_price<double>(o, out);
    if (*verify) return o.exact ? cmd_verify<Rational>(o, out) : cmd_verify<double>(o, out);
    if (*mart) return o.exact ? cmd_martingale<Rational>(o, out) : cmd_martingale<double>(o, out);
    if (*nullcheck) return o.exact ? cmd_nullcheck<Rational>(o, out) : cmd_nullcheck<double>(o, out);
    if (*oracle) return cmd_oracle(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace trajint
