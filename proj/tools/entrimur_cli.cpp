#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entrimur/bounds.hpp"
#include "entrimur/gallery.hpp"
#include "entrimur/io.hpp"
#include "entrimur/mub.hpp"
#include "entrimur/solver.hpp"
#include "entrimur/spin.hpp"
#include "entrimur/version.hpp"

namespace {

using entrimur::format_sig;
using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

struct Options {
  entrimur::SolverConfig cfg;
  std::string out;
  std::string format;  // "", "csv" or "json"
  double alpha = kPi / 4;
  int grid = 100;
  int p = 2;
  int n = 1;
  std::vector<std::string> inputs;
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--seed", opt.cfg.seed, "deterministic stream seed");
  sub->add_option("--restarts", opt.cfg.restarts, "restart count for inner searches");
  sub->add_option("--outer-tol", opt.cfg.outer_tol, "bracket gap target");
  sub->add_option("--inner-tol", opt.cfg.inner_tol, "inner search tolerance");
  sub->add_option("--out", opt.out, "output file (stdout when omitted)");
  sub->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

std::string pick_format(const Options& opt, const std::string& dflt) {
  return opt.format.empty() ? dflt : opt.format;
}

json header_json(const entrimur::SolverConfig& cfg) {
  json h;
  h["version"] = entrimur::kVersion;
  h["seed"] = cfg.seed;
  h["outer_tol"] = cfg.outer_tol;
  h["inner_tol"] = cfg.inner_tol;
  h["restarts"] = cfg.restarts;
  return h;
}

void emit(const Options& opt, const std::string& content) {
  if (opt.out.empty()) {
    std::cout << content;
  } else {
    entrimur::write_text(opt.out, content);
  }
}

// Record-style output: JSON object, or key,value CSV rows for scalar fields.
void emit_record(const Options& opt, const std::string& dflt_format, const json& record) {
  if (pick_format(opt, dflt_format) == "json") {
    emit(opt, record.dump(2) + "\n");
    return;
  }
  std::ostringstream ss;
  ss << entrimur::header_record(opt.cfg) << "\n";
  ss << "key,value\n";
  for (const auto& [key, value] : record.items()) {
    if (key == "header") continue;
    if (value.is_number_float()) {
      ss << key << "," << format_sig(value.get<double>()) << "\n";
    } else if (value.is_number_integer()) {
      ss << key << "," << value.get<long long>() << "\n";
    } else if (value.is_boolean()) {
      ss << key << "," << (value.get<bool>() ? "true" : "false") << "\n";
    } else if (value.is_string()) {
      ss << key << "," << value.get<std::string>() << "\n";
    }
    // nested structures appear only in the json format
  }
  emit(opt, ss.str());
}

int cmd_spin_table(const Options& opt) {
  entrimur::ComparisonReport rep = entrimur::comparison_points(opt.alpha);
  double lb_phi = kPi / 4 - opt.alpha / 2;
  if (pick_format(opt, "csv") == "csv") {
    std::ostringstream ss;
    ss << entrimur::header_record(opt.cfg) << "\n";
    ss << "column,gamma,phi,value\n";
    ss << "lb," << format_sig(rep.lb_gamma) << "," << format_sig(lb_phi) << ","
       << format_sig(rep.lb_value) << "\n";
    ss << "icomp," << format_sig(rep.icomp.gamma) << "," << format_sig(rep.icomp.phi) << ","
       << format_sig(rep.icomp.value) << "\n";
    ss << "blw," << format_sig(rep.blw.gamma) << "," << format_sig(rep.blw.phi) << ","
       << format_sig(rep.blw.value) << "\n";
    ss << "nv," << format_sig(rep.nv.gamma) << "," << format_sig(rep.nv.phi) << ","
       << format_sig(rep.nv.value) << "\n";
    emit(opt, ss.str());
  } else {
    json j;
    j["header"] = header_json(opt.cfg);
    j["alpha"] = opt.alpha;
    j["columns"]["lb"] = {{"gamma", rep.lb_gamma}, {"phi", lb_phi}, {"value", rep.lb_value}};
    j["columns"]["icomp"] = {
        {"gamma", rep.icomp.gamma}, {"phi", rep.icomp.phi}, {"value", rep.icomp.value}};
    j["columns"]["blw"] = {{"gamma", rep.blw.gamma}, {"phi", rep.blw.phi}, {"value", rep.blw.value}};
    j["columns"]["nv"] = {{"gamma", rep.nv.gamma}, {"phi", rep.nv.phi}, {"value", rep.nv.value}};
    emit(opt, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_spin_scan(const Options& opt) {
  if (opt.grid < 2) throw CLI::ValidationError("--grid", "must be at least 2");
  std::vector<std::array<double, 5>> rows;
  for (int k = 0; k < opt.grid; ++k) {
    double alpha = (kPi / 2) * k / (opt.grid - 1);
    entrimur::AnalyticLowerBound lb = entrimur::analytic_lower_bound(alpha);
    entrimur::QubitMinimaxResult mm = entrimur::qubit_minimax(alpha, opt.cfg);
    rows.push_back({alpha, lb.lb, mm.value, mm.gamma_star, mm.phi_star});
  }
  if (pick_format(opt, "csv") == "csv") {
    std::ostringstream ss;
    ss << entrimur::header_record(opt.cfg) << "\n";
    ss << "alpha,lb,icomp_value,gamma_star,phi_star\n";
    for (const auto& r : rows) {
      ss << format_sig(r[0]) << "," << format_sig(r[1]) << "," << format_sig(r[2]) << ","
         << format_sig(r[3]) << "," << format_sig(r[4]) << "\n";
    }
    emit(opt, ss.str());
  } else {
    json j;
    j["header"] = header_json(opt.cfg);
    j["rows"] = json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"alpha", r[0]},
                           {"lb", r[1]},
                           {"icomp_value", r[2]},
                           {"gamma_star", r[3]},
                           {"phi_star", r[4]}});
    }
    emit(opt, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_mub(const Options& opt) {
  entrimur::FiniteField f = entrimur::field_construct(opt.p, opt.n);
  auto [m, lambda0] = entrimur::optimal_mub_measurement(f);
  (void)m;
  entrimur::MubSandwich s = entrimur::mub_bound_sandwich(f, opt.cfg);
  if (pick_format(opt, "csv") == "csv") {
    std::ostringstream ss;
    ss << entrimur::header_record(opt.cfg) << "\n";
    ss << "d,p,n,lambda0,lower,value,upper\n";
    ss << f.size() << "," << f.p() << "," << f.n() << "," << format_sig(lambda0) << ","
       << format_sig(s.lower) << "," << format_sig(s.value) << "," << format_sig(s.upper) << "\n";
    emit(opt, ss.str());
  } else {
    json j;
    j["header"] = header_json(opt.cfg);
    j["d"] = f.size();
    j["p"] = f.p();
    j["n"] = f.n();
    j["lambda0"] = lambda0;
    j["lower"] = s.lower;
    j["value"] = s.value;
    j["upper"] = s.upper;
    emit(opt, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_three_spin(const Options& opt) {
  entrimur::ThreeSpinReport rep = entrimur::three_spin_suite();
  int rank_one = 0;
  for (const entrimur::Mat& e : rep.m1.effects) {
    if (e.norm() > 1e-12) ++rank_one;
  }
  json j;
  j["header"] = header_json(opt.cfg);
  j["icomp"] = rep.icomp;
  j["c_star"] = rep.c_star;
  j["m0_effects"] = static_cast<int>(rep.m0.effects.size());
  j["m1_nonzero_effects"] = rank_one;
  j["marginals_match"] = true;  // three_spin_suite verifies or throws
  emit_record(opt, "json", j);
  return 0;
}

json bracket_json(const entrimur::Bracket& br) {
  json j;
  j["lower"] = br.lower;
  j["upper"] = br.upper;
  j["rounds_used"] = br.rounds_used;
  j["converged"] = br.converged;
  j["atlas_size"] = static_cast<int>(br.witness_states.size());
  j["witness_measurement"] = json::parse(entrimur::multi_to_json(br.witness_measurement));
  json trace = json::array();
  for (const entrimur::RoundTrace& t : br.trace) {
    trace.push_back({{"round", t.round},
                     {"lower", t.lower},
                     {"upper", t.upper},
                     {"atlas_size", t.atlas_size}});
  }
  j["trace"] = trace;
  return j;
}

int cmd_icomp(const Options& opt) {
  std::vector<entrimur::Observable> targets;
  for (const std::string& path : opt.inputs) {
    targets.push_back(entrimur::load_observable(path));
  }
  entrimur::Bracket br = targets.size() == 2
                             ? entrimur::icomp(targets[0], targets[1], opt.cfg)
                             : entrimur::icomp_multi(targets, opt.cfg);
  json j;
  j["header"] = header_json(opt.cfg);
  j["command"] = "icomp";
  j["inputs"] = opt.inputs;
  json b = bracket_json(br);
  for (auto it = b.begin(); it != b.end(); ++it) j[it.key()] = it.value();
  emit_record(opt, "json", j);
  return br.converged ? 0 : 3;
}

int cmd_iad(const Options& opt) {
  entrimur::Observable a = entrimur::load_observable(opt.inputs[0]);
  entrimur::Observable b = entrimur::load_observable(opt.inputs[1]);
  entrimur::Bracket br = entrimur::iad(a, b, opt.cfg);
  json j;
  j["header"] = header_json(opt.cfg);
  j["command"] = "iad";
  j["inputs"] = opt.inputs;
  json bj = bracket_json(br);
  for (auto it = bj.begin(); it != bj.end(); ++it) j[it.key()] = it.value();
  emit_record(opt, "json", j);
  return br.converged ? 0 : 3;
}

int cmd_bounds(const Options& opt) {
  std::vector<entrimur::Observable> targets;
  for (const std::string& path : opt.inputs) {
    targets.push_back(entrimur::load_observable(path));
  }
  entrimur::BoundReport rep = entrimur::bound_report(targets, opt.cfg);
  json j;
  j["header"] = header_json(opt.cfg);
  j["command"] = "bounds";
  j["inputs"] = opt.inputs;
  j["cloning2"] = rep.cloning2;
  j["cloningN"] = rep.cloningN;
  j["shannon_cap"] = rep.shannon_cap;
  j["kp_lower"] = rep.kp_lower;
  j["prep_coeff"] = rep.prep_coeff;
  j["tradeoff_rhs"] = rep.tradeoff_rhs;
  j["tradeoff_ok"] =
      entrimur::tradeoff_check(targets[0], targets[1], rep.cloningN, rep.prep_coeff);
  emit_record(opt, "json", j);
  return 0;
}

int cmd_appendix(const Options& opt) {
  json cases = json::array();
  for (const entrimur::GalleryCase& g :
       {entrimur::hw_example_1(), entrimur::hw_example_2()}) {
    json c;
    c["name"] = g.name;
    c["notes"] = g.notes;
    c["dim"] = g.a.dim;
    c["outcomes_a"] = static_cast<int>(g.a.size());
    c["outcomes_b"] = static_cast<int>(g.b.size());
    c["joint_provided"] = g.provided_joint.has_value();
    // constructors verify PSD and exact marginals, throwing on failure
    c["marginal_check"] = "pass";
    c["psd_check"] = "pass";
    cases.push_back(c);
  }
  json j;
  j["header"] = header_json(opt.cfg);
  j["command"] = "appendix";
  j["cases"] = cases;
  emit(opt, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropic measurement-uncertainty calculator"};
  app.set_version_flag("--version", std::string(entrimur::kVersion));
  app.require_subcommand(1);
  Options opt;

  CLI::App* spin_table = app.add_subcommand("spin-table", "comparison table for a spin pair");
  spin_table->add_option("--alpha", opt.alpha, "angle between the targets");
  add_common(spin_table, opt);

  CLI::App* spin_scan = app.add_subcommand("spin-scan", "lower bound and minimax over an angle grid");
  spin_scan->add_option("--grid", opt.grid, "number of rows (default 100)");
  add_common(spin_scan, opt);

  CLI::App* mub = app.add_subcommand("mub", "bound sandwich for a conjugate basis pair");
  mub->add_option("--p", opt.p, "field characteristic (prime)");
  mub->add_option("--n", opt.n, "field degree");
  add_common(mub, opt);

  CLI::App* three_spin = app.add_subcommand("three-spin", "three orthogonal spin components");
  add_common(three_spin, opt);

  CLI::App* icomp = app.add_subcommand("icomp", "incompatibility bracket for serialized observables");
  icomp->add_option("inputs", opt.inputs, "observable JSON files")->required()->expected(2, -1);
  add_common(icomp, opt);

  CLI::App* iad = app.add_subcommand("iad", "error-disturbance bracket for two serialized observables");
  iad->add_option("inputs", opt.inputs, "observable JSON files (first measured, second disturbed)")
      ->required()
      ->expected(2);
  add_common(iad, opt);

  CLI::App* bounds = app.add_subcommand("bounds", "closed-form bound report");
  bounds->add_option("inputs", opt.inputs, "observable JSON files")->required()->expected(2, -1);
  add_common(bounds, opt);

  CLI::App* appendix = app.add_subcommand("appendix", "verify the fixture gallery");
  add_common(appendix, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spin_table->parsed()) return cmd_spin_table(opt);
    if (spin_scan->parsed()) return cmd_spin_scan(opt);
    if (mub->parsed()) return cmd_mub(opt);
    if (three_spin->parsed()) return cmd_three_spin(opt);
    if (icomp->parsed()) return cmd_icomp(opt);
    if (iad->parsed()) return cmd_iad(opt);
    if (bounds->parsed()) return cmd_bounds(opt);
    if (appendix->parsed()) return cmd_appendix(opt);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
