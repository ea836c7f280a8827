#include "entrimur/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "entrimur/version.hpp"

namespace entrimur {

namespace {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) {
    throw std::invalid_argument("matrix: expected a nonempty list of rows");
  }
  Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  Eigen::Index nc = static_cast<Eigen::Index>(rows[0].size());
  Mat m(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != nc) {
      throw std::invalid_argument("matrix: ragged rows");
    }
    for (Eigen::Index j = 0; j < nc; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("matrix: entries must be [re, im] pairs");
      }
      m(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

std::vector<std::string> labels_from_json(const json& arr) {
  std::vector<std::string> out;
  for (const json& v : arr) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

std::string observable_to_json(const Observable& o) {
  json j;
  j["dim"] = o.dim;
  j["outcomes"] = o.outcomes;
  json effects = json::array();
  for (const Mat& e : o.effects) effects.push_back(matrix_to_json(e));
  j["effects"] = effects;
  return j.dump(2);
}

Observable observable_from_json(const std::string& text) {
  json j = json::parse(text);
  Observable o;
  o.dim = j.at("dim").get<int>();
  o.outcomes = labels_from_json(j.at("outcomes"));
  for (const json& e : j.at("effects")) o.effects.push_back(matrix_from_json(e));
  o.validate();
  return o;
}

std::string multi_to_json(const MultiObservable& m) {
  json j;
  j["dim"] = m.dim;
  json sets = json::array();
  for (const auto& s : m.outcome_sets) sets.push_back(s);
  j["outcome_sets"] = sets;
  json effects = json::array();
  for (const Mat& e : m.effects) effects.push_back(matrix_to_json(e));
  j["effects"] = effects;
  return j.dump(2);
}

MultiObservable multi_from_json(const std::string& text) {
  json j = json::parse(text);
  MultiObservable m;
  m.dim = j.at("dim").get<int>();
  for (const json& s : j.at("outcome_sets")) m.outcome_sets.push_back(labels_from_json(s));
  for (const json& e : j.at("effects")) m.effects.push_back(matrix_from_json(e));
  m.validate();
  return m;
}

std::string state_to_json(const State& s) {
  json j;
  j["dim"] = s.dim;
  j["rho"] = matrix_to_json(s.rho);
  return j.dump(2);
}

State state_from_json(const std::string& text) {
  json j = json::parse(text);
  State s{j.at("dim").get<int>(), matrix_from_json(j.at("rho"))};
  s.validate();
  return s;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Observable load_observable(const std::string& path) {
  return observable_from_json(read_text(path));
}
void save_observable(const Observable& o, const std::string& path) {
  write_text(path, observable_to_json(o) + "\n");
}
MultiObservable load_multi(const std::string& path) { return multi_from_json(read_text(path)); }
void save_multi(const MultiObservable& m, const std::string& path) {
  write_text(path, multi_to_json(m) + "\n");
}
State load_state(const std::string& path) { return state_from_json(read_text(path)); }
void save_state(const State& s, const std::string& path) {
  write_text(path, state_to_json(s) + "\n");
}

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string header_record(const SolverConfig& cfg) {
  std::ostringstream ss;
  ss << "# entrimur " << kVersion << " seed=" << cfg.seed << " outer_tol=" << format_sig(cfg.outer_tol)
     << " inner_tol=" << format_sig(cfg.inner_tol) << " restarts=" << cfg.restarts;
  return ss.str();
}

}  // namespace entrimur
