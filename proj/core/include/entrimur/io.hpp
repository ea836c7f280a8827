#pragma once

#include <string>

#include "entrimur/quantum.hpp"
#include "entrimur/solver.hpp"

namespace entrimur {

// JSON text forms. Schemas:
//   Observable:      {"dim": d, "outcomes": [..], "effects": [matrix, ..]}
//   MultiObservable: {"dim": d, "outcome_sets": [[..], ..], "effects": [..]}
//   State:           {"dim": d, "rho": matrix}
// where matrix = list of rows and each entry is [re, im].
std::string observable_to_json(const Observable& o);
Observable observable_from_json(const std::string& text);
std::string multi_to_json(const MultiObservable& m);
MultiObservable multi_from_json(const std::string& text);
std::string state_to_json(const State& s);
State state_from_json(const std::string& text);

Observable load_observable(const std::string& path);
void save_observable(const Observable& o, const std::string& path);
MultiObservable load_multi(const std::string& path);
void save_multi(const MultiObservable& m, const std::string& path);
State load_state(const std::string& path);
void save_state(const State& s, const std::string& path);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

// Locale-free decimal formatting with 9 significant digits.
std::string format_sig(double v);

// One-line CSV header comment with version, seed and tolerances.
std::string header_record(const SolverConfig& cfg);

}  // namespace entrimur
