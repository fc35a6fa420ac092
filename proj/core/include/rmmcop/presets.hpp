#pragma once

#include <map>
#include <string>
#include <vector>

#include "rmmcop/copula.hpp"
#include "rmmcop/diagonal.hpp"

namespace rmmcop {

/// Parses "1/3", "0.25" or "-2" into a double. Throws InputFormatError.
double parse_rational(const std::string& text);

struct PresetKey {
  std::string name;
  std::map<std::string, double> params;
};

/// Splits "name:k=v,k=v". Throws InputFormatError.
PresetKey parse_preset_key(const std::string& key);

struct PresetInfo {
  std::string key;
  std::string description;
};

/// Every family with its default parameters, for help text.
std::vector<PresetInfo> preset_catalog();

/// Keys of all concrete RMM presets used by the property sweeps.
std::vector<std::string> standard_preset_keys();
/// Keys of the symmetric presets among standard_preset_keys().
std::vector<std::string> symmetric_preset_keys();
std::vector<std::string> figure1_keys();
std::vector<std::string> figure2_keys();

/// Generator pair of an RMM preset. Throws InputFormatError for unknown keys
/// and MathDomainError for invalid parameters.
std::pair<Generator, Generator> preset_generators(const std::string& key);
RmmCopula rmm_preset(const std::string& key);
/// "mm:<rmm key>" or a plain RMM key; the maxmin copula is the reflection.
MaxminCopula maxmin_preset(const std::string& key);
/// "diag:w", "diag:pi", "diag:efgm:a=..", "diag:three-piece", "diag:tent-halframp",
/// or any RMM key whose diagonal is piecewise polynomial.
DiagonalSection diagonal_preset(const std::string& key);

/// Frequently used generators.
Generator w_generator();
Generator tent_generator();                     // min{t, 1 - t}
Generator efgm_generator(double a);             // a t (1 - t)
Generator half_ramp_generator(double mu);       // mu - t on (0, mu], 0 after

}  // namespace rmmcop
