#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rmmcop/diagonal.hpp"
#include "rmmcop/generator.hpp"
#include "rmmcop/inference.hpp"
#include "rmmcop/measure.hpp"
#include "rmmcop/sampler.hpp"

namespace rmmcop {

inline constexpr int kFileFormatVersion = 1;

/// Fixed 12-significant-digit rendering used by every text output.
std::string format_number(double x);

/// Generator document:
///   {"version": 1, "zero_limit": z, "pieces": [{"from": a, "to": b, "coeffs": [c0, ...],
///    "radicand": [r0, ...], "sign": +-1}, ...]}
/// "zero_limit", "radicand" and "sign" are optional. Pieces must partition
/// [0,1] with no gap or overlap. Throws InputFormatError on malformed input.
Generator parse_generator(const std::string& text);
std::string generator_to_json(const Generator& gen);

/// A single generator document (symmetric pair) or {"version": 1, "f": {...}, "g": {...}}.
std::pair<Generator, Generator> parse_generator_pair(const std::string& text);

/// {"version": 1, "phi": {"pieces": [...]}, "psi": {"pieces": [...]}}.
MaxminGenerators parse_maxmin_generators(const std::string& text);

/// Diagonal document: {"version": 1, "delta_pieces": [{"from", "to", "coeffs"}, ...]}.
DiagonalSection parse_diagonal(const std::string& text);
std::string diagonal_to_json(const DiagonalSection& d);

/// True when the document has a top-level "delta_pieces" key.
bool is_diagonal_document(const std::string& text);
/// True when the document has top-level "phi" and "psi" keys.
bool is_maxmin_document(const std::string& text);

/// Reads a whole file; throws InputFormatError when it cannot be opened.
std::string read_text_file(const std::string& path);

/// Header "u,v,singular", one row per draw.
void write_samples_csv(std::ostream& os, const SampleSet& samples);
/// Structured-text sidecar with preset, n, seed and the generator algorithm id.
std::string sample_metadata_json(const SampleSet& samples, const std::string& preset);

/// Reads "u,v" (an extra "singular" column is ignored). Values must lie in (0,1).
std::vector<CurvePoint> read_samples_csv(std::istream& is);

/// Header "u,f_u,valid".
void write_recovery_csv(std::ostream& os, const RecoveryResult& result);
std::string recovery_summary_json(const RecoveryResult& result);

std::string mass_json(const MassDecomposition& m);

}  // namespace rmmcop
