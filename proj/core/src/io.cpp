#include "rmmcop/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace rmmcop {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw InputFormatError("document must be a JSON object");
    return doc;
  } catch (const json::exception& e) {
    throw InputFormatError(std::string("malformed JSON: ") + e.what());
  }
}

void check_version(const json& doc) {
  if (!doc.contains("version")) return;
  if (!doc["version"].is_number_integer() || doc["version"].get<int>() != kFileFormatVersion) {
    throw InputFormatError("unsupported version (expected 1)");
  }
}

double number_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw InputFormatError(where + ": missing numeric \"" + key + "\"");
  }
  const double x = obj[key].get<double>();
  if (!std::isfinite(x)) throw InputFormatError(where + ": \"" + key + "\" is not finite");
  return x;
}

Polynomial coefficient_list(const json& arr, std::size_t max_len, const std::string& where) {
  if (!arr.is_array() || arr.empty() || arr.size() > max_len) {
    throw InputFormatError(where + ": coefficient list must hold 1 to " + std::to_string(max_len) + " numbers");
  }
  std::vector<double> c;
  for (const json& x : arr) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) throw InputFormatError(where + ": non-numeric coefficient");
    c.push_back(x.get<double>());
  }
  return Polynomial(std::move(c));
}

std::vector<Piece> piece_list(const json& arr, bool allow_radical, std::size_t max_coeffs) {
  if (!arr.is_array() || arr.empty()) throw InputFormatError("piece list must be a non-empty array");
  std::vector<Piece> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    const std::string where = "piece " + std::to_string(i);
    if (!p.is_object()) throw InputFormatError(where + ": not an object");
    Piece q;
    q.lo = number_field(p, "from", where);
    q.hi = number_field(p, "to", where);
    if (!p.contains("coeffs")) throw InputFormatError(where + ": missing \"coeffs\"");
    q.poly = coefficient_list(p["coeffs"], max_coeffs, where);
    if (p.contains("radicand")) {
      if (!allow_radical) throw InputFormatError(where + ": square-root pieces are not allowed here");
      q.radicand = coefficient_list(p["radicand"], 7, where);
    }
    if (p.contains("sign")) {
      const double s = number_field(p, "sign", where);
      if (s != 1.0 && s != -1.0) throw InputFormatError(where + ": \"sign\" must be 1 or -1");
      q.root_sign = s;
    }
    if (!(q.lo < q.hi)) throw InputFormatError(where + ": empty or reversed interval");
    if (i == 0 && q.lo != 0.0) throw InputFormatError("first piece must start at 0");
    if (i > 0) {
      const double prev = out.back().hi;
      if (q.lo > prev) throw InputFormatError(where + ": gap before this piece");
      if (q.lo < prev) throw InputFormatError(where + ": overlaps the previous piece");
    }
    out.push_back(std::move(q));
  }
  if (out.back().hi != 1.0) throw InputFormatError("last piece must end at 1");
  return out;
}

// JSON number rounded to 12 significant digits; non-finite values become strings.
json rounded(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return std::stod(format_number(x));
}

json coeffs_json(const Polynomial& p) {
  json arr = json::array();
  for (double c : p.coeffs()) arr.push_back(c);
  if (arr.empty()) arr.push_back(0.0);
  return arr;
}

json pieces_json(const std::vector<Piece>& pieces) {
  json arr = json::array();
  for (const Piece& p : pieces) {
    json obj{{"from", p.lo}, {"to", p.hi}, {"coeffs", coeffs_json(p.poly)}};
    if (p.has_radical()) {
      obj["radicand"] = coeffs_json(p.radicand);
      obj["sign"] = p.root_sign;
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

Generator generator_from(const json& doc) {
  if (!doc.is_object() || !doc.contains("pieces")) throw InputFormatError("generator needs \"pieces\"");
  std::vector<Piece> pieces = piece_list(doc["pieces"], true, 4);
  if (doc.contains("zero_limit")) {
    const double z = number_field(doc, "zero_limit", "generator");
    return Generator(std::move(pieces), z);
  }
  return Generator(std::move(pieces));
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Generator parse_generator(const std::string& text) {
  const json doc = parse_document(text);
  check_version(doc);
  return generator_from(doc);
}

std::string generator_to_json(const Generator& gen) {
  json doc{{"version", kFileFormatVersion}, {"zero_limit", gen.zero_limit()}, {"pieces", pieces_json(gen.pieces())}};
  return doc.dump(2);
}

std::pair<Generator, Generator> parse_generator_pair(const std::string& text) {
  const json doc = parse_document(text);
  check_version(doc);
  if (doc.contains("f") || doc.contains("g")) {
    if (!doc.contains("f") || !doc.contains("g")) throw InputFormatError("pair document needs both \"f\" and \"g\"");
    return {generator_from(doc["f"]), generator_from(doc["g"])};
  }
  Generator f = generator_from(doc);
  return {f, f};
}

MaxminGenerators parse_maxmin_generators(const std::string& text) {
  const json doc = parse_document(text);
  check_version(doc);
  for (const char* key : {"phi", "psi"}) {
    if (!doc.contains(key) || !doc[key].is_object() || !doc[key].contains("pieces")) {
      throw InputFormatError(std::string("maxmin document needs \"") + key + "\" with \"pieces\"");
    }
  }
  return MaxminGenerators(PiecewiseFunction(piece_list(doc["phi"]["pieces"], true, 4)),
                          PiecewiseFunction(piece_list(doc["psi"]["pieces"], true, 4)));
}

DiagonalSection parse_diagonal(const std::string& text) {
  const json doc = parse_document(text);
  check_version(doc);
  if (!doc.contains("delta_pieces")) throw InputFormatError("diagonal document needs \"delta_pieces\"");
  DiagonalSection d(piece_list(doc["delta_pieces"], false, 7));
  const std::string err = d.structure_error();
  if (!err.empty()) throw InputFormatError("diagonal: " + err);
  return d;
}

std::string diagonal_to_json(const DiagonalSection& d) {
  json doc{{"version", kFileFormatVersion}, {"delta_pieces", pieces_json(d.pieces())}};
  return doc.dump(2);
}

bool is_diagonal_document(const std::string& text) { return parse_document(text).contains("delta_pieces"); }

bool is_maxmin_document(const std::string& text) {
  const json doc = parse_document(text);
  return doc.contains("phi") && doc.contains("psi");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_samples_csv(std::ostream& os, const SampleSet& samples) {
  os << "u,v,singular\n";
  for (std::size_t i = 0; i < samples.pairs.size(); ++i) {
    os << format_number(samples.pairs[i].u) << ',' << format_number(samples.pairs[i].v) << ','
       << static_cast<int>(samples.singular[i]) << '\n';
  }
}

std::string sample_metadata_json(const SampleSet& samples, const std::string& preset) {
  json doc{{"version", kFileFormatVersion},
           {"preset", preset},
           {"source", samples.source},
           {"n", samples.pairs.size()},
           {"seed", samples.seed},
           {"algorithm", samples.algorithm},
           {"singular_draws", samples.singular_count()}};
  return doc.dump(2);
}

std::vector<CurvePoint> read_samples_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputFormatError("empty sample file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,v" && line != "u,v,singular") throw InputFormatError("sample header must be \"u,v\"");
  std::vector<CurvePoint> out;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a;
    std::string b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) {
      throw InputFormatError("row " + std::to_string(row) + ": expected two columns");
    }
    CurvePoint p;
    try {
      std::size_t ia = 0;
      std::size_t ib = 0;
      p.u = std::stod(a, &ia);
      p.v = std::stod(b, &ib);
      if (ia != a.size() || ib != b.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw InputFormatError("row " + std::to_string(row) + ": non-numeric value");
    }
    if (!(p.u > 0.0 && p.u < 1.0 && p.v > 0.0 && p.v < 1.0)) {
      throw InputFormatError("row " + std::to_string(row) + ": values must lie in (0,1)");
    }
    out.push_back(p);
  }
  return out;
}

void write_recovery_csv(std::ostream& os, const RecoveryResult& result) {
  os << "u,f_u,valid\n";
  for (const RecoveredPoint& p : result.points) {
    os << format_number(p.u) << ',' << (p.valid ? format_number(p.f_u) : std::string("nan")) << ','
       << (p.valid ? 1 : 0) << '\n';
  }
}

std::string recovery_summary_json(const RecoveryResult& result) {
  std::size_t invalid = 0;
  for (const RecoveredPoint& p : result.points) invalid += p.valid ? 0 : 1;
  json doc{{"u_min", rounded(result.u_min)},
           {"anchor_u", rounded(result.anchor_u)},
           {"anchor_f", rounded(result.anchor_f)},
           {"ratio_based", result.ratio_based},
           {"independence", result.independence},
           {"points", result.points.size()},
           {"invalid_points", invalid}};
  if (result.ratio_based) doc["note"] = "generator determined up to a positive scale factor";
  return doc.dump(2);
}

std::string mass_json(const MassDecomposition& m) {
  json doc{{"ac_mass", rounded(m.ac_mass)},
           {"singular_mass", rounded(m.singular_mass)},
           {"zero_set_area", rounded(m.zero_set_area)},
           {"profile_mass", rounded(m.profile_mass)},
           {"profile_points", m.profile.size()}};
  return doc.dump(2);
}

}  // namespace rmmcop
