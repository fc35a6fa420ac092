#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmmcop/rmmcop.hpp"

namespace rmmcop::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string preset;
  std::string file;
  std::string samples;
  std::string out;
  std::string config;
  std::optional<double> u;
  std::optional<double> v;
  double u1 = 0.0;
  double u2 = 1.0;
  double v1 = 0.0;
  double v2 = 1.0;
  double level = 0.0;
  int grid = -1;
  std::size_t n = 0;
  bool n_given = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool check_dhat = false;
  bool ratio = false;
};

// The copula named by --preset or --file: RMM, or maxmin kept alongside its reflection.
struct Model {
  std::string label;
  std::optional<RmmCopula> rmm;
  std::optional<MaxminCopula> maxmin;

  const RmmCopula& reflected() const { return *rmm; }
  double eval(double u, double v) const {
    return maxmin ? eval_maxmin(*maxmin, u, v) : eval_rmm(*rmm, u, v);
  }
};

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

void require_source(const Options& o) {
  if (o.preset.empty() == o.file.empty()) throw InputFormatError("give exactly one of --preset or --file");
}

Model load_model(const Options& o) {
  require_source(o);
  Model m;
  if (!o.preset.empty()) {
    m.label = o.preset;
    if (starts_with(o.preset, "mm:")) {
      m.maxmin.emplace(maxmin_preset(o.preset));
      m.rmm.emplace(reflect_maxmin_to_rmm(*m.maxmin));
    } else {
      m.rmm.emplace(rmm_preset(o.preset));
    }
    return m;
  }
  m.label = o.file;
  const std::string text = read_text_file(o.file);
  if (is_maxmin_document(text)) {
    m.maxmin.emplace(parse_maxmin_generators(text));
    m.rmm.emplace(reflect_maxmin_to_rmm(*m.maxmin));
  } else {
    auto [f, g] = parse_generator_pair(text);
    for (const Generator* gen : {&f, &g}) {
      const std::string err = gen->structure_error();
      if (!err.empty()) throw InputFormatError(err);
    }
    m.rmm.emplace(std::move(f), std::move(g));
  }
  return m;
}

json condition_json(const ConditionResult& c) {
  json j{{"ok", c.ok}, {"detail", c.detail}};
  if (!c.ok && std::isfinite(c.witness)) j["witness"] = std::stod(format_number(c.witness));
  if (c.boundary_case) j["boundary_case"] = true;
  return j;
}

json generator_report(const ValidationReport& r) {
  json j{{"passed", r.passed()}};
  if (!r.structural_error.empty()) {
    j["structural_error"] = r.structural_error;
    return j;
  }
  j["nonnegative"] = condition_json(r.nonnegative);
  j["G1"] = condition_json(r.g1);
  j["G2"] = condition_json(r.g2);
  j["G3"] = condition_json(r.g3);
  if (!r.grid_consistent) j["grid_warning"] = r.grid_detail;
  return j;
}

std::ostream& open_output(const Options& o, std::ofstream& file, std::ostream& out) {
  if (o.out.empty()) return out;
  file.open(o.out, std::ios::binary);
  if (!file) throw InputFormatError("cannot write " + o.out);
  return file;
}

int grid_or(const Options& o, int fallback) {
  const int g = o.grid < 0 ? fallback : o.grid;
  if (g < 1) throw MathDomainError("--grid must be at least 1");
  return g;
}

int cmd_validate(const Options& o, std::ostream& out) {
  require_source(o);
  json report;
  bool structural = false;
  bool passed = true;
  bool maxmin = false;
  std::optional<MaxminGenerators> mm;
  std::optional<std::pair<Generator, Generator>> pair;
  if (!o.preset.empty()) {
    if (starts_with(o.preset, "mm:")) {
      mm.emplace(maxmin_preset(o.preset).generators());
    } else {
      pair.emplace(preset_generators(o.preset));
    }
  } else {
    const std::string text = read_text_file(o.file);
    if (is_maxmin_document(text)) {
      mm.emplace(parse_maxmin_generators(text));
    } else {
      pair.emplace(parse_generator_pair(text));
    }
  }
  if (mm) {
    maxmin = true;
    const MaxminValidationReport r = validate_maxmin(*mm);
    structural = !r.structural_error.empty();
    passed = r.passed();
    report = json{{"passed", passed}};
    if (structural) {
      report["structural_error"] = r.structural_error;
    } else {
      report["F1"] = condition_json(r.f1);
      report["F2"] = condition_json(r.f2);
      report["F3"] = condition_json(r.f3);
    }
  } else {
    const ValidationReport rf = validate_generator(pair->first);
    const ValidationReport rg = validate_generator(pair->second);
    structural = !rf.structural_error.empty() || !rg.structural_error.empty();
    passed = rf.passed() && rg.passed();
    report = json{{"passed", passed}, {"f", generator_report(rf)}, {"g", generator_report(rg)}};
  }
  report["kind"] = maxmin ? "maxmin" : "rmm";
  out << report.dump(2) << '\n';
  if (structural) return kExitInputFormat;
  return passed ? kExitOk : kExitMathDomain;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Model m = load_model(o);
  if (o.u.has_value() != o.v.has_value()) throw InputFormatError("give both --u and --v, or neither");
  if (o.u) {
    out << format_number(m.eval(*o.u, *o.v)) << '\n';
    return kExitOk;
  }
  std::ofstream file;
  std::ostream& os = open_output(o, file, out);
  const int g = grid_or(o, 10);
  os << "u,v,C\n";
  for (int i = 0; i <= g; ++i) {
    for (int j = 0; j <= g; ++j) {
      const double u = static_cast<double>(i) / g;
      const double v = static_cast<double>(j) / g;
      os << format_number(u) << ',' << format_number(v) << ',' << format_number(m.eval(u, v)) << '\n';
    }
  }
  return kExitOk;
}

int cmd_volume(const Options& o, std::ostream& out) {
  const Model m = load_model(o);
  for (double x : {o.u1, o.u2, o.v1, o.v2}) {
    if (!(x >= 0.0 && x <= 1.0)) throw MathDomainError("rectangle corners must lie in [0,1]");
  }
  auto fn = [&](double u, double v) { return m.eval(u, v); };
  out << format_number(rectangle_volume(fn, o.u1, o.u2, o.v1, o.v2)) << '\n';
  return kExitOk;
}

int cmd_density(const Options& o, std::ostream& out) {
  const Model m = load_model(o);
  if (!o.u || !o.v) throw InputFormatError("density needs --u and --v");
  // The maxmin density at (u,v) is the reflected density at (u,1-v).
  const double v = m.maxmin ? 1.0 - *o.v : *o.v;
  const DensityValue d = density(m.reflected(), *o.u, v);
  out << json{{"density", std::stod(format_number(d.value))}, {"flagged", d.flagged}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_mass(const Options& o, std::ostream& out) {
  const Model m = load_model(o);
  const MassDecomposition md = mass_decomposition(m.reflected(), grid_or(o, 201));
  out << mass_json(md) << '\n';
  if (!o.out.empty()) {
    std::ofstream file;
    std::ostream& os = open_output(o, file, out);
    os << "u,v,jump\n";
    for (const ProfilePoint& p : md.profile) {
      const double v = m.maxmin ? 1.0 - p.v : p.v;
      os << format_number(p.u) << ',' << format_number(v) << ',' << format_number(p.jump) << '\n';
    }
  }
  return kExitOk;
}

int cmd_levelset(const Options& o, std::ostream& out) {
  const Model m = load_model(o);
  const int g = grid_or(o, 101);
  std::vector<CurvePoint> pts;
  if (o.level == 0.0) {
    pts = m.maxmin ? maxmin_singular_curve(*m.maxmin, g) : boundary_curve(*m.rmm, g).boundary;
  } else {
    if (m.maxmin) throw MathDomainError("positive level sets are available for RMM copulas only");
    pts = level_curve(*m.rmm, o.level, g);
  }
  std::ofstream file;
  std::ostream& os = open_output(o, file, out);
  os << "u,v\n";
  for (const CurvePoint& p : pts) os << format_number(p.u) << ',' << format_number(p.v) << '\n';
  return kExitOk;
}

DiagonalSection load_diagonal(const Options& o) {
  require_source(o);
  if (!o.preset.empty()) {
    if (starts_with(o.preset, "mm:")) throw MathDomainError("diagonal sections are computed for RMM presets");
    return diagonal_preset(o.preset);
  }
  const std::string text = read_text_file(o.file);
  if (is_diagonal_document(text)) return parse_diagonal(text);
  auto [f, g] = parse_generator_pair(text);
  return diagonal_of(RmmCopula(std::move(f), std::move(g)));
}

int cmd_diagonal(const Options& o, std::ostream& out) {
  const DiagonalSection d = load_diagonal(o);
  const DiagonalReport r = in_D_hat(d);
  if (!r.structural_error.empty()) throw InputFormatError(r.structural_error);
  if (!o.out.empty()) {
    std::ofstream file;
    std::ostream& os = open_output(o, file, out);
    const int g = grid_or(o, 100);
    os << "t,delta\n";
    for (int i = 0; i <= g; ++i) {
      const double t = static_cast<double>(i) / g;
      os << format_number(t) << ',' << format_number(d(t)) << '\n';
    }
  }
  if (o.check_dhat) {
    if (r.member()) {
      out << "member of D-hat\n";
      return kExitOk;
    }
    out << "not a member of D-hat: " << r.first_failure() << '\n';
    return kExitMathDomain;
  }
  json report{{"is_diagonal", r.is_diagonal()},
              {"member_of_D_hat", r.member()},
              {"a_delta", std::stod(format_number(d.a_delta()))},
              {"D1", condition_json(r.d1)},
              {"D2", condition_json(r.d2)},
              {"D3", condition_json(r.d3)},
              {"D4", condition_json(r.d4)},
              {"below_square", condition_json(r.below_square)},
              {"delta_sharp", condition_json(r.sharp)},
              {"delta_hat", condition_json(r.hat)}};
  if (r.member()) report["unique_srmm"] = srmm_uniqueness_check(d);
  out << report.dump(2) << '\n';
  return kExitOk;
}

int cmd_recover(const Options& o, std::ostream& out, std::ostream& err) {
  std::unique_ptr<CopulaEvaluator> evaluator;
  if (!o.samples.empty()) {
    std::ifstream in(o.samples, std::ios::binary);
    if (!in) throw InputFormatError("cannot open " + o.samples);
    evaluator = std::make_unique<EmpiricalCopula>(read_samples_csv(in));
  } else {
    const Model m = load_model(o);
    if (m.maxmin) throw MathDomainError("recovery applies to RMM copulas");
    if (o.n_given) {
      SamplerOptions so;
      so.threads = o.threads;
      evaluator = std::make_unique<EmpiricalCopula>(sample_rmm(*m.rmm, o.n, o.seed, so).pairs);
    } else {
      evaluator = std::make_unique<AnalyticEvaluator<RmmCopula>>(*m.rmm);
    }
  }
  RecoveryOptions ro;
  ro.grid_n = grid_or(o, 100);
  ro.allow_ratio = o.ratio;
  const RecoveryResult result = recover_generator(*evaluator, ro);
  if (o.out.empty()) {
    write_recovery_csv(out, result);
    err << recovery_summary_json(result) << '\n';
  } else {
    std::ofstream file;
    write_recovery_csv(open_output(o, file, out), result);
    out << recovery_summary_json(result) << '\n';
  }
  return kExitOk;
}

void write_sample_bundle(const std::string& path, const SampleSet& s, const std::string& label) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw InputFormatError("cannot write " + path);
  write_samples_csv(csv, s);
  std::ofstream meta(path + ".meta.json", std::ios::binary);
  if (!meta) throw InputFormatError("cannot write " + path + ".meta.json");
  meta << sample_metadata_json(s, label) << '\n';
}

int cmd_sample(const Options& o, std::ostream& out) {
  const Model m = load_model(o);
  const std::size_t n = o.n_given ? o.n : 1000;
  SampleSet s;
  s.seed = o.seed;
  s.source = m.label;
  if (n > 0) {
    SamplerOptions so;
    so.threads = o.threads;
    so.source = m.label;
    s = m.maxmin ? sample_maxmin(*m.maxmin, n, o.seed, so) : sample_rmm(*m.rmm, n, o.seed, so);
  }
  if (o.out.empty()) {
    write_samples_csv(out, s);
  } else {
    write_sample_bundle(o.out, s, m.label);
  }
  return kExitOk;
}

int cmd_figures(const Options& o, std::ostream& out) {
  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path("figures") : std::filesystem::path(o.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputFormatError("cannot create " + dir.string());
  const std::size_t n = o.n_given ? o.n : 10000;
  SamplerOptions so;
  so.threads = o.threads;
  int index = 0;
  for (const auto& [figure, keys] : {std::pair{"figure1", figure1_keys()}, std::pair{"figure2", figure2_keys()}}) {
    index = 0;
    for (const std::string& key : keys) {
      ++index;
      const FigureDataset ds = figure_dataset(key, n, o.seed, so);
      const std::string name = std::string(figure) + "_" + std::to_string(index) + ".csv";
      write_sample_bundle((dir / name).string(), ds.samples, key);
      out << name << ',' << key << ",singular_mass=" << format_number(ds.singular_mass)
          << ",singular_draws=" << ds.samples.singular_count() << '\n';
    }
  }
  return kExitOk;
}

int cmd_presets(std::ostream& out) {
  for (const PresetInfo& p : preset_catalog()) out << p.key << '\t' << p.description << '\n';
  return kExitOk;
}

std::string preset_help() {
  std::ostringstream os;
  os << "Preset keys (prefix \"mm:\" for the maxmin reflection, \"diag:\" for diagonal-only keys):\n";
  for (const PresetInfo& p : preset_catalog()) os << "  " << p.key << "  " << p.description << '\n';
  return os.str();
}

// Appends flags from a JSON config object unless given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (starts_with(args[i], "--config=")) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  json cfg;
  try {
    cfg = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw InputFormatError(std::string("malformed config: ") + e.what());
  }
  if (!cfg.is_object()) throw InputFormatError("config must be a JSON object");
  auto given = [&](const std::string& flag) {
    for (const std::string& a : args) {
      if (a == flag || starts_with(a, (flag + "=").c_str())) return true;
    }
    return false;
  };
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (key == "config" || given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_number_integer()) {
      args.push_back(flag);
      args.push_back(std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      args.push_back(flag);
      args.push_back(format_number(value.get<double>()));
    } else {
      throw InputFormatError("config value for \"" + key + "\" must be a scalar");
    }
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Reflected maxmin and maxmin copulas from generator functions", "rmmcop"};
  app.require_subcommand(1);
  app.footer(preset_help());
  app.set_version_flag("--version", "rmmcop 1.0.0");

  auto source = [&](CLI::App* sub) {
    sub->add_option("--preset", o.preset, "Preset key");
    sub->add_option("--file", o.file, "Generator, generator-pair or maxmin JSON file");
    sub->add_option("--config", o.config, "JSON object of flag values; command-line flags win");
  };
  auto point = [&](CLI::App* sub) {
    sub->add_option("--u", o.u, "First coordinate in [0,1]");
    sub->add_option("--v", o.v, "Second coordinate in [0,1]");
  };
  auto grid = [&](CLI::App* sub, const char* what) { sub->add_option("--grid", o.grid, what); };
  auto output = [&](CLI::App* sub, const char* what) { sub->add_option("--out", o.out, what); };
  auto sampling = [&](CLI::App* sub) {
    sub->add_option_function<std::size_t>(
        "--n", [&](const std::size_t& n) { o.n = n; o.n_given = true; }, "Number of draws");
    sub->add_option("--seed", o.seed, "64-bit seed");
    sub->add_option("--threads", o.threads, "Worker cap (0 = hardware concurrency)");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check the generator conditions exactly");
  source(validate);
  CLI::App* eval = app.add_subcommand("eval", "Evaluate C(u,v), or a CSV grid without --u/--v");
  source(eval);
  point(eval);
  grid(eval, "Grid divisions for CSV output (default 10)");
  output(eval, "CSV output file");
  CLI::App* volume = app.add_subcommand("volume", "C-volume of [u1,u2]x[v1,v2]");
  source(volume);
  volume->add_option("--u1", o.u1, "Left edge");
  volume->add_option("--u2", o.u2, "Right edge");
  volume->add_option("--v1", o.v1, "Bottom edge");
  volume->add_option("--v2", o.v2, "Top edge");
  CLI::App* dens = app.add_subcommand("density", "Absolutely continuous density at (u,v)");
  source(dens);
  point(dens);
  CLI::App* mass = app.add_subcommand("mass", "Absolutely continuous and singular masses");
  source(mass);
  grid(mass, "Samples of the singular profile (default 201)");
  output(mass, "CSV file for the singular profile u,v,jump");
  CLI::App* levelset = app.add_subcommand("levelset", "Zero-level curve or level curve C = t");
  source(levelset);
  levelset->add_option("--t", o.level, "Level in [0,1] (0 = zero-level curve)");
  grid(levelset, "Number of samples (default 101)");
  output(levelset, "CSV output file");
  CLI::App* diag = app.add_subcommand("diagonal", "Diagonal section checks");
  source(diag);
  diag->add_flag("--check-dhat", o.check_dhat, "Print only the membership verdict");
  grid(diag, "Grid divisions for --out (default 100)");
  output(diag, "CSV file t,delta");
  CLI::App* recover = app.add_subcommand("recover", "Recover a symmetric generator from a copula or a sample");
  source(recover);
  recover->add_option("--samples", o.samples, "CSV sample with header u,v");
  recover->add_flag("--ratio", o.ratio, "Allow recovery up to scale when u_min = 0");
  grid(recover, "Recovery grid i/grid (default 100)");
  output(recover, "CSV output file u,f_u,valid");
  sampling(recover);
  CLI::App* sample = app.add_subcommand("sample", "Draw a random sample");
  source(sample);
  sampling(sample);
  output(sample, "CSV output file (a .meta.json sidecar is written next to it)");
  CLI::App* figures = app.add_subcommand("figures", "Write the scatterplot datasets");
  figures->add_option("--config", o.config, "JSON object of flag values; command-line flags win");
  sampling(figures);
  output(figures, "Output directory (default figures)");
  CLI::App* presets = app.add_subcommand("presets", "List preset keys");

  try {
    const std::vector<std::string> args = merge_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitInputFormat;
    }
    if (validate->parsed()) return cmd_validate(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (volume->parsed()) return cmd_volume(o, out);
    if (dens->parsed()) return cmd_density(o, out);
    if (mass->parsed()) return cmd_mass(o, out);
    if (levelset->parsed()) return cmd_levelset(o, out);
    if (diag->parsed()) return cmd_diagonal(o, out);
    if (recover->parsed()) return cmd_recover(o, out, err);
    if (sample->parsed()) return cmd_sample(o, out);
    if (figures->parsed()) return cmd_figures(o, out);
    if (presets->parsed()) return cmd_presets(out);
    return kExitInputFormat;
  } catch (const InputFormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputFormat;
  } catch (const MathDomainError& e) {
    err << "math domain error: " << e.what() << '\n';
    return kExitMathDomain;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (achieved " << format_number(e.achieved_error()) << ")\n";
    return kExitNumerical;
  }
}

}  // namespace rmmcop::cli
