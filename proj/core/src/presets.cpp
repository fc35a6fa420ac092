#include "rmmcop/presets.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>

namespace rmmcop {

namespace {

Piece poly_piece(double lo, double hi, Polynomial p) { return Piece{lo, hi, std::move(p), Polynomial{}, 1.0}; }

// a t on [0, c], a' (1 - t) on [c, 1] with the slopes fixed by continuity.
Generator rise_then_fall(double peak_at, double slope) {
  return Generator({poly_piece(0.0, peak_at, Polynomial{0.0, slope}),
                    poly_piece(peak_at, 1.0, Polynomial{1.0, -1.0})});
}

Generator scaled_tent(double a) {
  return Generator({poly_piece(0.0, 0.5, Polynomial{0.0, a}), poly_piece(0.5, 1.0, Polynomial{a, -a})});
}

// delta on (0, delta], t on [delta, 1/2], 1 - t after.
Generator plateau_generator(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw MathDomainError("delta must lie in (0, 1/2)");
  return Generator({poly_piece(0.0, delta, Polynomial{delta}), poly_piece(delta, 0.5, Polynomial{0.0, 1.0}),
                    poly_piece(0.5, 1.0, Polynomial{1.0, -1.0})},
                   delta);
}

// constant c on (0, c'], then 1 - t, with c = 1 - c'.
Generator flat_then_fall(double level) {
  return Generator({poly_piece(0.0, 1.0 - level, Polynomial{level}), poly_piece(1.0 - level, 1.0, Polynomial{1.0, -1.0})},
                   level);
}

Generator ex3a_generator(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw MathDomainError("parameter must lie in (0,1)");
  return rise_then_fall(theta, 1.0 / theta - 1.0);
}

double param(const PresetKey& k, const std::string& name, double fallback) {
  auto it = k.params.find(name);
  return it == k.params.end() ? fallback : it->second;
}

void require_params(const PresetKey& k, std::initializer_list<const char*> allowed) {
  for (const auto& [name, value] : k.params) {
    bool known = false;
    for (const char* a : allowed) known = known || name == a;
    if (!known) throw InputFormatError("unknown parameter '" + name + "' for preset " + k.name);
  }
}

using Pair = std::pair<Generator, Generator>;

Pair symmetric(Generator f) { return {f, f}; }

struct Family {
  const char* name;
  const char* example_key;
  const char* description;
  std::function<Pair(const PresetKey&)> build;
};

const std::vector<Family>& families() {
  static const std::vector<Family> list = {
      {"pi", "pi", "independence copula uv (f = g = 0)",
       [](const PresetKey& k) { require_params(k, {}); return symmetric(Generator()); }},
      {"w", "w", "lower Frechet bound max{0,u+v-1} (f = g = 1 - t, jump at 0)",
       [](const PresetKey& k) { require_params(k, {}); return symmetric(w_generator()); }},
      {"efgm", "efgm:a=0.5", "EFGM copula uv - a^2 uv(1-u)(1-v) (f = g = a t(1-t))",
       [](const PresetKey& k) {
         require_params(k, {"a"});
         return symmetric(efgm_generator(param(k, "a", 0.5)));
       }},
      {"tent-efgm", "tent-efgm:a=0.4,b=0.6", "absolutely continuous pair f = a min{t,1-t}, g = b t(1-t)",
       [](const PresetKey& k) {
         require_params(k, {"a", "b"});
         return Pair{scaled_tent(param(k, "a", 0.4)), efgm_generator(param(k, "b", 0.6))};
       }},
      {"ex3a", "ex3a:theta=1/3,eta=1/3",
       "f = (1/theta - 1)t then 1 - t, g likewise with eta; singular segment on u + v = 1",
       [](const PresetKey& k) {
         require_params(k, {"theta", "eta"});
         return Pair{ex3a_generator(param(k, "theta", 1.0 / 3.0)), ex3a_generator(param(k, "eta", 1.0 / 3.0))};
       }},
      {"ex3b", "ex3b:delta=1/3", "symmetric, f = delta on (0,delta], t up to 1/2, then 1 - t; two singular arcs",
       [](const PresetKey& k) {
         require_params(k, {"delta"});
         return symmetric(plateau_generator(param(k, "delta", 1.0 / 3.0)));
       }},
      {"ex3c", "ex3c:mu=1", "f = t(1-t), g = mu - t on (0,mu]; singular arc v = mu(1-u)/(2-u)",
       [](const PresetKey& k) {
         require_params(k, {"mu"});
         return Pair{efgm_generator(1.0), half_ramp_generator(param(k, "mu", 1.0))};
       }},
      {"tent", "tent", "symmetric, f = min{t,1-t}; diagonal max{0,2t-1}",
       [](const PresetKey& k) { require_params(k, {}); return symmetric(tent_generator()); }},
      {"tent-halframp", "tent-halframp", "f = min{t,1-t}, g = max{0,1/2-t}; diagonal hat transform not monotone",
       [](const PresetKey& k) {
         require_params(k, {});
         return Pair{tent_generator(), half_ramp_generator(0.5)};
       }},
      {"halframp", "halframp", "symmetric, f = max{0,1/2-t} on (0,1]",
       [](const PresetKey& k) { require_params(k, {}); return symmetric(half_ramp_generator(0.5)); }},
      {"fig2-1", "fig2-1", "f = 2t then 1 - t (peak 1/3), g = 2/3 - t on (0,2/3]",
       [](const PresetKey& k) {
         require_params(k, {});
         return Pair{rise_then_fall(1.0 / 3.0, 2.0), half_ramp_generator(2.0 / 3.0)};
       }},
      {"fig2-2", "fig2-2", "f = 1/2 - t on (0,1/2], g = 2/3 - t on (0,2/3]",
       [](const PresetKey& k) {
         require_params(k, {});
         return Pair{half_ramp_generator(0.5), half_ramp_generator(2.0 / 3.0)};
       }},
      {"fig2-3", "fig2-3", "symmetric, f = 1/2 on (0,1/2], then 1 - t",
       [](const PresetKey& k) { require_params(k, {}); return symmetric(flat_then_fall(0.5)); }},
      {"fig2-4", "fig2-4", "f = 2t then 1 - t (peak 1/3), g = t(1-t)",
       [](const PresetKey& k) {
         require_params(k, {});
         return Pair{rise_then_fall(1.0 / 3.0, 2.0), efgm_generator(1.0)};
       }},
      {"fig2-5", "fig2-5", "f = t/2 then 1 - t (peak 2/3), g = t(1-t)",
       [](const PresetKey& k) {
         require_params(k, {});
         return Pair{rise_then_fall(2.0 / 3.0, 0.5), efgm_generator(1.0)};
       }},
      {"fig2-6", "fig2-6", "f = 1/3 on (0,1/3], t up to 1/2, then 1 - t; g = t(1-t)",
       [](const PresetKey& k) {
         require_params(k, {});
         return Pair{plateau_generator(1.0 / 3.0), efgm_generator(1.0)};
       }},
  };
  return list;
}

DiagonalSection w_diagonal() {
  return DiagonalSection({poly_piece(0.0, 0.5, Polynomial{}), poly_piece(0.5, 1.0, Polynomial{-1.0, 2.0})});
}

}  // namespace

double parse_rational(const std::string& text) {
  auto parse_one = [&](const std::string& s) {
    if (s.empty()) throw InputFormatError("empty number in '" + text + "'");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw InputFormatError("not a number: '" + text + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_one(text);
  const double den = parse_one(text.substr(slash + 1));
  if (den == 0.0) throw InputFormatError("zero denominator in '" + text + "'");
  return parse_one(text.substr(0, slash)) / den;
}

PresetKey parse_preset_key(const std::string& key) {
  PresetKey out;
  const auto colon = key.find(':');
  out.name = key.substr(0, colon);
  if (out.name.empty()) throw InputFormatError("empty preset name");
  if (colon == std::string::npos) return out;
  std::string rest = key.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputFormatError("malformed preset parameter '" + item + "'");
    out.params[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<PresetInfo> preset_catalog() {
  std::vector<PresetInfo> out;
  for (const Family& f : families()) out.push_back({f.example_key, f.description});
  out.push_back({"mm:<key>", "maxmin copula obtained by reflecting any RMM preset"});
  out.push_back({"diag:w", "diagonal max{0,2t-1}"});
  out.push_back({"diag:pi", "diagonal t^2"});
  out.push_back({"diag:efgm:a=0.5", "diagonal t^2 - a^2 t^2 (1-t)^2"});
  out.push_back({"diag:three-piece", "diagonal 0; 2t - 1/2; t^2 (sharp monotone, hat not)"});
  out.push_back({"diag:tent-halframp", "diagonal 0; 2t^2 - t/2; t^2 of the tent-halframp copula"});
  out.push_back({"diag:<rmm key>", "exact diagonal of any polynomial RMM preset"});
  return out;
}

std::vector<std::string> standard_preset_keys() {
  return {"pi",         "w",          "efgm:a=0.5",
          "tent-efgm:a=0.4,b=0.6",         "ex3a:theta=1/3,eta=1/3",
          "ex3a:theta=1/3,eta=2/3",   "ex3a:theta=2/3,eta=2/3",
          "ex3b:delta=1/3",           "ex3c:mu=1",
          "ex3c:mu=1/2",              "tent",
          "tent-halframp",  "halframp",  "fig2-1",
          "fig2-2",     "fig2-3",     "fig2-4",
          "fig2-5",     "fig2-6"};
}

std::vector<std::string> symmetric_preset_keys() {
  return {"pi", "w", "efgm:a=0.5", "ex3a:theta=1/3,eta=1/3", "ex3a:theta=2/3,eta=2/3",
          "ex3b:delta=1/3", "tent", "halframp", "fig2-3"};
}

std::vector<std::string> figure1_keys() {
  return {"ex3a:theta=1/3,eta=1/3", "ex3a:theta=1/3,eta=2/3", "ex3a:theta=2/3,eta=2/3",
          "ex3b:delta=1/3", "ex3c:mu=1", "ex3c:mu=1/2"};
}

std::vector<std::string> figure2_keys() {
  return {"fig2-1", "fig2-2", "fig2-3", "fig2-4", "fig2-5", "fig2-6"};
}

std::pair<Generator, Generator> preset_generators(const std::string& key) {
  const PresetKey k = parse_preset_key(key);
  for (const Family& f : families()) {
    if (k.name == f.name) return f.build(k);
  }
  throw InputFormatError("unknown preset '" + key + "'");
}

RmmCopula rmm_preset(const std::string& key) {
  auto [f, g] = preset_generators(key);
  return RmmCopula(std::move(f), std::move(g));
}

MaxminCopula maxmin_preset(const std::string& key) {
  const std::string inner = key.rfind("mm:", 0) == 0 ? key.substr(3) : key;
  return reflect_rmm_to_maxmin(rmm_preset(inner));
}

DiagonalSection diagonal_preset(const std::string& key) {
  const std::string inner = key.rfind("diag:", 0) == 0 ? key.substr(5) : key;
  if (inner == "w") return w_diagonal();
  if (inner == "pi") return DiagonalSection({poly_piece(0.0, 1.0, Polynomial{0.0, 0.0, 1.0})});
  if (inner == "three-piece") {
    const double knot = 1.0 - std::sqrt(2.0) / 2.0;
    return DiagonalSection({poly_piece(0.0, 0.25, Polynomial{}), poly_piece(0.25, knot, Polynomial{-0.5, 2.0}),
                            poly_piece(knot, 1.0, Polynomial{0.0, 0.0, 1.0})});
  }
  if (inner == "tent-halframp") {
    return DiagonalSection({poly_piece(0.0, 0.25, Polynomial{}),
                            poly_piece(0.25, 0.5, Polynomial{0.0, -0.5, 2.0}),
                            poly_piece(0.5, 1.0, Polynomial{0.0, 0.0, 1.0})});
  }
  const PresetKey k = parse_preset_key(inner);
  if (k.name == "efgm") {
    require_params(k, {"a"});
    const double a = param(k, "a", 0.5);
    const double a2 = a * a;
    return DiagonalSection({poly_piece(0.0, 1.0, Polynomial{0.0, 0.0, 1.0 - a2, 2.0 * a2, -a2})});
  }
  return diagonal_of(rmm_preset(inner));
}

Generator w_generator() { return Generator({poly_piece(0.0, 1.0, Polynomial{1.0, -1.0})}, 1.0); }

Generator tent_generator() { return rise_then_fall(0.5, 1.0); }

Generator efgm_generator(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw MathDomainError("EFGM parameter must lie in [0,1]");
  return Generator::polynomial(Polynomial{0.0, a, -a});
}

Generator half_ramp_generator(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw MathDomainError("ramp end must lie in (0,1]");
  if (mu == 1.0) return w_generator();
  return Generator({poly_piece(0.0, mu, Polynomial{mu, -1.0}), poly_piece(mu, 1.0, Polynomial{})}, mu);
}

}  // namespace rmmcop
