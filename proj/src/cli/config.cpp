#include "bilmax/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "bilmax/partition.hpp"

namespace bilmax::cli {

namespace {

constexpr double kDerive = std::numeric_limits<double>::quiet_NaN();

struct KindInfo {
  ExperimentKind kind;
  const char* name;
  std::set<std::string> sections;
  std::map<std::string, double> params;
  std::map<std::string, double> tolerances;
};

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> table = {
      {ExperimentKind::decompose, "decompose", {"symbol", "grid", "wavelet"}, {},
       {{"reconstruction", 5e-3}}},
      {ExperimentKind::wavelet_decay, "wavelet-decay", {"symbol", "wavelet", "pieces"},
       {{"bound", kDerive}}, {{"slope", kDerive}}},
      {ExperimentKind::maximal, "maximal", {"symbol", "grid", "dilation", "ensemble"},
       {{"majorization_floor", 1e-6}},
       {{"identity", 1e-8}, {"ratio_max", kDerive}, {"majorization_stability", kDerive}}},
      {ExperimentKind::gfunction, "gfunction", {"symbol", "grid", "dilation", "ensemble"},
       {{"ftc_points", 10}, {"ftc_nodes", 64}, {"ftc_factor", 2.0}, {"ftc_strength", 0.1}},
       {{"domination", 0.02}, {"ftc", 0.01}}},
      {ExperimentKind::kernel_decay, "kernel-decay", {"symbol", "grid"},
       {{"r_lo", 2.0}, {"r_hi", 14.0}, {"bins", 12}, {"bound", kDerive}}, {{"slope", 0.4}}},
      {ExperimentKind::convergence, "convergence", {"symbol", "grid"},
       {{"t_max", 1.0}, {"halvings", 6}, {"oracle_points", 0}},
       {{"threshold", 1e-2}, {"slack", 0.05}, {"oracle_factor", 2.0}}},
      {ExperimentKind::bessel_check, "bessel-check", {},
       {{"r_lo", 0.1},
        {"r_hi", 8.0},
        {"count", 80},
        {"nodes", 4096},
        {"normalize_at", 1.0},
        {"control_shift", 0.5},
        {"control_normalize_at", 0.0}},
       {{"deviation", 1e-8}, {"control", 1e-3}}},
      {ExperimentKind::norm_ratio, "norm-ratio", {"symbol", "grid", "dilation", "ensemble", "pieces"},
       {{"t", 1.0}, {"epsilon", 0.1}}, {{"slope", 0.5}, {"ratio_max", kDerive}}},
  };
  return table;
}

const KindInfo& info(ExperimentKind kind) {
  for (const auto& k : kinds())
    if (k.kind == kind) return k;
  throw ConfigError("unknown experiment kind");
}

// Typed access to one JSON object that remembers which keys were read, so
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(path_, "must be an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key)) fail(at(key), "is required");
    return obj_.at(key);
  }

  double number(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_number()) fail(at(key), "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(at(key), "must be finite");
    return x;
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  long long integer(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_number_integer()) fail(at(key), "must be an integer");
    return v.get<long long>();
  }
  long long integer(const std::string& key, long long fallback) {
    return has(key) ? integer(key) : fallback;
  }

  std::string text(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_string()) fail(at(key), "must be a string");
    return v.get<std::string>();
  }
  std::string text(const std::string& key, const std::string& fallback) {
    return has(key) ? text(key) : fallback;
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_boolean()) fail(at(key), "must be true or false");
    return v.get<bool>();
  }

  Band band(const std::string& key, Band fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      fail(at(key), "must be a pair [lo, hi]");
    const Band b{v[0].get<double>(), v[1].get<double>()};
    if (!(b.lo >= 0.0 && b.hi > b.lo)) fail(at(key), "needs 0 <= lo < hi");
    return b;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) fail(at(it.key()), "is not a recognized key");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + " " + what);
  }

 private:
  const Json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) Reader::fail(where, what);
}

SymbolSpec parse_symbol(const Json& obj, const std::string& path) {
  Reader r(obj, path);
  SymbolSpec s;
  s.family = r.text("family");
  s.n = static_cast<int>(r.integer("n", 1));
  require(s.n >= 1 && s.n <= 4, r.at("n"), "must be in [1, 4]");
  if (s.family == "bochner-riesz") {
    s.lambda = r.number("lambda");
    require(s.lambda > 0.0, r.at("lambda"), "must be positive");
  } else if (s.family == "m-alpha") {
    s.alpha = r.number("alpha");
    require(s.n + s.alpha - 1.0 >= 0.0, r.at("alpha"), "needs n + alpha - 1 >= 0");
  } else if (s.family == "bump") {
    s.radius = r.number("radius");
    require(s.radius > 0.0, r.at("radius"), "must be positive");
  } else if (s.family != "identity" && s.family != "zero" && s.family != "gaussian") {
    Reader::fail(r.at("family"), "'" + s.family +
                                     "' is not one of identity, zero, gaussian, bochner-riesz, "
                                     "m-alpha, bump");
  }
  if (r.has("piece")) {
    Reader p(r.raw("piece"), r.at("piece"));
    PieceSpec piece;
    piece.partition = p.text("partition", "riesz");
    require(piece.partition == "riesz" || piece.partition == "hormander", p.at("partition"),
            "must be riesz or hormander");
    piece.j = static_cast<int>(p.integer("j"));
    require(piece.j >= 0 && piece.j <= 30, p.at("j"), "must be in [0, 30]");
    piece.rescaled = p.flag("rescaled", false);
    require(!piece.rescaled || piece.partition == "riesz", p.at("rescaled"),
            "applies to riesz pieces only");
    p.finish();
    s.piece = piece;
  }
  r.finish();
  return s;
}

GridSpec parse_grid(const Json& obj, const std::string& path) {
  Reader r(obj, path);
  GridSpec g;
  g.points = static_cast<Index>(r.integer("N"));
  g.extent = r.number("L");
  require(g.points >= 2 && g.points % 2 == 0, r.at("N"), "must be a positive even integer");
  require(g.extent > 0.0, r.at("L"), "must be positive");
  r.finish();
  return g;
}

WaveletSpec parse_wavelet(const Json& obj, const std::string& path) {
  Reader r(obj, path);
  WaveletSpec w;
  w.k = static_cast<int>(r.integer("k", 4));
  require(w.k >= 2 && w.k <= 10, r.at("k"), "must be in [2, 10]");
  w.gamma_max = static_cast<int>(r.integer("gamma_max", 4));
  require(w.gamma_max >= 0 && w.gamma_max <= 12, r.at("gamma_max"), "must be in [0, 12]");
  if (r.has("spacing_exponent")) {
    w.spacing_exponent = static_cast<int>(r.integer("spacing_exponent"));
    require(*w.spacing_exponent >= 0 && *w.spacing_exponent <= 20, r.at("spacing_exponent"),
            "must be in [0, 20]");
  }
  r.finish();
  return w;
}

DilationSpec parse_dilation(const Json& obj, const std::string& path) {
  Reader r(obj, path);
  DilationSpec d;
  if (r.has("t_min")) d.t_min = r.number("t_min");
  if (r.has("t_max")) d.t_max = r.number("t_max");
  require(d.t_min.has_value() == d.t_max.has_value(), path, "needs both t_min and t_max or neither");
  if (d.t_min) require(*d.t_min > 0.0 && *d.t_max > *d.t_min, path, "needs 0 < t_min < t_max");
  d.per_octave = static_cast<int>(r.integer("per_octave", 8));
  require(d.per_octave >= 1, r.at("per_octave"), "must be >= 1");
  r.finish();
  return d;
}

EnsembleSpec parse_ensemble(const Json& obj, const std::string& path) {
  Reader r(obj, path);
  EnsembleSpec e;
  if (r.has("seed")) {
    const Json& v = r.raw("seed");
    require(v.is_number_unsigned(), r.at("seed"), "must be a non-negative integer");
    e.seed = v.get<std::uint64_t>();
  }
  const long long count = r.integer("count");
  require(count >= 1, r.at("count"), "must be >= 1");
  e.count = static_cast<std::size_t>(count);
  e.band_f = r.band("band_f", e.band_f);
  e.band_g = r.band("band_g", e.band_g);
  e.packets = static_cast<int>(r.integer("packets", 3));
  require(e.packets >= 1, r.at("packets"), "must be >= 1");
  e.spread = r.number("spread", 0.125);
  require(e.spread >= 0.0 && e.spread < 0.5, r.at("spread"), "must be in [0, 0.5)");
  r.finish();
  return e;
}

PiecesSpec parse_pieces(const Json& obj, const std::string& path) {
  Reader r(obj, path);
  PiecesSpec p;
  p.j_lo = static_cast<int>(r.integer("j_lo"));
  p.j_hi = static_cast<int>(r.integer("j_hi"));
  require(p.j_lo >= 0 && p.j_hi <= 20 && p.j_hi > p.j_lo, path, "needs 0 <= j_lo < j_hi <= 20");
  p.r = r.number("r", 4.0);
  require(p.r > 1.0 && p.r <= 4.0, r.at("r"), "must be in (1, 4]");
  p.s = r.number("s", 2.0);
  r.finish();
  return p;
}

std::map<std::string, double> parse_numbers(Reader& parent, const std::string& key,
                                            const std::map<std::string, double>& defaults) {
  std::map<std::string, double> out = defaults;
  if (!parent.has(key)) return out;
  const Json& obj = parent.raw(key);
  require(obj.is_object(), parent.at(key), "must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string where = parent.at(key) + "." + it.key();
    require(defaults.count(it.key()) > 0, where, "is not a recognized key");
    require(it.value().is_number(), where, "must be a number");
    out[it.key()] = it.value().get<double>();
  }
  return out;
}

void check_kind_rules(const ExperimentConfig& e, const std::string& path) {
  const auto& p = e.params;
  const auto& sym = e.symbol;
  auto needs = [&](bool have, const char* section) {
    require(have, path + "." + section, "is required for kind " + to_string(e.kind));
  };
  switch (e.kind) {
    case ExperimentKind::decompose:
      needs(sym.has_value(), "symbol");
      needs(e.grid.has_value(), "grid");
      needs(e.wavelet.has_value(), "wavelet");
      break;
    case ExperimentKind::wavelet_decay:
      needs(sym.has_value(), "symbol");
      needs(e.wavelet.has_value(), "wavelet");
      if (e.pieces)
        require(sym->family == "bochner-riesz" && !sym->piece, path + ".pieces",
                "needs an unsplit bochner-riesz symbol");
      break;
    case ExperimentKind::maximal:
      needs(sym.has_value(), "symbol");
      needs(e.grid.has_value(), "grid");
      needs(e.dilation.has_value() && e.dilation->t_min.has_value(), "dilation");
      needs(e.ensemble.has_value(), "ensemble");
      break;
    case ExperimentKind::gfunction:
      needs(sym.has_value() && sym->piece.has_value(), "symbol.piece");
      needs(e.grid.has_value(), "grid");
      needs(e.dilation.has_value(), "dilation");
      needs(e.ensemble.has_value(), "ensemble");
      require(p.at("ftc_points") >= 1 && p.at("ftc_nodes") >= 2 && p.at("ftc_factor") > 1.0,
              path + ".params", "needs ftc_points >= 1, ftc_nodes >= 2, ftc_factor > 1");
      break;
    case ExperimentKind::kernel_decay:
      needs(sym.has_value(), "symbol");
      needs(e.grid.has_value(), "grid");
      require(p.at("r_hi") > p.at("r_lo") && p.at("r_lo") > 0.0 && p.at("bins") >= 2,
              path + ".params", "needs 0 < r_lo < r_hi and bins >= 2");
      require(!std::isnan(p.at("bound")) || sym->family == "bochner-riesz", path + ".params.bound",
              "is required unless the symbol is bochner-riesz");
      break;
    case ExperimentKind::convergence:
      needs(sym.has_value(), "symbol");
      needs(e.grid.has_value(), "grid");
      require(sym->family == "bochner-riesz" && sym->n == 1 && !sym->piece, path + ".symbol",
              "must be an unsplit bochner-riesz symbol with n = 1");
      require(p.at("t_max") > 0.0 && p.at("halvings") >= 1, path + ".params",
              "needs t_max > 0 and halvings >= 1");
      require(p.at("oracle_points") == 0 || p.at("oracle_points") >= 2, path + ".params.oracle_points",
              "must be 0 or a grid size");
      break;
    case ExperimentKind::bessel_check:
      require(p.at("r_hi") > p.at("r_lo") && p.at("r_lo") >= 0.0 && p.at("count") >= 2 &&
                  p.at("nodes") >= 4,
              path + ".params", "needs 0 <= r_lo < r_hi, count >= 2, nodes >= 4");
      break;
    case ExperimentKind::norm_ratio:
      needs(sym.has_value(), "symbol");
      needs(e.ensemble.has_value(), "ensemble");
      if (e.pieces) {
        require(sym->family == "bochner-riesz" && sym->n == 1 && !sym->piece, path + ".pieces",
                "needs an unsplit bochner-riesz symbol with n = 1");
        needs(e.grid.has_value(), "grid");
      } else {
        needs(e.grid.has_value(), "grid");
      }
      break;
  }
  if (e.grid && sym) {
    const bool spatial = e.kind == ExperimentKind::maximal || e.kind == ExperimentKind::gfunction ||
                         e.kind == ExperimentKind::convergence || e.kind == ExperimentKind::norm_ratio;
    require(std::pow(static_cast<double>(e.grid->points), spatial ? sym->n : 2 * sym->n) <= 1.5e8,
            path + ".grid", "holds too many points");
  }
}

ExperimentConfig parse_experiment(const Json& obj, const std::string& path) {
  Reader r(obj, path);
  ExperimentConfig e;
  e.source = obj;
  e.name = r.text("name");
  require(!e.name.empty() && e.name.find_first_of("/\\ ") == std::string::npos, r.at("name"),
          "must be a non-empty name without spaces or slashes");
  e.kind = parse_kind(r.text("kind"));
  const KindInfo& ki = info(e.kind);
  for (const char* section : {"symbol", "grid", "wavelet", "dilation", "ensemble", "pieces"})
    if (r.has(section) && !ki.sections.count(section))
      Reader::fail(r.at(section), std::string("is not used by kind ") + ki.name);
  if (r.has("symbol")) e.symbol = parse_symbol(r.raw("symbol"), r.at("symbol"));
  if (r.has("grid")) e.grid = parse_grid(r.raw("grid"), r.at("grid"));
  if (r.has("wavelet")) e.wavelet = parse_wavelet(r.raw("wavelet"), r.at("wavelet"));
  if (r.has("dilation")) e.dilation = parse_dilation(r.raw("dilation"), r.at("dilation"));
  if (r.has("ensemble")) e.ensemble = parse_ensemble(r.raw("ensemble"), r.at("ensemble"));
  if (r.has("pieces")) e.pieces = parse_pieces(r.raw("pieces"), r.at("pieces"));
  e.params = parse_numbers(r, "params", ki.params);
  e.tolerances = parse_numbers(r, "tolerances", ki.tolerances);
  e.dump_fields = r.flag("dump_fields", false);
  r.finish();
  check_kind_rules(e, path);
  return e;
}

}  // namespace

std::string to_string(ExperimentKind kind) { return info(kind).name; }

ExperimentKind parse_kind(const std::string& text) {
  for (const auto& k : kinds())
    if (text == k.name) return k.kind;
  std::string names;
  for (const auto& k : kinds()) names += (names.empty() ? "" : ", ") + std::string(k.name);
  throw ConfigError("unknown experiment kind '" + text + "' (expected one of " + names + ")");
}

Symbol SymbolSpec::build() const {
  const int dim = 2 * n;
  if (family == "identity") return Symbol::constant(dim, 1.0).renamed("identity");
  if (family == "zero") return Symbol::constant(dim, 0.0).renamed("zero");
  if (family == "gaussian") return Symbol::gaussian(dim);
  if (family == "bochner-riesz") return bochner_riesz_symbol(n, lambda);
  if (family == "m-alpha") return m_alpha_symbol(n, alpha);
  if (family == "bump") return smooth_bump_symbol(n, radius);
  throw ConfigError("unknown symbol family '" + family + "'");
}

AnnularPiece SymbolSpec::build_piece() const {
  if (!piece) return AnnularPiece{0, PieceFlavor::hormander, build()};
  const DyadicPartition part =
      piece->partition == "riesz" ? DyadicPartition::riesz() : DyadicPartition::hormander();
  AnnularPiece p = dyadic_piece(build(), part, piece->j);
  return piece->rescaled ? rescale(p) : p;
}

Json load_config_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
}

void apply_override(Json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "' must look like key.path=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(text);
  } catch (const Json::parse_error&) {
    value = text;
  }
  Json* node = &doc;
  std::stringstream ss(path);
  std::string seg;
  std::vector<std::string> segs;
  while (std::getline(ss, seg, '.')) {
    if (seg.empty()) throw ConfigError("override path '" + path + "' has an empty segment");
    segs.push_back(seg);
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string& s = segs[i];
    Json* next = nullptr;
    if (node->is_array()) {
      const bool numeric = s.find_first_not_of("0123456789") == std::string::npos;
      if (numeric) {
        const std::size_t idx = std::stoul(s);
        if (idx >= node->size()) throw ConfigError("override path '" + path + "': index out of range");
        next = &(*node)[idx];
      } else {
        for (auto& el : *node)
          if (el.is_object() && el.contains("name") && el["name"] == s) next = &el;
        if (!next) throw ConfigError("override path '" + path + "': no element named " + s);
      }
    } else {
      if (node->is_null()) *node = Json::object();
      if (!node->is_object()) throw ConfigError("override path '" + path + "' descends into a value");
      next = &(*node)[s];
    }
    node = next;
  }
  *node = value;
}

SuiteConfig parse_config(const Json& doc) {
  Reader r(doc, "");
  SuiteConfig suite;
  suite.output = r.text("output", suite.output);
  if (r.has("seed")) {
    const Json& v = r.raw("seed");
    require(v.is_number_unsigned(), "seed", "must be a non-negative integer");
    suite.seed = v.get<std::uint64_t>();
  }
  suite.threads = static_cast<int>(r.integer("threads", 0));
  require(suite.threads >= 0, "threads", "must be >= 0");
  const Json& list = r.raw("experiments");
  require(list.is_array() && !list.empty(), "experiments", "must be a non-empty array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < list.size(); ++i) {
    ExperimentConfig e = parse_experiment(list[i], "experiments." + std::to_string(i));
    require(names.insert(e.name).second, "experiments." + std::to_string(i) + ".name",
            "'" + e.name + "' is used twice");
    suite.experiments.push_back(std::move(e));
  }
  r.finish();
  return suite;
}

}  // namespace bilmax::cli
