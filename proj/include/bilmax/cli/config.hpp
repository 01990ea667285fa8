#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bilmax/square_function.hpp"
#include "bilmax/zoo.hpp"

namespace bilmax::cli {

using Json = nlohmann::json;

enum class ExperimentKind {
  decompose,
  wavelet_decay,
  maximal,
  gfunction,
  kernel_decay,
  convergence,
  bessel_check,
  norm_ratio,
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& text);

struct PieceSpec {
  std::string partition = "riesz";
  int j = 0;
  bool rescaled = false;
};

struct SymbolSpec {
  std::string family;
  int n = 1;
  double lambda = 0.0;
  double alpha = 0.0;
  double radius = 0.0;
  std::optional<PieceSpec> piece;

  Symbol build() const;
  /// The piece selected by `piece`; the whole symbol as piece 0 otherwise.
  AnnularPiece build_piece() const;
};

struct GridSpec {
  Index points = 0;
  double extent = 0.0;
};

struct WaveletSpec {
  int k = 4;
  int gamma_max = 4;
  /// Analysis lattice spacing 2^{-p}; defaults to gamma_max + 2.
  std::optional<int> spacing_exponent;
};

struct DilationSpec {
  std::optional<double> t_min;
  std::optional<double> t_max;
  int per_octave = 8;
};

struct EnsembleSpec {
  std::optional<std::uint64_t> seed;
  std::size_t count = 1;
  Band band_f{1.0, 2.0};
  Band band_g{1.0, 2.0};
  int packets = 3;
  double spread = 0.125;
};

/// Bochner-Riesz piece sweep over j with the comparison exponents r and s.
struct PiecesSpec {
  int j_lo = 2;
  int j_hi = 6;
  double r = 4.0;
  double s = 2.0;
};

struct ExperimentConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::decompose;
  std::optional<SymbolSpec> symbol;
  std::optional<GridSpec> grid;
  std::optional<WaveletSpec> wavelet;
  std::optional<DilationSpec> dilation;
  std::optional<EnsembleSpec> ensemble;
  std::optional<PiecesSpec> pieces;
  /// Kind-specific settings with defaults filled in; NaN marks "derive".
  std::map<std::string, double> params;
  /// Verdict thresholds with defaults filled in; NaN disables a verdict.
  std::map<std::string, double> tolerances;
  bool dump_fields = false;
  /// The validated experiment object, echoed into its report.
  Json source;
};

struct SuiteConfig {
  std::string output = "bilmax-out";
  std::uint64_t seed = 1;
  int threads = 0;
  std::vector<ExperimentConfig> experiments;
};

/// Reads a JSON document; throws ConfigError on I/O or syntax errors.
Json load_config_json(const std::string& path);

// Applies "a.b.c=value" to a JSON document. Array elements are addressed by
// index or by the "name" of an element. The value is parsed as JSON when
// possible and taken as a string otherwise.
void apply_override(Json& doc, const std::string& assignment);

/// Validates the whole document; throws ConfigError on the first problem.
SuiteConfig parse_config(const Json& doc);

}  // namespace bilmax::cli
