#pragma once

#include <string>
#include <vector>

#include "bilmax/partition.hpp"
#include "bilmax/symbol.hpp"

namespace bilmax {

// Parameters of the limited-decay class. The hypothesis flags are recorded
// for reports; nothing refuses to run outside them.
struct DecayClassParams {
  int n = 1;
  double a = 0.0;
  int derivative_order_checked = 0;
  double lambda = 0.0;
  double r = 4.0;
  double s = 0.0;

  bool decay_hypothesis() const { return a > n / 2.0 + 1.0; }
  bool lambda_hypothesis() const { return lambda > 1.0; }
  bool smoothness_hypothesis() const { return s > 2.0 * n / r + 1.0; }
  std::vector<std::string> warnings() const;
};

DecayClassParams decay_class(int n, double a, double lambda, double r, double s);

/// J_{n+alpha-1}(2 pi |zeta|) / |zeta|^{n+alpha-1} on R^{2n}.
Symbol m_alpha_symbol(int n, double alpha);

/// (1 - |zeta|^2)_+^lambda on R^{2n}.
Symbol bochner_riesz_symbol(int n, double lambda);

/// exp(1 - 1/(1 - |zeta/R|^2)) inside |zeta| < R on R^{2n}, zero outside.
Symbol smooth_bump_symbol(int n, double radius);

enum class PieceFlavor { hormander, riesz, riesz_rescaled };

std::string to_string(PieceFlavor flavor);

struct AnnularPiece {
  int j = 0;
  PieceFlavor flavor = PieceFlavor::riesz;
  Symbol symbol;

  const Annulus& annulus() const { return symbol.support(); }
};

// m_j = m psi_j(|zeta|) for j = 0..j_max. When freq_spacing > 0 the pieces
// must span at least 4 cells of that spacing.
std::vector<AnnularPiece> dyadic_pieces(const Symbol& m, const DyadicPartition& partition,
                                        int j_max, double freq_spacing = 0.0);

AnnularPiece dyadic_piece(const Symbol& m, const DyadicPartition& partition, int j);

/// M_j(zeta) = m_j(2^{-j} zeta).
AnnularPiece rescale(const AnnularPiece& piece);

/// zeta . grad m(zeta) for the piece's symbol.
Symbol radial_derivative_symbol(const AnnularPiece& piece);
Symbol radial_derivative_symbol(const Symbol& m);

}  // namespace bilmax
