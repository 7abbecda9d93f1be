// Parity sectors of the 16-component multiplet: the two scalar-vector
// graviscalar sectors and the two vector-tensor sectors, with their reduced
// first-order systems, the 2-spinor block symmetries that characterize them,
// and the curvature identities behind the rows the constraints trivialize.
#pragma once

#include "dkl/dk_core.hpp"

namespace dkl {

enum class SectorTag { S0, S0tilde, S1, S1tilde };

std::string sector_name(SectorTag tag);

// Zero out every component outside the sector:
//   S0      keeps {Psi, Psi_l};      S0tilde keeps {Psi~, Psi~_l};
//   S1      keeps {Psi_l, Psi_mn};   S1tilde keeps {Psi~_l, Psi_mn}.
MultipletField apply_sector(const MultipletField& F, SectorTag tag);

// Max violation of the sector's 2-spinor block symmetry table at the matrix
// U; exactly zero (up to roundoff) iff U expands a sector-constrained
// multiplet, order-one for a generic one.
double sector_block_violation(const GammaBasis& gb, const MatrixC4& U,
                              SectorTag tag);

// The reduced system of the sector evaluated directly (dynamical rows plus
// the rows the constraint turns into field-independent identities), labeled
// like residual_tensor so the two can be compared entrywise. F must already
// be constrained; throws if it is not.
ResidualSet reduced_residual(const TetradChart& chart, const MultipletField& F,
                             SectorTag tag, const Point& p, const GammaBasis& gb);

struct IdentityCheckReport {
  std::string name;
  double direct_vs_curvature = 0.0;  // two-sided gap between the evaluations
  double magnitude = 0.0;            // size of the identity's value (want ~0)
  double tolerance = 0.0;
  bool pass = false;
};

// The curvature identities that make the trivialized rows vanish identically
// (commuting covariant derivatives on a gradient, Ricci symmetry against an
// antisymmetric tensor, the cyclic Riemann identity under eps-contraction),
// each evaluated from an independent random field at p.
std::vector<IdentityCheckReport> sector_identity_checks(const TetradChart& chart,
                                                        SectorTag tag,
                                                        std::uint64_t seed,
                                                        const Point& p,
                                                        const GammaBasis& gb);

// For the vector-tensor sector the xi and eta blocks are symmetric 2x2
// matrices, each spanned by the three symmetric generators sigma^k eps2;
// returns the reconstruction error of both blocks in that 3+3 basis.
double s1_rank_structure_violation(const GammaBasis& gb, const MatrixC4& U);

}  // namespace dkl
