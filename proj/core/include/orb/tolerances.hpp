#pragma once

namespace orb {

// Default numerical tolerances. Entries of finite-order matrices and their
// averaged projectors are algebraic numbers of small height, so structural
// identities hold to rounding scale; the looser cutoffs absorb accumulated
// error in eigenvalue snapping and rank decisions.
inline constexpr double kStructuralTol = 1e-9;
inline constexpr double kEigenvalueTol = 1e-6;
inline constexpr double kRankTol = 1e-6;

}  // namespace orb
