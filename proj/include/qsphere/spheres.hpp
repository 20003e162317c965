#pragma once

// Generators of the odd quantum sphere C(S_q^{2n+1}) inside C*(F^n), words
// in them, and the verification suites built on the symbolic and numeric
// oracles.
//
// Generators are numbered m = 1..n+1. Y_1 is the t-mode times the q-power
// diagonal in every slot; for m >= 2, Y_m lowers slot j = n+1-m (0-based)
// with coefficient  q^{w_0} ... q^{w_{j-1}} * sqrt(1 - q^{2 w_j}).

#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qsphere/algebra.hpp"
#include "qsphere/report.hpp"
#include "qsphere/truncated.hpp"

namespace qsphere {

struct GeneratorSet {
  std::size_t n = 1;
  double q = 0.5;
  std::vector<AlgebraElement> Y;  // Y[m-1] is Y_m

  const AlgebraElement& gen(std::size_t m) const { return Y.at(m - 1); }
};

/// Throws Error(InvalidArgument) unless n in [1, 31] and q in (0,1).
GeneratorSet build_generators(std::size_t n, double q);

/// 0-based slot lowered by Y_m; n for Y_1, which only carries the t-mode.
std::size_t acting_slot(std::size_t n, std::size_t m);

struct Letter {
  std::size_t m = 1;
  bool star = false;
};

struct Word {
  std::vector<Letter> letters;
  AlgebraElement element;

  /// "1" for the empty word, else e.g. "Y2*.Y1".
  std::string name() const;
};

/// Words of length <= L in {Y_m, Y_m*}, shortest first; within a length,
/// ordered by letters (Y_1, Y_1*, Y_2, ...) from the left. Only one length
/// level is held in memory at a time; the visitor returns false to stop.
void for_each_word(const GeneratorSet& gens, std::size_t L,
                   const std::function<bool(const Word&)>& visit);
std::vector<Word> words_up_to(const GeneratorSet& gens, std::size_t L);

/// Parses sums of products such as "Y1.Y1* + Y2*.Y2 - 1" or "0.5 Y3 Y2*".
/// Letters are Y<m> or Y<m>*, "1" is the unit; factors are separated by
/// '.', whitespace or nothing. Throws Error(ParseError).
AlgebraElement parse_word_expression(const GeneratorSet& gens, std::string_view text);

/// Angle samples for the z-mode and the circle modes (phi broadcast to all slots).
struct AngleSet {
  std::vector<double> theta{0.0, 2.0 * std::numbers::pi / 7.0, std::numbers::pi / 2.0};
  std::vector<double> phi{0.0, 2.0 * std::numbers::pi / 7.0, std::numbers::pi / 2.0};
};

/// Numeric threshold above which a ProvablyZero identity counts as an
/// oracle disagreement.
inline constexpr double kCoherenceTolerance = 1e-10;
/// Singular-value cut used by the q-independence proxy.
inline constexpr double kRankTolerance = 1e-10;

/// alpha alpha* + gamma gamma* = 1, alpha* alpha + q^2 gamma* gamma = 1,
/// gamma alpha = q alpha gamma, gamma gamma* = gamma* gamma, on F^1.
CheckReport check_su2q_relations(double q, long N, const AngleSet& angles = {},
                                 double tol = 1e-12);

/// sum_m Y_m* Y_m = 1 and the slot-ordered q-commutations, symbolically and
/// on interior columns.
CheckReport check_sphere_relations(std::size_t n, double q, long N, const AngleSet& angles = {},
                                   double tol = 1e-12);

/// Interior-agreement contract of to_matrix on random convolution pairs.
CheckReport check_interior_agreement(std::size_t n, double q, long N, long pairs,
                                     std::uint64_t seed, double tol = 1e-12);

/// Face restrictions of the generators and the pullback identities; n >= 2.
CheckReport check_lemma_restrictions(std::size_t n, double q, long N = 3, std::size_t L = 3);

/// Support in Ftilde_n and ~-invariance for all words of length <= L, plus
/// negative controls.
CheckReport check_theorem_support(std::size_t n, double q, std::size_t L, long scan_N = 3);

/// Exhaustive set identities over a window; n >= 2.
CheckReport check_set_identities(std::size_t n, const WindowBounds& window);

/// Quotient groupoid laws over seeded random samples.
CheckReport check_quotient_soundness(std::size_t n, long samples, std::uint64_t seed);

/// Boundary ideal membership, compatibility of boundary families, ideal
/// richness on the n = 1, N = 2 window.
CheckReport check_exactness(std::size_t n, double q, long N);

/// Equal Gram ranks and nonzero-shift patterns of word spans at q1 and q2.
CheckReport check_q_independence_proxy(std::size_t n, double q1, double q2, std::size_t L, long N);

}  // namespace qsphere
