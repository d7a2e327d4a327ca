#ifndef BLANCHFIELD_MOVES_HPP
#define BLANCHFIELD_MOVES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "blanchfield/pairing.hpp"

namespace blanchfield {

/// How pairing values correspond under a FormIsometry.
enum class Relation {
  /// lambda_target(f x, f y) = lambda_source(x, y)
  Isometry,
  /// lambda_target(f x, f y) = -lambda_source(x, y)
  Negating,
  /// lambda_target(conj(f x), conj(f y)) = conj(lambda_source(x, y))
  Conjugating,
};

/// A map of cokernels coker(source) -> coker(target), given on class
/// representatives by x -> map * x.
struct FormIsometry {
  CMatrix source;
  CMatrix target;
  RfMatrix map;
  Relation relation = Relation::Isometry;
};

struct Transformed {
  CMatrix H;
  FormIsometry iso;
};

/// H (+) (0).
Transformed stabilize0(const CMatrix& H);

/// [[H, xi, 0], [xi^*, lam, alpha], [0, conj(alpha), 0]]; the witness map is
/// the base change onto H (+) [[0, 1], [1, 0]] composed with the inclusion.
/// Throws ValidationError if conj(lam) != lam or alpha is not a Λ_S-unit.
Transformed stabilize2(const CMatrix& H, const RfVector& xi, const RatFunc& lam, const RatFunc& alpha);

/// Direct sum; all summands must share mu.
CMatrix block_sum(const std::vector<CMatrix>& parts);

/// u conj(u) H, with the isometry x -> u^{-1} x from it back to H.
Transformed unit_scale(const CMatrix& H, const LSUnit& u);

/// -H; with x -> -x the pairing changes sign.
CMatrix mirror(const CMatrix& H);
/// H -> -H with map -I, Relation::Negating.
FormIsometry mirror_isometry(const CMatrix& H);

/// conj(H) entrywise.
CMatrix reverse(const CMatrix& H);
/// H -> conj(H) with map I, Relation::Conjugating.
FormIsometry reverse_isometry(const CMatrix& H);

struct ConnectedSum {
  CMatrix H;
  /// Embeddings of the two summands, each scaling its block by its unit u.
  FormIsometry first;
  FormIsometry second;
};

/// Gluing along the last variable of H1 and the first of H2 (shared = true),
/// or with disjoint variable sets. Variables of H1 become t_1..t_mu1, those
/// of H2 follow, overlapping in one variable when shared.
ConnectedSum connected_sum(const CMatrix& H1, const CMatrix& H2, bool shared = true);

struct IsometryReport {
  std::size_t pairs_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline constexpr std::size_t kDefaultSamples = 16;

/// Compares pairing values on all pairs of the given source torsion vectors.
IsometryReport check_isometry(const FormIsometry& iso, const std::vector<RfVector>& samples);

/// As above with torsion_samples(source, count, seed).
IsometryReport check_isometry(const FormIsometry& iso, std::size_t count = kDefaultSamples, std::uint64_t seed = 1);

}  // namespace blanchfield

#endif  // BLANCHFIELD_MOVES_HPP
