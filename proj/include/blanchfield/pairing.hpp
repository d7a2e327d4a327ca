#ifndef BLANCHFIELD_PAIRING_HPP
#define BLANCHFIELD_PAIRING_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "blanchfield/seifert.hpp"

namespace blanchfield {

/// conj(delta) = -t^a delta cannot be repaired by Λ_S-units.
class SymmetrizationError : public MathError {
public:
  using MathError::MathError;
};

/// The vector is not in the Q-column space of conj(H).
class NotTorsion : public MathError {
public:
  NotTorsion(Eigen::Index rank, Eigen::Index augmented_rank);
  Eigen::Index rank() const { return rank_; }
  Eigen::Index augmented_rank() const { return augmented_rank_; }

private:
  Eigen::Index rank_;
  Eigen::Index augmented_rank_;
};

/// Row operations E with E D conj(H) in reduced echelon form, D the diagonal
/// of row_scale; computed on first use and shared by copies of the
/// TorsionData.
struct PreimageSolver {
  std::once_flag once;
  std::vector<RatFunc> row_scale;
  RfMatrix ops;
  std::vector<Eigen::Index> pivots;
};

struct TorsionData {
  CMatrix H;
  Eigen::Index rho = 0;
  /// Symmetrized torsion order: conj(delta) = delta exactly.
  LaurentPoly delta;
  Eigen::Index free_rank = 0;
  std::shared_ptr<PreimageSolver> solver = std::make_shared<PreimageSolver>();
};

/// Sign convention of pairing values: lambda_H itself, or Bl = -lambda_H.
enum class Convention { Lambda, Blanchfield };

/// Rewrites p by Λ_S-units so that conj(p) = p exactly; throws
/// SymmetrizationError on a sign obstruction.
LaurentPoly symmetrize(const LaurentPoly& p);

TorsionData torsion_order(const CMatrix& H);

/// The torsion order of the module presented by H, i.e. torsion_order(H).delta.
LaurentPoly alexander_tor(const CMatrix& H);

/// Whether [v] is torsion in the cokernel, i.e. v lies in the Q-span of the
/// columns of conj(H). Entries of v must lie in Λ_S.
bool is_torsion(const CMatrix& H, const RfVector& v);

/// Some Q-solution v0 of conj(H) v0 = delta v; throws NotTorsion.
RfVector torsion_preimage(const TorsionData& td, const RfVector& v);

/// v0^T H conj(w0) / delta^2 as an element of Q.
RatFunc pairing_value(const TorsionData& td, const RfVector& v0, const RfVector& w0);

/// lambda_H([v], [w]), or -lambda_H with Convention::Blanchfield.
QmodLS pair(const TorsionData& td, const RfVector& v, const RfVector& w, Convention sign = Convention::Lambda);

struct BlForm {
  enum class Kind { FullMatrix, Sampled };
  struct Sample {
    RfVector v;
    RfVector w;
    QmodLS value;
  };

  TorsionData source;
  Kind kind = Kind::FullMatrix;
  Convention sign = Convention::Blanchfield;
  /// Populated for Kind::FullMatrix.
  std::vector<std::vector<QmodLS>> matrix;
  /// Populated for Kind::Sampled.
  std::vector<Sample> samples;
};

/// Entry (i, j) is the class of -(H^{-1})_{ij}; requires det H != 0
/// (throws SingularMatrix otherwise).
BlForm blanchfield_matrix(const TorsionData& td);

/// Pairing values on the given vectors, all pairs (i, j).
BlForm sampled_form(const TorsionData& td, const std::vector<RfVector>& vectors, Convention sign);

/// Random torsion vectors with Λ-entries: small random Λ-combinations of a
/// denominator-free basis of the Q-column space of conj(H).
std::vector<RfVector> torsion_samples(const CMatrix& H, std::size_t count, std::uint64_t seed);

}  // namespace blanchfield

#endif  // BLANCHFIELD_PAIRING_HPP
