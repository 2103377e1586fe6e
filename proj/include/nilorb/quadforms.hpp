#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilorb/matrix.hpp"
#include "nilorb/padic.hpp"
#include "nilorb/partitions.hpp"
#include "nilorb/rational.hpp"

namespace nilorb {

/// F^x / (F^x)^2 = {1, eps, pi, eps*pi}.
enum class SquareClass { One, Eps, Pi, EpsPi };

const char* square_class_name(SquareClass c) noexcept;
std::optional<SquareClass> square_class_from_name(std::string_view name);
/// Throws Error(ZeroInput) for 0.
SquareClass square_class(const PadicNumber& x);
PadicNumber square_class_representative(SquareClass c, const Context& ctx);

/// alpha = eps when -1 is a square in F, else 1.
PadicNumber alpha(const Context& ctx);

/// The zero space and the fifteen anisotropic classes, in table order.
/// Names spell out the diagonal representative.
enum class AnisoTag {
  Zero,
  One,
  Eps,
  Pi,
  EpsPi,
  One_Alpha,
  Pi_AlphaPi,
  One_Pi,
  One_EpsPi,
  Eps_Pi,
  Eps_EpsPi,
  Alpha_Pi_AlphaPi,
  AlphaEps_Pi_AlphaPi,
  One_Alpha_Pi,
  One_Alpha_EpsPi,
  One_MinusEps_MinusPi_EpsPi,
};

/// All sixteen tags, Zero first.
const std::vector<AnisoTag>& all_aniso_tags();
const char* aniso_name(AnisoTag tag) noexcept;
std::optional<AnisoTag> aniso_from_name(std::string_view name);
int aniso_dimension(AnisoTag tag) noexcept;
std::vector<PadicNumber> aniso_entries(AnisoTag tag, const Context& ctx);

/// Nondegenerate diagonal form diag(a_1, ..., a_n).
class DiagonalForm {
 public:
  /// Throws Error(DegenerateForm) if an entry is 0.
  explicit DiagonalForm(std::vector<PadicNumber> entries);
  const std::vector<PadicNumber>& entries() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return entries_.size(); }

 private:
  std::vector<PadicNumber> entries_;
};

/// Tame Hilbert symbol (a, b)_F for odd residue characteristic.
int hilbert_symbol(const PadicNumber& a, const PadicNumber& b);

/// Product of the entries, as a square class.
SquareClass discriminant(const DiagonalForm& f);
/// Product over i < j of (a_i, a_j)_F.
int hasse(const DiagonalForm& f);

struct QFormClass {
  int dim = 0;
  SquareClass disc = SquareClass::One;
  int hasse = 1;
  int witt = 0;
  AnisoTag aniso = AnisoTag::Zero;

  friend bool operator==(const QFormClass& a, const QFormClass& b) {
    return a.dim == b.dim && a.disc == b.disc && a.hasse == b.hasse && a.witt == b.witt && a.aniso == b.aniso;
  }
  /// "q0^1 + diag(pi)" style summary.
  std::string str() const;
};

/// Class of q0^witt + (anisotropic representative of tag); invariants computed in ctx.
QFormClass make_class(int witt, AnisoTag tag, const Context& ctx);

/// Invariant-driven Witt decomposition: the unique class with matching (dim, disc, hasse).
QFormClass witt_decompose(const DiagonalForm& f);

/// Classifies a symmetric Gram matrix with rational entries by exact diagonalization.
QFormClass classify_gram(const RationalMatrix& gram, const Context& ctx);

/// All classes of nondegenerate forms of the given dimension.
std::vector<QFormClass> enumerate_classes(int dim, const Context& ctx);

/// q0^m + diagonal anisotropic representative, with q0 = [[0,1],[1,0]].
Matrix<PadicNumber> minimal_representative(const QFormClass& c, const Context& ctx);

/// Diagonal form isometric to the class (each q0 replaced by diag(1, -1)).
DiagonalForm diagonal_representative(const QFormClass& c, const Context& ctx);

/// Classes indexed by even i, one of dimension m_i(lambda) for each even part size i.
using QTuple = std::map<int, QFormClass>;

/// Throws Error(NotAdmissible) unless lambda is symplectic-admissible.
std::vector<QTuple> enumerate_tuples(const Partition& lambda, const Context& ctx);

/// Throws Error(InvalidTuple) unless the tuple has exactly the even parts of lambda with matching dimensions.
void validate_tuple(const Partition& lambda, const QTuple& tuple);

}  // namespace nilorb
