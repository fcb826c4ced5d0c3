#pragma once

#include <optional>
#include <span>

#include "qcaps/caps.hpp"

namespace qcaps {

// Square matrix over GF(4), row-major, m <= 5.
struct Mat {
  int m = 0;
  std::array<Gf, 25> a{};
  Gf& at(int r, int c) { return a[r * m + c]; }
  Gf at(int r, int c) const { return a[r * m + c]; }
  bool operator==(const Mat&) const = default;
};

Mat mat_identity(int m);
Mat mat_mul(const Mat& A, const Mat& B);
std::optional<Mat> mat_inverse(const Mat& A);
Mat mat_conj(const Mat& A);
// Scale so the first nonzero entry in reading order is 1 (the unique
// representative of the scalar class).
void mat_normalize(Mat& A);

// A collineation acts on row coordinate vectors: p -> conj^f(p) * M.
// (The row convention is what makes printed projectivity matrices act
// directly on printed coordinate columns-as-points.)
struct Collineation {
  Mat mat;
  bool frobenius = false;
  bool operator==(const Collineation&) const = default;
};

Collineation identity_collineation(int m);
// Apply `first`, then `second`.
Collineation compose(const Collineation& second, const Collineation& first);
Collineation inverse(const Collineation& c);

// Image of a point under the collineation.  Throws on a singular matrix.
int apply_point(const Collineation& c, const ProjSpace& space, int p);
Cap apply(const Collineation& c, const Cap& cap);

// Equivalence-necessary invariants: n, the sorted hyperplane-intersection
// profile, and for each cap point the sorted profile over hyperplanes
// through that point.
struct CapSignature {
  int n = 0;
  std::vector<int> global;
  std::vector<std::vector<int>> per_point;  // aligned with cap point order
  // Equality as an invariant: compares n, global, and the multiset of
  // per-point profiles.
  bool equivalent_to(const CapSignature& o) const;
};

CapSignature signature(const Cap& cap);
std::uint64_t signature_hash(const CapSignature& sig);

// Exhaustive search for a collineation mapping a onto b (setwise).
// Returns a verified witness or nullopt; with allow_frobenius the search
// covers PGammaL = PGL x <Frobenius>, otherwise PGL only.  Both caps must
// span their space.
std::optional<Collineation> are_equivalent(const Cap& a, const Cap& b,
                                           bool allow_frobenius,
                                           int jobs = 1);

struct StabilizerResult {
  long order = 0;
  std::vector<Collineation> elements;
  std::vector<Collineation> generators;
};

// All collineations fixing the cap setwise, found exhaustively; closure of
// the element set is verified before returning.
StabilizerResult stabilizer(const Cap& cap, bool allow_frobenius,
                            int jobs = 1);

bool group_closure_ok(std::span<const Collineation> elements);

}  // namespace qcaps
