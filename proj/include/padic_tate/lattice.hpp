#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace padic_tate {

/// Dense integer matrix. Zero columns (or rows) are allowed so that the zero
/// lattice in Z^n is the n x 0 matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(long rows, long cols);
  IntMatrix(long rows, long cols, std::vector<mpz_class> entries);  // row-major
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, long cols = -1);
  static IntMatrix identity(long n);
  static IntMatrix diagonal(const std::vector<long>& d);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  mpz_class& operator()(long i, long j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const mpz_class& operator()(long i, long j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  IntMatrix transpose() const;
  IntMatrix column(long j) const;
  /// [A | B], same number of rows.
  IntMatrix hstack(const IntMatrix& other) const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  long rows_ = 0;
  long cols_ = 0;
  std::vector<mpz_class> a_;
};

struct SmithForm {
  IntMatrix U, D, V;  // U * M * V = D
  long rank = 0;
  std::vector<mpz_class> invariants;  // nonzero diagonal, d1 | d2 | ...
};

/// U M V = D with U, V unimodular and the divisibility chain; the identity
/// and the chain are re-checked before returning.
SmithForm smith_normal_form(const IntMatrix& M);
/// Rank over Q (number of nonzero Smith invariants).
long rank(const IntMatrix& M);
/// Determinant of a square matrix (fraction-free elimination).
mpz_class determinant(const IntMatrix& M);

/// Row-style Hermite normal form of the row span: pivots positive, entries
/// above each pivot reduced into [0, pivot), zero rows dropped.
IntMatrix hermite_rows(const IntMatrix& M);

/// Columns form a saturated basis of {v in Z^cols : A v = 0}, in column
/// Hermite form so the answer is canonical.
IntMatrix kernel_lattice(const IntMatrix& A);

/// Lattice spanned by the columns, as a canonical column basis.
IntMatrix column_span(const IntMatrix& L);
/// Basis of the intersection of two column lattices in Z^n.
IntMatrix lattice_intersection(const IntMatrix& A, const IntMatrix& B);

/// Connected algebraic subgroup of G_m^n x E^n given by lattices in Z^n:
/// the columns of mult span its G_m^n part, those of ell its E^n part
/// (End(E_q) = Z, so subgroups of E^n correspond to lattices too). A coset
/// gamma + T is represented by T: no dimension depends on the translate.
struct SubgroupLattice {
  long n = 0;
  IntMatrix mult;  // n x k1
  IntMatrix ell;   // n x k2

  static SubgroupLattice full(long n);
  static SubgroupLattice trivial(long n);
  long dim_mult() const;
  long dim_ell() const;
  long dim() const { return dim_mult() + dim_ell(); }
};

/// dim(M T) = rank(M L_mult) + rank(M L_ell).
long dim_image(const IntMatrix& M, const SubgroupLattice& T);

struct RotundVerdict {
  bool refuted = false;
  std::optional<IntMatrix> witness;  // dim_image(witness, V) < rank(witness)
  long height = 0;
  long matrices_checked = 0;  // one per row space representative
};

/// Searches M with entries in [-H, H] for dim(MV) < rank(M). Only the row
/// space of M matters, so each row is taken primitive with leading entry
/// positive, nonzero rows strictly decreasing, zero rows last.
RotundVerdict rotund_check(const SubgroupLattice& V, long height);

struct VMBound {
  long r = 0;
  long bound = 0;             // dim V - n + r
  long dim_V = 0;
  long dim_MV = 0;
  long intersection_dim = 0;  // dim(V cap (gamma + T)) from the lattice intersection
  bool rotund_for_M = false;  // dim(MV) >= rank(M), i.e. the generic bound holds
};

/// T = {X^M = 1, MY = 0}; FullRank when rank(M) = n.
VMBound lemma_VM_bound(const SubgroupLattice& V, const IntMatrix& M);

struct LikelyCheck {
  long dim_psi_V = 0;
  long dim_psi_S = 0;
  long required = 0;  // n - dim T
  bool holds = false;
};

struct LikelyVerdict {
  bool persistently_likely = true;
  std::vector<LikelyCheck> checks;        // one per T
  std::optional<std::size_t> failing;     // first failing T
};

/// Quotient-dimension inequality dim psi(V) + dim psi(S) >= n - dim T for each
/// T in the list; all lattices live in E^n only (their mult parts must be 0).
LikelyVerdict persistently_likely(const SubgroupLattice& V, const SubgroupLattice& S,
                                  const std::vector<SubgroupLattice>& T_list);

/// dim X > dim V + dim W - dim Z.
bool atypical(long dimX, long dimV, long dimW, long dimZ);

}  // namespace padic_tate
