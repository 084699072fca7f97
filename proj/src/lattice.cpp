#include "padic_tate/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "padic_tate/errors.hpp"

namespace padic_tate {

IntMatrix::IntMatrix(long rows, long cols)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), mpz_class(0)) {
  if (rows < 0 || cols < 0) throw Error(ErrorKind::InvalidArgument, "matrix dimensions must be non-negative");
}

IntMatrix::IntMatrix(long rows, long cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw Error(ErrorKind::InvalidArgument, "matrix dimensions must be non-negative");
  if (a_.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(ErrorKind::DimensionMismatch, "entry count does not match rows x cols");
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, long cols) {
  const long r = static_cast<long>(rows.size());
  const long c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<long>(rows[0].size()));
  IntMatrix M(r, c);
  for (long i = 0; i < r; ++i) {
    if (static_cast<long>(rows[static_cast<std::size_t>(i)].size()) != c) {
      throw Error(ErrorKind::DimensionMismatch, "rows of unequal length");
    }
    for (long j = 0; j < c; ++j) M(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return M;
}

IntMatrix IntMatrix::identity(long n) {
  IntMatrix M(n, n);
  for (long i = 0; i < n; ++i) M(i, i) = 1;
  return M;
}

IntMatrix IntMatrix::diagonal(const std::vector<long>& d) {
  const long n = static_cast<long>(d.size());
  IntMatrix M(n, n);
  for (long i = 0; i < n; ++i) M(i, i) = d[static_cast<std::size_t>(i)];
  return M;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

IntMatrix IntMatrix::column(long j) const {
  IntMatrix c(rows_, 1);
  for (long i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::hstack(const IntMatrix& other) const {
  if (rows_ != other.rows_) throw Error(ErrorKind::DimensionMismatch, "hstack needs equal row counts");
  IntMatrix R(rows_, cols_ + other.cols_);
  for (long i = 0; i < rows_; ++i) {
    for (long j = 0; j < cols_; ++j) R(i, j) = (*this)(i, j);
    for (long j = 0; j < other.cols_; ++j) R(i, cols_ + j) = other(i, j);
  }
  return R;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const mpz_class& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorKind::DimensionMismatch, "cannot multiply " + std::to_string(a.rows_) + "x" +
                                                  std::to_string(a.cols_) + " by " + std::to_string(b.rows_) + "x" +
                                                  std::to_string(b.cols_));
  }
  IntMatrix c(a.rows_, b.cols_);
  for (long i = 0; i < a.rows_; ++i)
    for (long k = 0; k < a.cols_; ++k) {
      const mpz_class& x = a(i, k);
      if (x == 0) continue;
      for (long j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::string IntMatrix::to_string() const {
  std::string s = "[";
  for (long i = 0; i < rows_; ++i) {
    s += i ? ",[" : "[";
    for (long j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

namespace {

class Reducer {
 public:
  Reducer(const IntMatrix& M, bool track)
      : D(M), track_(track), U(track ? IntMatrix::identity(M.rows()) : IntMatrix()),
        V(track ? IntMatrix::identity(M.cols()) : IntMatrix()) {}

  IntMatrix D;

  void swap_rows(long a, long b) {
    if (a == b) return;
    for (long j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
    if (track_)
      for (long j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
  }
  void swap_cols(long a, long b) {
    if (a == b) return;
    for (long i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
    if (track_)
      for (long i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
  }
  // row_a += k row_b
  void add_row(long a, long b, const mpz_class& k) {
    for (long j = 0; j < D.cols(); ++j) D(a, j) += k * D(b, j);
    if (track_)
      for (long j = 0; j < U.cols(); ++j) U(a, j) += k * U(b, j);
  }
  // col_a += k col_b
  void add_col(long a, long b, const mpz_class& k) {
    for (long i = 0; i < D.rows(); ++i) D(i, a) += k * D(i, b);
    if (track_)
      for (long i = 0; i < V.rows(); ++i) V(i, a) += k * V(i, b);
  }
  void negate_row(long a) {
    for (long j = 0; j < D.cols(); ++j) D(a, j) = -D(a, j);
    if (track_)
      for (long j = 0; j < U.cols(); ++j) U(a, j) = -U(a, j);
  }

  // Moves the smallest nonzero entry of the lower-right block at t to (t, t).
  bool place_pivot(long t) {
    long bi = -1, bj = -1;
    for (long i = t; i < D.rows(); ++i)
      for (long j = t; j < D.cols(); ++j) {
        if (D(i, j) == 0) continue;
        if (bi < 0 || mpz_cmpabs(D(i, j).get_mpz_t(), D(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  // Clears row t and column t outside the pivot, then enforces divisibility.
  void reduce_at(long t) {
    for (;;) {
      bool clean = true;
      for (long i = t + 1; i < D.rows(); ++i) {
        if (D(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (long j = t + 1; j < D.cols(); ++j) {
        if (D(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder is smaller than the pivot: bring it in and repeat
        long bi = t, bj = t;
        for (long i = t + 1; i < D.rows(); ++i)
          if (D(i, t) != 0 && mpz_cmpabs(D(i, t).get_mpz_t(), D(bi, bj).get_mpz_t()) < 0) bi = i, bj = t;
        for (long j = t + 1; j < D.cols(); ++j)
          if (D(t, j) != 0 && mpz_cmpabs(D(t, j).get_mpz_t(), D(bi, bj).get_mpz_t()) < 0) bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      long bad = -1;
      for (long i = t + 1; i < D.rows() && bad < 0; ++i)
        for (long j = t + 1; j < D.cols(); ++j)
          if (mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t()) == 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(t, bad, 1);
    }
    if (D(t, t) < 0) negate_row(t);
  }

  long run() {
    long t = 0;
    const long m = std::min(D.rows(), D.cols());
    while (t < m && place_pivot(t)) {
      reduce_at(t);
      ++t;
    }
    return t;
  }

  IntMatrix& u() { return U; }
  IntMatrix& v() { return V; }

 private:
  bool track_;
  IntMatrix U, V;
};

void internal_check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("Smith normal form self-check failed: ") + what);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
  Reducer R(M, true);
  SmithForm S;
  S.rank = R.run();
  S.D = R.D;
  S.U = R.u();
  S.V = R.v();
  for (long i = 0; i < S.rank; ++i) S.invariants.push_back(S.D(i, i));

  internal_check(S.U * M * S.V == S.D, "U M V != D");
  internal_check(abs(determinant(S.U)) == 1, "U is not unimodular");
  internal_check(abs(determinant(S.V)) == 1, "V is not unimodular");
  for (long i = 0; i < S.D.rows(); ++i)
    for (long j = 0; j < S.D.cols(); ++j)
      internal_check(i == j || S.D(i, j) == 0, "D is not diagonal");
  for (long i = 0; i + 1 < S.rank; ++i)
    internal_check(mpz_divisible_p(S.invariants[static_cast<std::size_t>(i + 1)].get_mpz_t(),
                                   S.invariants[static_cast<std::size_t>(i)].get_mpz_t()) != 0,
                   "divisibility chain broken");
  for (long i = S.rank; i < std::min(S.D.rows(), S.D.cols()); ++i) internal_check(S.D(i, i) == 0, "rank");
  return S;
}

long rank(const IntMatrix& M) {
  Reducer R(M, false);
  return R.run();
}

mpz_class determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  const long n = M.rows();
  if (n == 0) return 1;
  IntMatrix A = M;
  mpz_class prev = 1;
  int sign = 1;
  for (long k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      long s = k + 1;
      while (s < n && A(s, k) == 0) ++s;
      if (s == n) return 0;
      for (long j = 0; j < n; ++j) std::swap(A(k, j), A(s, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i) {
      for (long j = k + 1; j < n; ++j) {
        mpz_class t = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        A(i, j) = t;
      }
      A(i, k) = 0;
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

IntMatrix hermite_rows(const IntMatrix& M) {
  IntMatrix H = M;
  const long m = H.rows();
  const long n = H.cols();
  auto row_axpy = [&](long a, long b, const mpz_class& k) {
    for (long j = 0; j < n; ++j) H(a, j) += k * H(b, j);
  };
  auto row_swap = [&](long a, long b) {
    if (a != b)
      for (long j = 0; j < n; ++j) std::swap(H(a, j), H(b, j));
  };
  long r = 0;
  for (long c = 0; c < n && r < m; ++c) {
    for (;;) {
      long best = -1;
      for (long i = r; i < m; ++i)
        if (H(i, c) != 0 && (best < 0 || mpz_cmpabs(H(i, c).get_mpz_t(), H(best, c).get_mpz_t()) < 0)) best = i;
      if (best < 0) break;
      row_swap(r, best);
      bool clean = true;
      for (long i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        row_axpy(i, r, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0)
      for (long j = 0; j < n; ++j) H(r, j) = -H(r, j);
    for (long i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
      row_axpy(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, n);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < n; ++j) out(i, j) = H(i, j);
  return out;
}

IntMatrix column_span(const IntMatrix& L) { return hermite_rows(L.transpose()).transpose(); }

IntMatrix kernel_lattice(const IntMatrix& A) {
  const SmithForm S = smith_normal_form(A);
  const long c = A.cols();
  IntMatrix K(c, c - S.rank);
  for (long i = 0; i < c; ++i)
    for (long j = S.rank; j < c; ++j) K(i, j - S.rank) = S.V(i, j);
  return column_span(K);
}

IntMatrix lattice_intersection(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) throw Error(ErrorKind::DimensionMismatch, "lattices in different ambient spaces");
  IntMatrix negB = B;
  for (long i = 0; i < B.rows(); ++i)
    for (long j = 0; j < B.cols(); ++j) negB(i, j) = -B(i, j);
  const IntMatrix K = kernel_lattice(A.hstack(negB));
  // x-part of each kernel vector, mapped through A
  IntMatrix X(A.cols(), K.cols());
  for (long i = 0; i < A.cols(); ++i)
    for (long j = 0; j < K.cols(); ++j) X(i, j) = K(i, j);
  return column_span(A * X);
}

namespace {

void check_lattice(const SubgroupLattice& T) {
  if (T.n < 0 || T.mult.rows() != T.n || T.ell.rows() != T.n) {
    throw Error(ErrorKind::DimensionMismatch, "subgroup lattices must have n = " + std::to_string(T.n) + " rows");
  }
}

void check_square(const IntMatrix& M, long n) {
  if (M.rows() != n || M.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "M must be " + std::to_string(n) + "x" + std::to_string(n));
  }
}

}  // namespace

SubgroupLattice SubgroupLattice::full(long n) { return {n, IntMatrix::identity(n), IntMatrix::identity(n)}; }
SubgroupLattice SubgroupLattice::trivial(long n) { return {n, IntMatrix(n, 0), IntMatrix(n, 0)}; }
long SubgroupLattice::dim_mult() const { return rank(mult); }
long SubgroupLattice::dim_ell() const { return rank(ell); }

long dim_image(const IntMatrix& M, const SubgroupLattice& T) {
  check_lattice(T);
  check_square(M, T.n);
  return rank(M * T.mult) + rank(M * T.ell);
}

RotundVerdict rotund_check(const SubgroupLattice& V, long height) {
  check_lattice(V);
  if (height < 0) throw Error(ErrorKind::InvalidArgument, "height must be non-negative");
  const long n = V.n;
  // primitive rows with positive leading entry, in decreasing lexicographic order
  std::vector<std::vector<long>> R;
  std::vector<long> v(static_cast<std::size_t>(n), -height);
  for (;;) {
    long g = 0;
    long lead = 0;
    for (long x : v) {
      g = std::gcd(g, x);
      if (lead == 0) lead = x;
    }
    if (g == 1 && lead > 0) R.push_back(v);
    long k = n - 1;
    while (k >= 0 && v[static_cast<std::size_t>(k)] == height) v[static_cast<std::size_t>(k--)] = -height;
    if (k < 0) break;
    ++v[static_cast<std::size_t>(k)];
  }
  std::reverse(R.begin(), R.end());

  RotundVerdict out;
  out.height = height;
  ++out.matrices_checked;  // the zero matrix: 0 >= 0
  std::vector<std::size_t> idx;
  for (long k = 1; k <= n; ++k) {
    if (static_cast<std::size_t>(k) > R.size()) break;
    idx.resize(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (;;) {
      IntMatrix M(n, n);
      for (long i = 0; i < k; ++i)
        for (long j = 0; j < n; ++j)
          M(i, j) = R[idx[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)];
      const long rk = rank(M);
      if (rk == k) {  // dependent choices repeat a row space met earlier
        ++out.matrices_checked;
        if (dim_image(M, V) < rk) {
          out.refuted = true;
          out.witness = M;
          return out;
        }
      }
      long i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == R.size() - static_cast<std::size_t>(k - i)) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (long j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

VMBound lemma_VM_bound(const SubgroupLattice& V, const IntMatrix& M) {
  check_lattice(V);
  check_square(M, V.n);
  const long rk = rank(M);
  VMBound b;
  b.r = V.n - rk;
  if (b.r == 0) throw Error(ErrorKind::FullRank, "M has full rank " + std::to_string(rk) + ", so r = 0");
  b.dim_V = V.dim();
  b.bound = b.dim_V - V.n + b.r;
  b.dim_MV = dim_image(M, V);
  const IntMatrix K = kernel_lattice(M);
  b.intersection_dim = rank(lattice_intersection(V.mult, K)) + rank(lattice_intersection(V.ell, K));
  b.rotund_for_M = b.dim_MV >= rk;
  return b;
}

LikelyVerdict persistently_likely(const SubgroupLattice& V, const SubgroupLattice& S,
                                  const std::vector<SubgroupLattice>& T_list) {
  for (const SubgroupLattice* L : {&V, &S}) {
    check_lattice(*L);
    if (L->n != V.n) throw Error(ErrorKind::DimensionMismatch, "V and S live in different E^n");
    if (L->dim_mult() != 0) throw Error(ErrorKind::InvalidArgument, "persistently_likely works in E^n only");
  }
  LikelyVerdict out;
  const long n = V.n;
  for (std::size_t t = 0; t < T_list.size(); ++t) {
    const SubgroupLattice& T = T_list[t];
    check_lattice(T);
    if (T.n != n) throw Error(ErrorKind::DimensionMismatch, "T lives in a different E^n");
    if (T.dim_mult() != 0) throw Error(ErrorKind::InvalidArgument, "persistently_likely works in E^n only");
    const long dT = rank(T.ell);
    LikelyCheck c;
    c.dim_psi_V = rank(V.ell.hstack(T.ell)) - dT;
    c.dim_psi_S = rank(S.ell.hstack(T.ell)) - dT;
    c.required = n - dT;
    c.holds = c.dim_psi_V + c.dim_psi_S >= c.required;
    if (!c.holds && !out.failing) {
      out.failing = t;
      out.persistently_likely = false;
    }
    out.checks.push_back(c);
  }
  return out;
}

bool atypical(long dimX, long dimV, long dimW, long dimZ) {
  if (dimX < 0 || dimX > std::min(dimV, dimW) || std::min(dimV, dimW) > dimZ) {
    throw Error(ErrorKind::InconsistentDimensions, "need 0 <= dim X <= min(dim V, dim W) <= dim Z");
  }
  return dimX > dimV + dimW - dimZ;
}

}  // namespace padic_tate
