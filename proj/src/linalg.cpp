#include "nilkit/linalg.hpp"

#include "nilkit/errors.hpp"

namespace nilkit {

std::vector<Int> SmithResult::invariants() const {
  std::vector<Int> inv;
  for (int i = 0; i < rank; ++i) inv.push_back(d(i, i));
  return inv;
}

SmithResult smith_normal_form(const IntMat& a) {
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  SmithResult r;
  r.d = a;
  r.u = IntMat::Identity(m, m);
  r.v = IntMat::Identity(n, n);
  IntMat& d = r.d;
  IntMat& u = r.u;
  IntMat& v = r.v;

  auto row_sub = [&](int i, int k, const Int& q) {
    d.row(i) -= q * d.row(k);
    u.row(i) -= q * u.row(k);
  };
  auto col_sub = [&](int j, int k, const Int& q) {
    d.col(j) -= q * d.col(k);
    v.col(j) -= q * v.col(k);
  };
  auto swap_rows = [&](int i, int k) {
    if (i == k) return;
    d.row(i).swap(d.row(k));
    u.row(i).swap(u.row(k));
  };
  auto swap_cols = [&](int j, int k) {
    if (j == k) return;
    d.col(j).swap(d.col(k));
    v.col(j).swap(v.col(k));
  };

  int t = 0;
  while (t < m && t < n) {
    // smallest nonzero entry of the trailing submatrix into the pivot slot
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (d(i, j) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool settled = false;
    while (!settled) {
      for (int i = t + 1; i < m; ++i)
        while (d(i, t) != 0) {
          row_sub(i, t, fdiv(d(i, t), d(t, t)));
          if (d(i, t) != 0) swap_rows(i, t);
        }
      bool col_dirty = false;
      for (int j = t + 1; j < n; ++j)
        while (d(t, j) != 0) {
          col_sub(j, t, fdiv(d(t, j), d(t, t)));
          if (d(t, j) != 0) {
            swap_cols(j, t);
            col_dirty = true;
          }
        }
      if (col_dirty) continue;  // column t may have been repopulated
      bool clean = true;
      for (int i = t + 1; i < m && clean; ++i) clean = d(i, t) == 0;
      if (!clean) continue;
      // divisibility of the rest of the submatrix by the pivot
      int bi = -1;
      for (int i = t + 1; i < m && bi < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (!divides(d(t, t), d(i, j))) {
            bi = i;
            break;
          }
      if (bi >= 0) {
        d.row(t) += d.row(bi);
        u.row(t) += u.row(bi);
        continue;
      }
      settled = true;
    }
    if (d(t, t) < 0) {
      d.row(t) = -d.row(t);
      u.row(t) = -u.row(t);
    }
    ++t;
  }
  r.rank = t;
  return r;
}

HermiteResult hermite_normal_form(const IntMat& a) {
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  HermiteResult r;
  r.h = a;
  r.v = IntMat::Identity(n, n);
  IntMat& h = r.h;
  IntMat& v = r.v;
  auto col_sub = [&](int j, int k, const Int& q) {
    h.col(j) -= q * h.col(k);
    v.col(j) -= q * v.col(k);
  };
  auto swap_cols = [&](int j, int k) {
    if (j == k) return;
    h.col(j).swap(h.col(k));
    v.col(j).swap(v.col(k));
  };
  int c = 0;
  for (int row = 0; row < m && c < n; ++row) {
    int j0 = -1;
    for (int j = c; j < n; ++j)
      if (h(row, j) != 0) {
        j0 = j;
        break;
      }
    if (j0 < 0) continue;
    swap_cols(c, j0);
    for (int j = c + 1; j < n; ++j)
      while (h(row, j) != 0) {
        col_sub(j, c, fdiv(h(row, j), h(row, c)));
        if (h(row, j) != 0) swap_cols(j, c);
      }
    if (h(row, c) < 0) {
      h.col(c) = -h.col(c);
      v.col(c) = -v.col(c);
    }
    for (int j = 0; j < c; ++j) col_sub(j, c, fdiv(h(row, j), h(row, c)));
    ++c;
  }
  r.rank = c;
  return r;
}

IntMat integer_kernel(const IntMat& a) {
  SmithResult s = smith_normal_form(a);
  const int n = static_cast<int>(a.cols());
  IntMat k(n, n - s.rank);
  for (int j = s.rank; j < n; ++j) k.col(j - s.rank) = s.v.col(j);
  return k;
}

std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b) {
  SmithResult s = smith_normal_form(a);
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  IntVec c = s.u * b;
  IntVec y = IntVec::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (!divides(s.d(i, i), c(i))) return std::nullopt;
      y(i) = c(i) / s.d(i, i);
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  return s.v * y;
}

bool lattice_contains(const IntMat& basis, const IntVec& v) {
  return solve_integer(basis, v).has_value();
}

Int lattice_saturation_exponent(const IntMat& basis, const IntMat& vs) {
  SmithResult s = smith_normal_form(basis);
  const int m = static_cast<int>(basis.rows());
  Int k = 1;
  for (int c = 0; c < vs.cols(); ++c) {
    IntVec w = s.u * vs.col(c);
    for (int i = 0; i < m; ++i) {
      if (i < s.rank) {
        if (w(i) == 0) continue;
        Int g = gcd(s.d(i, i), w(i));
        k = lcm(k, s.d(i, i) / g);
      } else if (w(i) != 0) {
        return 0;
      }
    }
  }
  return k;
}

}  // namespace nilkit
