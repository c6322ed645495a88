#include "primtop/lattice.hpp"

#include <algorithm>
#include <map>

#include "primtop/errors.hpp"

namespace primtop {

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<Int> IMat::row(int r) const {
  std::vector<Int> out(cols);
  for (int c = 0; c < cols; ++c) out[c] = at(r, c);
  return out;
}

IMat matmul(const IMat& x, const IMat& y) {
  if (x.cols != y.rows) throw domain_error("ShapeMismatch", "matmul shape mismatch");
  IMat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int t = 0; t < x.cols; ++t) {
      if (x.at(i, t) == 0) continue;
      for (int j = 0; j < y.cols; ++j) out.at(i, j) += x.at(i, t) * y.at(t, j);
    }
  return out;
}

Int det(IMat m) {
  if (m.rows != m.cols) throw domain_error("ShapeMismatch", "det of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int t = 0; t < n - 1; ++t) {
    if (m.at(t, t) == 0) {
      int p = -1;
      for (int i = t + 1; i < n; ++i)
        if (m.at(i, t) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(m.at(t, c), m.at(p, c));
      sign = -sign;
    }
    for (int i = t + 1; i < n; ++i)
      for (int j = t + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(t, t) - m.at(i, t) * m.at(t, j)) / prev;
    prev = m.at(t, t);
  }
  return sign * m.at(n - 1, n - 1);
}

namespace {

void swap_rows(IMat& m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}
void swap_cols(IMat& m, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}
// row i -= q * row t
void row_sub(IMat& m, int i, int t, const Int& q) {
  if (q == 0) return;
  for (int c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(t, c);
}
void col_sub(IMat& m, int i, int t, const Int& q) {
  if (q == 0) return;
  for (int r = 0; r < m.rows; ++r) m.at(r, i) -= q * m.at(r, t);
}
void negate_row(IMat& m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithResult smith_normal_form(const IMat& A) {
  IMat D = A, U = IMat::identity(A.rows), V = IMat::identity(A.cols);
  int n = std::min(A.rows, A.cols);
  for (int t = 0; t < n; ++t) {
    // pivot: smallest nonzero |entry| of the trailing block
    int pr = -1, pc = -1;
    for (int i = t; i < D.rows; ++i)
      for (int j = t; j < D.cols; ++j) {
        if (D.at(i, j) == 0) continue;
        if (pr < 0 || abs(D.at(i, j)) < abs(D.at(pr, pc))) {
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;
    if (pr != t) {
      swap_rows(D, pr, t);
      swap_rows(U, pr, t);
    }
    if (pc != t) {
      swap_cols(D, pc, t);
      swap_cols(V, pc, t);
    }
    bool dirty = true;
    while (dirty) {
      dirty = false;
      // clear column t by euclidean steps
      for (int i = t + 1; i < D.rows; ++i) {
        while (D.at(i, t) != 0) {
          Int q = D.at(i, t) / D.at(t, t);
          row_sub(D, i, t, q);
          row_sub(U, i, t, q);
          if (D.at(i, t) != 0) {
            swap_rows(D, i, t);
            swap_rows(U, i, t);
            dirty = true;
          }
        }
      }
      // clear row t
      for (int j = t + 1; j < D.cols; ++j) {
        while (D.at(t, j) != 0) {
          Int q = D.at(t, j) / D.at(t, t);
          col_sub(D, j, t, q);
          col_sub(V, j, t, q);
          if (D.at(t, j) != 0) {
            swap_cols(D, j, t);
            swap_cols(V, j, t);
            dirty = true;
          }
        }
      }
    }
    // divisibility: fold any non-divisible entry into the pivot's row
    bool restart = true;
    while (restart) {
      restart = false;
      for (int i = t + 1; i < D.rows && !restart; ++i)
        for (int j = t + 1; j < D.cols && !restart; ++j)
          if (D.at(i, j) % D.at(t, t) != 0) {
            // add row i to row t, re-clear
            for (int c = 0; c < D.cols; ++c) D.at(t, c) += D.at(i, c);
            for (int c = 0; c < U.cols; ++c) U.at(t, c) += U.at(i, c);
            bool d2 = true;
            while (d2) {
              d2 = false;
              for (int ii = t + 1; ii < D.rows; ++ii)
                while (D.at(ii, t) != 0) {
                  Int q = D.at(ii, t) / D.at(t, t);
                  row_sub(D, ii, t, q);
                  row_sub(U, ii, t, q);
                  if (D.at(ii, t) != 0) {
                    swap_rows(D, ii, t);
                    swap_rows(U, ii, t);
                  }
                }
              for (int jj = t + 1; jj < D.cols; ++jj)
                while (D.at(t, jj) != 0) {
                  Int q = D.at(t, jj) / D.at(t, t);
                  col_sub(D, jj, t, q);
                  col_sub(V, jj, t, q);
                  if (D.at(t, jj) != 0) {
                    swap_cols(D, jj, t);
                    swap_cols(V, jj, t);
                    d2 = true;
                  }
                }
            }
            restart = true;
          }
    }
    if (D.at(t, t) < 0) {
      negate_row(D, t);
      negate_row(U, t);
    }
  }
  return {U, D, V};
}

std::pair<IMat, IMat> hermite_rows_with_transform(const IMat& A) {
  IMat H = A, T = IMat::identity(A.rows);
  int r = 0;
  for (int c = 0; c < H.cols && r < H.rows; ++c) {
    // bring the column gcd to row r
    while (true) {
      int p = -1;
      for (int i = r; i < H.rows; ++i)
        if (H.at(i, c) != 0 && (p < 0 || abs(H.at(i, c)) < abs(H.at(p, c)))) p = i;
      if (p < 0) break;
      if (p != r) {
        swap_rows(H, p, r);
        swap_rows(T, p, r);
      }
      bool any = false;
      for (int i = r + 1; i < H.rows; ++i)
        if (H.at(i, c) != 0) {
          Int q = H.at(i, c) / H.at(r, c);
          row_sub(H, i, r, q);
          row_sub(T, i, r, q);
          if (H.at(i, c) != 0) any = true;
        }
      if (!any) break;
    }
    if (H.at(r, c) == 0) continue;
    if (H.at(r, c) < 0) {
      negate_row(H, r);
      negate_row(T, r);
    }
    for (int i = 0; i < r; ++i) {
      Int q = floor_div(H.at(i, c), H.at(r, c));
      row_sub(H, i, r, q);
      row_sub(T, i, r, q);
    }
    ++r;
  }
  IMat out(r, H.cols);
  for (int i = 0; i < r; ++i)
    for (int c = 0; c < H.cols; ++c) out.at(i, c) = H.at(i, c);
  return {out, T};
}

IMat hermite_rows(const IMat& A) { return hermite_rows_with_transform(A).first; }

IMat integer_kernel(const IMat& A) {
  auto [U, D, V] = smith_normal_form(A);
  int n = A.cols;
  std::vector<int> free_cols;
  for (int i = 0; i < n; ++i) {
    bool constrained = i < std::min(A.rows, A.cols) && D.at(i, i) != 0;
    if (!constrained) free_cols.push_back(i);
  }
  IMat K(static_cast<int>(free_cols.size()), n);
  for (size_t r = 0; r < free_cols.size(); ++r)
    for (int j = 0; j < n; ++j) K.at(static_cast<int>(r), j) = V.at(j, free_cols[r]);
  return hermite_rows(K);
}

IntSubgroup IntSubgroup::zero(int k) {
  IntSubgroup s;
  s.k = k;
  s.basis = IMat(0, k);
  return s;
}

IntSubgroup IntSubgroup::whole(int k) {
  IntSubgroup s;
  s.k = k;
  s.basis = IMat::identity(k);
  return s;
}

IntSubgroup IntSubgroup::from_generators(int k, const std::vector<std::vector<Int>>& gens) {
  IMat G(static_cast<int>(gens.size()), k);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (static_cast<int>(gens[i].size()) != k)
      throw domain_error("RankMismatch", "generator length differs from ambient rank");
    for (int c = 0; c < k; ++c) G.at(static_cast<int>(i), c) = gens[i][c];
  }
  IntSubgroup s;
  s.k = k;
  s.basis = hermite_rows(G);
  return s;
}

bool IntSubgroup::contains(const std::vector<Int>& v) const {
  if (static_cast<int>(v.size()) != k)
    throw domain_error("RankMismatch", "vector length differs from ambient rank");
  std::vector<Int> w = v;
  for (int r = 0; r < basis.rows; ++r) {
    int c = 0;
    while (c < k && basis.at(r, c) == 0) ++c;
    if (c == k) continue;
    if (w[c] % basis.at(r, c) != 0) return false;
    Int q = w[c] / basis.at(r, c);
    for (int j = 0; j < k; ++j) w[j] -= q * basis.at(r, j);
  }
  for (const auto& x : w)
    if (x != 0) return false;
  return true;
}

CharacterVector CharacterVector::zero(int k) {
  CharacterVector c;
  c.t.assign(k, RationalAngle());
  return c;
}

RationalAngle CharacterVector::eval(const std::vector<Int>& gamma) const {
  if (gamma.size() != t.size())
    throw domain_error("RankMismatch", "character evaluated at wrong rank");
  Ratio acc(0);
  for (size_t i = 0; i < t.size(); ++i) acc += t[i].value() * Ratio(gamma[i]);
  return RationalAngle(acc);
}

bool TorusSubgroupDesc::contains(const CharacterVector& t) const {
  if (t.k() != k) throw domain_error("RankMismatch", "character rank differs");
  for (int r = 0; r < dual_lattice.basis.rows; ++r) {
    Ratio acc(0);
    for (int c = 0; c < k; ++c) acc += t.t[c].value() * Ratio(dual_lattice.basis.at(r, c));
    if (denominator(acc) != 1) return false;
  }
  return true;
}

bool TorusSubgroupDesc::is_trivial() const { return dual_lattice == IntSubgroup::whole(k); }
bool TorusSubgroupDesc::is_full() const { return dual_lattice.rank() == 0; }

TorusSubgroupDesc make_torus_desc(int k, std::vector<CharacterVector> generators,
                                  IMat connected_dims) {
  TorusSubgroupDesc d;
  d.k = k;
  d.generators = std::move(generators);
  d.connected_dims = connected_dims.cols == k ? connected_dims : IMat(0, k);
  // dual lattice: l with <dir, l> = 0 for subtorus directions and
  // <g, l> in Z for finite generators. With N the common denominator of the
  // generators, stack [dirs 0; N*gens N*I] and project the kernel.
  Int N = 1;
  for (const auto& g : d.generators)
    for (const auto& a : g.t) N = lcm(N, denominator(a.value()));
  int ng = static_cast<int>(d.generators.size());
  int nd = d.connected_dims.rows;
  IMat B(nd + ng, k + ng);
  for (int i = 0; i < nd; ++i)
    for (int c = 0; c < k; ++c) B.at(i, c) = d.connected_dims.at(i, c);
  for (int i = 0; i < ng; ++i) {
    for (int c = 0; c < k; ++c) {
      Ratio scaled = d.generators[i].t[c].value() * Ratio(N);
      B.at(nd + i, c) = numerator(scaled);  // integral by choice of N
    }
    B.at(nd + i, k + i) = N;
  }
  IMat K = integer_kernel(B);
  IMat proj(K.rows, k);
  for (int r = 0; r < K.rows; ++r)
    for (int c = 0; c < k; ++c) proj.at(r, c) = K.at(r, c);
  IntSubgroup dual;
  dual.k = k;
  dual.basis = hermite_rows(proj);
  d.dual_lattice = dual;
  return d;
}

TorusSubgroupDesc annihilator(const IntSubgroup& P) {
  auto [U, D, V] = smith_normal_form(P.basis);
  int k = P.k;
  std::vector<CharacterVector> gens;
  std::vector<std::vector<Int>> dirs;
  int m = std::min(P.basis.rows, k);
  for (int i = 0; i < k; ++i) {
    Int d = i < m ? D.at(i, i) : Int(0);
    if (d == 0) {
      std::vector<Int> col(k);
      for (int r = 0; r < k; ++r) col[r] = V.at(r, i);
      dirs.push_back(col);
    } else if (d > 1) {
      CharacterVector g;
      g.t.resize(k);
      for (int r = 0; r < k; ++r) g.t[r] = RationalAngle(Ratio(V.at(r, i), d));
      gens.push_back(g);
    }
  }
  IMat dm(static_cast<int>(dirs.size()), k);
  for (size_t r = 0; r < dirs.size(); ++r)
    for (int c = 0; c < k; ++c) dm.at(static_cast<int>(r), c) = dirs[r][c];
  return make_torus_desc(k, std::move(gens), dm);
}

IntSubgroup annihilator_lattice(const TorusSubgroupDesc& T) { return T.dual_lattice; }

std::vector<CharacterVector> enumerate_finite_part(const TorusSubgroupDesc& T, size_t cap) {
  std::vector<CharacterVector> out{CharacterVector::zero(T.k)};
  std::map<std::vector<Ratio>, bool> seen;
  auto key = [](const CharacterVector& c) {
    std::vector<Ratio> v;
    for (const auto& a : c.t) v.push_back(a.value());
    return v;
  };
  seen[key(out[0])] = true;
  // closure of the generated subgroup of the finite part
  size_t head = 0;
  while (head < out.size()) {
    CharacterVector cur = out[head++];
    for (const auto& g : T.generators) {
      CharacterVector nxt;
      nxt.t.resize(T.k);
      for (int i = 0; i < T.k; ++i) nxt.t[i] = cur.t[i] + g.t[i];
      if (!seen.count(key(nxt))) {
        seen[key(nxt)] = true;
        out.push_back(nxt);
        if (out.size() > cap)
          throw domain_error("FinitePartTooLarge", "finite part exceeds enumeration cap");
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool char_eq_on(const IntSubgroup& P, const CharacterVector& t1, const CharacterVector& t2) {
  if (t1.k() != P.k || t2.k() != P.k)
    throw domain_error("RankMismatch", "character rank differs from subgroup rank");
  for (int r = 0; r < P.basis.rows; ++r) {
    Ratio acc(0);
    for (int c = 0; c < P.k; ++c)
      acc += (t1.t[c].value() - t2.t[c].value()) * Ratio(P.basis.at(r, c));
    if (denominator(acc) != 1) return false;
  }
  return true;
}

bool AlongSample::set_contains(const std::vector<Int>& gamma) const {
  if (is_subgroup) return subgroup.contains(gamma);
  return std::find(finite.begin(), finite.end(), gamma) != finite.end();
}

bool converges_along(const std::vector<AlongSample>& samples, const CharacterVector& limit,
                     const std::vector<std::vector<Int>>& test_set, const Ratio& eps) {
  if (samples.empty()) throw domain_error("EmptySamples", "convergence needs at least one sample");
  if (eps <= 0) throw domain_error("BadEps", "eps must be positive");
  int len = static_cast<int>(samples.size());
  for (const auto& gamma : test_set) {
    RationalAngle target = limit.eval(gamma);
    // last violating index; an admissible N must lie strictly after it and
    // still be a valid sample index
    int last_bad = -1;
    for (int n = 0; n < len; ++n) {
      if (!samples[n].set_contains(gamma)) continue;
      if (samples[n].chi.k() != limit.k())
        throw domain_error("RankMismatch", "sample rank differs from limit rank");
      if (!chord_lt(samples[n].chi.eval(gamma), target, eps)) last_bad = n;
    }
    if (last_bad == len - 1) return false;
  }
  return true;
}

}  // namespace primtop
