#include "epsilocal/abelian_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "epsilocal/error.hpp"

namespace epsilocal {
namespace {

i64 checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw InvariantError("integer matrix overflow");
  return static_cast<i64>(v);
}

IntMatrix identity(std::size_t n) {
  IntMatrix I(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

i64 mod_nonneg(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

class SmithWorker {
 public:
  explicit SmithWorker(IntMatrix A)
      : a_(std::move(A)), n_(a_.size()), u_(identity(n_)), v_(identity(n_)), vi_(identity(n_)) {}

  SmithForm run() {
    for (std::size_t t = 0; t < n_; ++t) {
      if (!pivot(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < n_; ++i) {
          if (a_[i][t] == 0) continue;
          const i64 q = floor_div(a_[i][t], a_[t][t]);
          row_addmul(i, t, -q);
          if (a_[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n_; ++j) {
          if (a_[t][j] == 0) continue;
          const i64 q = floor_div(a_[t][j], a_[t][t]);
          col_addmul(j, t, -q);
          if (a_[t][j] != 0) clean = false;
        }
        if (!clean) {
          pivot(t);
          continue;
        }
        bool divisible = true;
        for (std::size_t i = t + 1; i < n_ && divisible; ++i) {
          for (std::size_t j = t + 1; j < n_; ++j) {
            if (a_[i][j] % a_[t][t] != 0) {
              row_addmul(t, i, 1);
              divisible = false;
              break;
            }
          }
        }
        if (divisible) break;
      }
      if (a_[t][t] < 0) col_negate(t);
    }
    SmithForm out;
    for (std::size_t i = 0; i < n_; ++i) out.diagonal.push_back(a_[i][i]);
    out.U = std::move(u_);
    out.V = std::move(v_);
    out.V_inverse = std::move(vi_);
    return out;
  }

 private:
  static i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  // Moves the smallest nonzero entry of the trailing block to (t, t).
  bool pivot(std::size_t t) {
    std::size_t bi = n_, bj = n_;
    for (std::size_t i = t; i < n_; ++i) {
      for (std::size_t j = t; j < n_; ++j) {
        if (a_[i][j] == 0) continue;
        if (bi == n_ || std::llabs(a_[i][j]) < std::llabs(a_[bi][bj])) {
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == n_) return false;
    if (bi != t) {
      std::swap(a_[bi], a_[t]);
      std::swap(u_[bi], u_[t]);
    }
    if (bj != t) col_swap(bj, t);
    return true;
  }

  // row_i += k * row_j
  void row_addmul(std::size_t i, std::size_t j, i64 k) {
    for (std::size_t c = 0; c < n_; ++c) {
      a_[i][c] = checked(a_[i][c] + static_cast<__int128>(k) * a_[j][c]);
      u_[i][c] = checked(u_[i][c] + static_cast<__int128>(k) * u_[j][c]);
    }
  }

  // col_i += k * col_j; V^-1 picks up row_j -= k * row_i.
  void col_addmul(std::size_t i, std::size_t j, i64 k) {
    for (std::size_t r = 0; r < n_; ++r) {
      a_[r][i] = checked(a_[r][i] + static_cast<__int128>(k) * a_[r][j]);
      v_[r][i] = checked(v_[r][i] + static_cast<__int128>(k) * v_[r][j]);
    }
    for (std::size_t c = 0; c < n_; ++c) {
      vi_[j][c] = checked(vi_[j][c] - static_cast<__int128>(k) * vi_[i][c]);
    }
  }

  void col_swap(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n_; ++r) {
      std::swap(a_[r][i], a_[r][j]);
      std::swap(v_[r][i], v_[r][j]);
    }
    std::swap(vi_[i], vi_[j]);
  }

  void col_negate(std::size_t i) {
    for (std::size_t r = 0; r < n_; ++r) {
      a_[r][i] = -a_[r][i];
      v_[r][i] = -v_[r][i];
    }
    for (auto& c : vi_[i]) c = -c;
  }

  IntMatrix a_;
  std::size_t n_;
  IntMatrix u_, v_, vi_;
};

}  // namespace

SmithForm smith_normal_form(IntMatrix A) {
  for (const auto& row : A) {
    if (row.size() != A.size()) throw InputError("smith_normal_form needs a square matrix");
  }
  return SmithWorker(std::move(A)).run();
}

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B) {
  const std::size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
  IntMatrix C(n, std::vector<i64>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        C[i][j] = checked(C[i][j] + static_cast<__int128>(A[i][l]) * B[l][j]);
      }
    }
  }
  return C;
}

std::shared_ptr<const UnitQuotient> UnitQuotient::build(const ResidueRing& ring) {
  std::shared_ptr<UnitQuotient> q(new UnitQuotient(ring));
  const int m = ring.level();

  std::vector<u64> candidates{ring.residue_generator()};
  for (int j = 1; j < m; ++j) {
    for (int i = 0; i < ring.residue_degree(); ++i) {
      candidates.push_back(ring.add(ring.one(), ring.uniformizer_basis(j, i)));
    }
  }
  const std::size_t r = candidates.size();

  // Incremental closure: every element of the subgroup generated so far,
  // with an exponent vector over the candidates.
  std::unordered_map<u64, std::vector<i64>> span{{ring.one(), std::vector<i64>(r, 0)}};
  IntMatrix relations;
  for (std::size_t c = 0; c < r; ++c) {
    const u64 g = candidates[c];
    i64 k = 1;
    u64 gk = g;
    while (!span.count(gk)) {
      gk = ring.mul(gk, g);
      ++k;
    }
    std::vector<i64> rel = span.at(gk);
    for (auto& x : rel) x = -x;
    rel[c] += k;
    relations.push_back(rel);
    if (k == 1) continue;
    std::vector<std::pair<u64, std::vector<i64>>> base(span.begin(), span.end());
    u64 power = ring.one();
    for (i64 e = 1; e < k; ++e) {
      power = ring.mul(power, g);
      for (const auto& [key, vec] : base) {
        std::vector<i64> v = vec;
        v[c] += e;
        span.emplace(ring.mul(key, power), std::move(v));
      }
    }
  }

  u64 expected = static_cast<u64>(ring.residue_size() - 1);
  for (int j = 1; j < m; ++j) expected *= static_cast<u64>(ring.residue_size());
  if (span.size() != expected) {
    throw InvariantError("unit quotient has " + std::to_string(span.size()) +
                         " elements, expected " + std::to_string(expected));
  }

  const SmithForm snf = smith_normal_form(relations);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < r; ++i) {
    if (snf.diagonal[i] == 0) throw InvariantError("relation lattice is not of full rank");
    if (snf.diagonal[i] != 1) kept.push_back(i);
  }
  for (std::size_t i : kept) {
    q->orders_.push_back(snf.diagonal[i]);
    u64 h = ring.one();
    for (std::size_t j = 0; j < r; ++j) {
      const i64 e = mod_nonneg(snf.V_inverse[i][j], static_cast<i64>(span.size()));
      h = ring.mul(h, ring.power(candidates[j], static_cast<u64>(e)));
    }
    q->generators_.push_back(h);
    q->exponent_ = lcm_i64(q->exponent_, snf.diagonal[i]);
  }

  q->elements_.reserve(span.size());
  for (const auto& entry : span) q->elements_.push_back(entry.first);
  std::sort(q->elements_.begin(), q->elements_.end());
  q->coords_.resize(q->elements_.size());
  for (std::size_t idx = 0; idx < q->elements_.size(); ++idx) {
    const u64 key = q->elements_[idx];
    q->index_.emplace(key, idx);
    const auto& e = span.at(key);
    std::vector<i64> y;
    for (std::size_t i : kept) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < r; ++j) acc += static_cast<__int128>(e[j]) * snf.V[j][i];
      const i64 d = snf.diagonal[i];
      i64 v = static_cast<i64>(acc % d);
      if (v < 0) v += d;
      y.push_back(v);
    }
    q->coords_[idx] = std::move(y);
  }

  for (std::size_t i = 0; i < q->generators_.size(); ++i) {
    const auto& y = q->dlog(q->generators_[i]);
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] != (i == j ? 1 : 0)) throw InvariantError("generator discrete log is not a basis vector");
    }
  }
  return q;
}

const std::vector<i64>& UnitQuotient::dlog(u64 key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) {
    throw InvariantError("discrete log of key " + std::to_string(key) + " outside U/U^" +
                         std::to_string(level()));
  }
  return coords_[it->second];
}

std::vector<u64> UnitQuotient::filtration_generators(int j) const {
  if (j == 0) return {ring_.residue_generator()};
  std::vector<u64> out;
  if (j >= level()) return out;
  for (int i = 0; i < ring_.residue_degree(); ++i) {
    out.push_back(ring_.add(ring_.one(), ring_.uniformizer_basis(j, i)));
  }
  return out;
}

}  // namespace epsilocal
