#include "fpt/monomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fpt/errors.hpp"
#include "fpt/simplex.hpp"

namespace fpt {

namespace {

std::uint64_t total(const Exponents& u) {
  return std::accumulate(u.begin(), u.end(), std::uint64_t(0));
}

bool divides(const Exponents& g, const Exponents& u) {
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g[j] > u[j]) return false;
  }
  return true;
}

// Minimal antichain of a set of exponent vectors, lexicographically sorted.
// After dedup, every strict dominator precedes its multiples in lex order,
// so one ascending sweep suffices. For d <= 3 the "is some earlier kept
// vector below u" test is answered by a running minimum (d = 2) or a y -> z
// staircase of kept minima (d = 3), giving O(n log n) overall; Minkowski
// power chains hit this routine hard enough for the quadratic sweep to hurt.
std::vector<Exponents> normalize_antichain(std::vector<Exponents> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  const std::size_t d = gens.empty() ? 0 : gens[0].size();
  std::vector<Exponents> kept;

  if (d == 1) {
    kept.push_back(gens.front());  // lex minimum divides everything
  } else if (d == 2) {
    std::uint32_t min_y = 0;
    for (const auto& u : gens) {
      if (kept.empty() || u[1] < min_y) {
        kept.push_back(u);
        min_y = u[1];
      }
    }
  } else if (d == 3) {
    std::map<std::uint32_t, std::uint32_t> stairs;  // y -> min z, z decreasing in y
    for (const auto& u : gens) {
      const auto after = stairs.upper_bound(u[1]);
      if (after != stairs.begin() && std::prev(after)->second <= u[2]) continue;
      kept.push_back(u);
      auto it = stairs.lower_bound(u[1]);  // drop entries u now filters for
      while (it != stairs.end() && it->second >= u[2]) it = stairs.erase(it);
      stairs.insert(it, {u[1], u[2]});
    }
  } else {
    std::stable_sort(gens.begin(), gens.end(),
                     [](const Exponents& a, const Exponents& b) { return total(a) < total(b); });
    for (const auto& u : gens) {
      bool dominated = false;
      for (const auto& v : kept) {
        if (divides(v, u)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(u);
    }
    std::sort(kept.begin(), kept.end());
  }
  return kept;
}

lp::Problem threshold_program(const MonomialIdeal& a) {
  // Columns: mu_1..mu_m, s, w_1..w_d. Rows: sum(mu) = 1, then for each
  // coordinate j: sum_i mu_i v_ij - s + w_j = 0. Minimize s.
  const std::size_t m = a.gens().size(), d = a.dim();
  lp::Problem p;
  p.A.assign(1 + d, std::vector<Rational>(m + 1 + d, Rational(0)));
  p.b.assign(1 + d, Rational(0));
  p.c.assign(m + 1 + d, Rational(0));
  for (std::size_t i = 0; i < m; ++i) p.A[0][i] = Rational(1);
  p.b[0] = Rational(1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      p.A[1 + j][i] = Rational(std::uint64_t(a.gens()[i][j]));
    }
    p.A[1 + j][m] = Rational(-1);
    p.A[1 + j][m + 1 + j] = Rational(1);
  }
  p.c[m] = Rational(1);
  return p;
}

}  // namespace

MonomialIdeal::MonomialIdeal(std::size_t dim, std::vector<Exponents> gens) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("monomial ideal needs at least one variable");
  if (gens.empty()) throw std::invalid_argument("monomial ideal needs at least one generator");
  for (const auto& g : gens) {
    if (g.size() != dim) {
      throw std::invalid_argument("generator length does not match the ideal dimension");
    }
    if (total(g) == 0) throw std::invalid_argument("generator exponent vector is zero");
  }
  gens_ = normalize_antichain(std::move(gens));
}

bool MonomialIdeal::member(const Exponents& u) const {
  if (u.size() != dim_) {
    throw std::invalid_argument("point length does not match the ideal dimension");
  }
  for (const auto& g : gens_) {
    if (divides(g, u)) return true;
  }
  return false;
}

std::uint64_t MonomialIdeal::order() const {
  std::uint64_t best = ~std::uint64_t(0);
  for (const auto& g : gens_) best = std::min(best, total(g));
  return best;
}

std::optional<std::uint64_t> MonomialIdeal::equigenerated_degree() const {
  const std::uint64_t deg = total(gens_[0]);
  for (const auto& g : gens_) {
    if (total(g) != deg) return std::nullopt;
  }
  return deg;
}

MonomialIdeal MonomialIdeal::power(std::uint32_t n) const {
  if (n == 0) throw std::invalid_argument("monomial ideal power needs n >= 1");
  std::vector<Exponents> acc = gens_;
  for (std::uint32_t step = 1; step < n; ++step) {
    std::vector<Exponents> next;
    next.reserve(acc.size() * gens_.size());
    for (const auto& u : acc) {
      for (const auto& g : gens_) {
        Exponents s(dim_);
        for (std::size_t j = 0; j < dim_; ++j) s[j] = u[j] + g[j];
        next.push_back(std::move(s));
      }
    }
    acc = normalize_antichain(std::move(next));
  }
  return MonomialIdeal(dim_, std::move(acc));
}

MonomialIdeal operator+(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("ideal sum needs equal dimensions");
  std::vector<Exponents> gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  return MonomialIdeal(a.dim_, std::move(gens));
}

std::string MonomialIdeal::str() const {
  std::string out;
  for (const auto& g : gens_) {
    if (!out.empty()) out += ",";
    out += "(";
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j > 0) out += ",";
      out += std::to_string(g[j]);
    }
    out += ")";
  }
  return out;
}

NewtonPolytope newton_polytope(const MonomialIdeal& a) {
  return NewtonPolytope{a.dim(), a.gens()};
}

bool contains(const NewtonPolytope& polytope, const std::vector<Rational>& u) {
  if (u.size() != polytope.dim) {
    throw std::invalid_argument("point length does not match the polytope dimension");
  }
  for (const auto& c : u) {
    if (c < Rational(0)) return false;
  }
  // Feasibility: mu in the simplex, sum_i mu_i v_ij + slack_j = u_j.
  const std::size_t m = polytope.points.size(), d = polytope.dim;
  lp::Problem p;
  p.A.assign(1 + d, std::vector<Rational>(m + d, Rational(0)));
  p.b.assign(1 + d, Rational(0));
  p.c.assign(m + d, Rational(0));
  for (std::size_t i = 0; i < m; ++i) p.A[0][i] = Rational(1);
  p.b[0] = Rational(1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      p.A[1 + j][i] = Rational(std::uint64_t(polytope.points[i][j]));
    }
    p.A[1 + j][m + j] = Rational(1);
    p.b[1 + j] = u[j];
  }
  return lp::solve(p).feasible;
}

bool verify_fpt_certificate(const MonomialIdeal& a, const FptLpResult& r) {
  const std::size_t m = a.gens().size(), d = a.dim();
  if (r.mu.size() != m || r.coord_weights.size() != d) return false;
  if (r.s_star <= Rational(0)) return false;
  if (r.fpt * r.s_star != Rational(1)) return false;

  Rational mu_sum(0);
  for (const auto& v : r.mu) {
    if (v < Rational(0)) return false;
    mu_sum += v;
  }
  if (mu_sum != Rational(1)) return false;

  // Primal: the combination meets s_star and attains it on some coordinate.
  Rational max_coord(-1);
  for (std::size_t j = 0; j < d; ++j) {
    Rational coord(0);
    for (std::size_t i = 0; i < m; ++i) {
      coord += r.mu[i] * Rational(std::uint64_t(a.gens()[i][j]));
    }
    if (coord > r.s_star) return false;
    max_coord = std::max(max_coord, coord);
  }
  if (max_coord != r.s_star) return false;

  // Dual: probability weights over coordinates pricing every generator at
  // s_star or more, so no feasible point beats s_star.
  Rational y_sum(0);
  for (const auto& v : r.coord_weights) {
    if (v < Rational(0)) return false;
    y_sum += v;
  }
  if (y_sum != Rational(1)) return false;
  for (std::size_t i = 0; i < m; ++i) {
    Rational price(0);
    for (std::size_t j = 0; j < d; ++j) {
      price += r.coord_weights[j] * Rational(std::uint64_t(a.gens()[i][j]));
    }
    if (price < r.s_star) return false;
  }
  return true;
}

FptLpResult fpt_lp(const MonomialIdeal& a) {
  const std::size_t m = a.gens().size(), d = a.dim();
  const lp::Solution sol = lp::solve(threshold_program(a));
  if (!sol.feasible) throw InternalError("fpt_lp: threshold program infeasible");

  FptLpResult r;
  r.s_star = sol.objective;
  if (r.s_star <= Rational(0)) throw InternalError("fpt_lp: nonpositive optimum");
  r.fpt = Rational(1) / r.s_star;
  r.mu.assign(sol.x.begin(), sol.x.begin() + m);
  // Dual values of the coordinate rows are <= 0 with sum -1 at optimality;
  // negated they form the probability certificate.
  r.coord_weights.resize(d);
  for (std::size_t j = 0; j < d; ++j) r.coord_weights[j] = -sol.y[1 + j];

  if (!verify_fpt_certificate(a, r)) {
    throw InternalError("fpt_lp: certificate verification failed");
  }
  return r;
}

MonomialIdeal integral_closure(const MonomialIdeal& a) {
  const std::size_t d = a.dim();
  const NewtonPolytope polytope = newton_polytope(a);

  Exponents box(d, 0);
  for (const auto& g : a.gens()) {
    for (std::size_t j = 0; j < d; ++j) box[j] = std::max(box[j], g[j]);
  }
  std::uint64_t cells = 1;
  for (std::uint32_t b : box) {
    cells *= b + 1;
    if (cells > (std::uint64_t(1) << 22)) {
      throw ResourceLimitError("integral closure box is too large");
    }
  }

  // Scan the box in ascending total degree; a point dominated by an accepted
  // one is in the closure but not minimal, so only undominated points reach
  // the membership test. Strict dominators have strictly smaller degree,
  // hence were scanned earlier: the accepted set is exactly the antichain.
  std::vector<Exponents> points;
  points.reserve(cells);
  Exponents u(d, 0);
  for (;;) {
    points.push_back(u);
    std::size_t j = 0;
    while (j < d && u[j] == box[j]) u[j++] = 0;
    if (j == d) break;
    ++u[j];
  }
  std::stable_sort(points.begin(), points.end(), [](const Exponents& x, const Exponents& y) {
    return total(x) != total(y) ? total(x) < total(y) : x < y;
  });

  std::vector<Exponents> minimal;
  std::vector<Rational> point(d);
  for (const auto& cand : points) {
    if (total(cand) == 0) continue;
    bool dominated = false;
    for (const auto& v : minimal) {
      if (divides(v, cand)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    for (std::size_t j = 0; j < d; ++j) point[j] = Rational(std::uint64_t(cand[j]));
    if (contains(polytope, point)) minimal.push_back(cand);
  }
  return MonomialIdeal(d, std::move(minimal));
}

std::uint32_t height(const MonomialIdeal& a) {
  const std::size_t d = a.dim();
  if (d > 24) throw ResourceLimitError("height supports at most 24 variables");
  for (std::uint32_t size = 1; size <= d; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      if (static_cast<std::uint32_t>(__builtin_popcount(mask)) != size) continue;
      bool covers = true;
      for (const auto& g : a.gens()) {
        bool hit = false;
        for (std::size_t j = 0; j < d && !hit; ++j) {
          hit = (mask >> j & 1) != 0 && g[j] > 0;
        }
        if (!hit) {
          covers = false;
          break;
        }
      }
      if (covers) return size;
    }
  }
  throw InternalError("height: no cover found");
}

namespace {

// #{u >= 0 : X^u not in b}, for b m-primary with minimal antichain gens.
// After normalization every generator is bounded by the pure powers, so the
// complement lies in the box below them; columns are counted by sweeping a
// running minimum of the last coordinate.
std::uint64_t complement_count(std::size_t d, const std::vector<Exponents>& gens) {
  if (d == 1) {
    std::uint64_t best = ~std::uint64_t(0);
    for (const auto& g : gens) best = std::min<std::uint64_t>(best, g[0]);
    return best;
  }
  if (d == 2) {
    std::uint32_t b1 = 0;
    for (const auto& g : gens) b1 = std::max(b1, g[0]);
    std::uint64_t count = 0;
    for (std::uint32_t u1 = 0; u1 < b1; ++u1) {
      std::uint64_t t = ~std::uint64_t(0);
      for (const auto& g : gens) {
        if (g[0] <= u1) t = std::min<std::uint64_t>(t, g[1]);
      }
      count += t;  // points (u1, 0..t-1); t is finite via the pure y power
    }
    return count;
  }
  std::uint32_t b1 = 0, b2 = 0;
  for (const auto& g : gens) {
    b1 = std::max(b1, g[0]);
    b2 = std::max(b2, g[1]);
  }
  const std::uint64_t inf = ~std::uint64_t(0);
  std::vector<std::uint64_t> grid(std::size_t(b1) * b2, inf);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return grid[i * b2 + j]; };
  for (const auto& g : gens) {
    if (g[0] < b1 && g[1] < b2) at(g[0], g[1]) = std::min<std::uint64_t>(at(g[0], g[1]), g[2]);
  }
  std::uint64_t count = 0;
  for (std::uint32_t i = 0; i < b1; ++i) {
    for (std::uint32_t j = 0; j < b2; ++j) {
      std::uint64_t t = at(i, j);
      if (i > 0) t = std::min(t, at(i - 1, j));
      if (j > 0) t = std::min(t, at(i, j - 1));
      at(i, j) = t;
      count += t;  // finite: the pure z power sits at grid cell (0, 0)
    }
  }
  return count;
}

}  // namespace

std::uint64_t multiplicity(const MonomialIdeal& a) {
  const std::size_t d = a.dim();
  if (d > 3) throw std::invalid_argument("multiplicity supports d <= 3");
  for (std::size_t j = 0; j < d; ++j) {
    const bool pure = std::any_of(a.gens().begin(), a.gens().end(), [&](const Exponents& g) {
      for (std::size_t k = 0; k < d; ++k) {
        if (k != j && g[k] != 0) return false;
      }
      return g[j] > 0;
    });
    if (!pure) throw NotMPrimaryError("x" + std::to_string(j + 1));
  }

  constexpr std::uint32_t kMaxSteps = 48;
  std::vector<std::int64_t> counts;  // counts[n-1] = L(n)
  MonomialIdeal pw = a;
  for (std::uint32_t n = 1; n <= kMaxSteps; ++n) {
    if (n > 1) {
      // pw = a^n, extending the previous power by one Minkowski step.
      std::vector<Exponents> next;
      next.reserve(pw.gens().size() * a.gens().size());
      for (const auto& u : pw.gens()) {
        for (const auto& g : a.gens()) {
          Exponents s(d);
          for (std::size_t j = 0; j < d; ++j) s[j] = u[j] + g[j];
          next.push_back(std::move(s));
        }
      }
      pw = MonomialIdeal(d, std::move(next));
    }
    counts.push_back(static_cast<std::int64_t>(complement_count(d, pw.gens())));

    if (counts.size() >= d + 3) {
      std::vector<std::int64_t> diff = counts;
      for (std::size_t round = 0; round < d; ++round) {
        for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
      }
      const std::size_t k = diff.size();
      if (k >= 3 && diff[k - 1] == diff[k - 2] && diff[k - 2] == diff[k - 3]) {
        if (diff[k - 1] <= 0) throw InternalError("multiplicity: nonpositive limit");
        return static_cast<std::uint64_t>(diff[k - 1]);
      }
    }
  }
  throw ResourceLimitError("multiplicity did not stabilize within the step budget");
}

}  // namespace fpt
