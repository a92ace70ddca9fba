#include "qfc/spacetime.hpp"

#include <cmath>
#include <stdexcept>

namespace qfc::st {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_dim(const Point& X, const Point& Y) {
  if (X.dim() != Y.dim()) throw std::invalid_argument("spacetime: dimension mismatch");
  if (X.dim() < 1) throw std::invalid_argument("spacetime: d >= 1 required");
}

double spatial_dist(const Point& X, const Point& Y) {
  double s = 0.0;
  for (std::size_t i = 0; i < X.dim(); ++i) {
    const double d = Y.x[i] - X.x[i];
    s += d * d;
  }
  return std::sqrt(s);
}

struct BallView {  // PointLike is a radius-0 ball
  const Point* c;
  double r;
};

std::optional<BallView> as_ball(const Region& reg) {
  if (auto* b = std::get_if<Ball>(&reg.shape)) return BallView{&b->center, b->radius};
  if (auto* p = std::get_if<PointLike>(&reg.shape)) return BallView{&p->center, 0.0};
  return std::nullopt;
}

double min_time(const Region& reg) {
  if (auto bv = as_ball(reg)) return bv->c->t - bv->r;
  return std::get<Slab>(reg.shape).t0;
}

double max_time(const Region& reg) {
  if (auto bv = as_ball(reg)) return bv->c->t + bv->r;
  return std::get<Slab>(reg.shape).t1;
}

}  // namespace

std::size_t Region::dim() const {
  if (auto* b = std::get_if<Ball>(&shape)) return b->center.dim();
  if (auto* p = std::get_if<PointLike>(&shape)) return p->center.dim();
  return std::get<Slab>(shape).d;
}

IntervalClass classify_interval(const Point& X, const Point& Y) {
  check_dim(X, Y);
  const double dt = Y.t - X.t;
  const double dx = spatial_dist(X, Y);
  const double s2 = -dt * dt + dx * dx;
  IntervalClass c;
  c.interval2 = s2;
  const double scale = std::max(1.0, dt * dt + dx * dx);
  if (std::abs(s2) <= kGeomTol * scale)
    c.kind = IntervalKind::Null;
  else
    c.kind = (s2 < 0.0) ? IntervalKind::Timelike : IntervalKind::Spacelike;
  c.order = (dt > 0.0) ? TimeOrder::Future : (dt < 0.0 ? TimeOrder::Past : TimeOrder::Simultaneous);
  return c;
}

// For two closed balls (radii rA, rB, centre separation Dt = tB - tA,
// Dx = |xB - xA|) the extremes of g(a,b) = (tb - ta) - |xb - xa| over the
// Minkowski sum (a ball of radius R = rA + rB) are
//   sup g = Dt + sqrt(2)R - Dx          if Dx >= R/sqrt(2)
//         = Dt + sqrt(R^2 - Dx^2)       otherwise (spatial overlap reachable)
//   inf g = Dt - sqrt(2)R - Dx
// Precedence wants sup g >= 0; full ordering wants inf g >= 0; entire
// spacelikeness wants |Dx| - |Dt| > sqrt(2)R with no spatial overlap.
bool region_precedes(const Region& A, const Region& B) {
  if (A.dim() != B.dim()) throw std::invalid_argument("region_precedes: dimension mismatch");

  const auto ba = as_ball(A);
  const auto bb = as_ball(B);
  if (ba && bb) {
    const double R = ba->r + bb->r;
    const double Dt = bb->c->t - ba->c->t;
    const double Dx = spatial_dist(*ba->c, *bb->c);
    double sup;
    if (Dx >= R / kSqrt2)
      sup = Dt + kSqrt2 * R - Dx;
    else
      sup = Dt + std::sqrt(std::max(0.0, R * R - Dx * Dx));
    return sup >= -kGeomTol * std::max(1.0, std::abs(Dt) + Dx + R);
  }
  // Slabs extend over all of space, so only the time ranges matter: pick both
  // points at the same spatial location.
  return min_time(A) <= max_time(B) + kGeomTol * std::max(1.0, std::abs(max_time(B)));
}

bool entirely_spacelike(const Region& A, const Region& B) {
  if (A.dim() != B.dim()) throw std::invalid_argument("entirely_spacelike: dimension mismatch");
  const auto ba = as_ball(A);
  const auto bb = as_ball(B);
  if (!ba || !bb) return false;  // a slab shares spatial points with everything
  const double R = ba->r + bb->r;
  const double Dt = bb->c->t - ba->c->t;
  const double Dx = spatial_dist(*ba->c, *bb->c);
  const double margin = Dx - std::abs(Dt) - kSqrt2 * R;
  return margin > kGeomTol * std::max(1.0, Dx + std::abs(Dt) + R);
}

bool fully_ordered(const Region& A, const Region& B) {
  if (A.dim() != B.dim()) throw std::invalid_argument("fully_ordered: dimension mismatch");
  const auto ba = as_ball(A);
  const auto bb = as_ball(B);
  if (!ba || !bb) return false;  // slabs have arbitrarily distant spatial points
  const double R = ba->r + bb->r;
  const double Dt = bb->c->t - ba->c->t;
  const double Dx = spatial_dist(*ba->c, *bb->c);
  return Dt - Dx - kSqrt2 * R >= -kGeomTol * std::max(1.0, std::abs(Dt) + Dx + R);
}

CausalOrderResult causal_order(const std::vector<Region>& regions) {
  const std::size_t n = regions.size();
  if (n == 0) throw std::invalid_argument("causal_order: empty region list");
  for (std::size_t i = 1; i < n; ++i)
    if (regions[i].dim() != regions[0].dim())
      throw std::invalid_argument("causal_order: regions of mixed dimension");

  CausalOrderResult res;
  res.raw.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      res.raw[i][j] = (i == j) || region_precedes(regions[i], regions[j]);

  res.relation = res.raw;
  for (std::size_t k = 0; k < n; ++k)  // Warshall
    for (std::size_t i = 0; i < n; ++i)
      if (res.relation[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (res.relation[k][j]) res.relation[i][j] = true;

  res.acyclic = true;
  for (std::size_t i = 0; i < n && res.acyclic; ++i)
    for (std::size_t j = i + 1; j < n && res.acyclic; ++j)
      if (res.relation[i][j] && res.relation[j][i]) res.acyclic = false;

  if (res.acyclic) {
    // Kahn with smallest input index first: stable against the input order.
    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t pick = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (placed[j]) continue;
        bool minimal = true;
        for (std::size_t i = 0; i < n; ++i)
          if (!placed[i] && i != j && res.relation[i][j]) {
            minimal = false;
            break;
          }
        if (minimal) {
          pick = j;
          break;
        }
      }
      order.push_back(pick);
      placed[pick] = true;
    }
    res.linear_extension = order;
  }
  return res;
}

RestrictionVerdict validate_restriction(const std::vector<Region>& regions, RestrictionRule rule) {
  const std::size_t n = regions.size();
  if (n == 0) throw std::invalid_argument("validate_restriction: empty region list");
  RestrictionVerdict v;
  v.pass = true;
  if (rule == RestrictionRule::PartialOrderBeforeClosure) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (region_precedes(regions[i], regions[j]) && region_precedes(regions[j], regions[i])) {
          v.pass = false;
          v.offending_pair = {i, j};
          return v;
        }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!entirely_spacelike(regions[i], regions[j]) && !fully_ordered(regions[i], regions[j])) {
          v.pass = false;
          v.offending_pair = {i, j};
          return v;
        }
  }
  return v;
}

}  // namespace qfc::st
