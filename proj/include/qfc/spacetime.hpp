#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

// Minkowski geometry in d+1 dimensions, mostly-plus signature: the interval
// is s^2 = -(dt)^2 + |dx|^2. Regions come in the three kinds the protocols
// use; precedence between regions is decided analytically per kind pair,
// never by sampling.

namespace qfc::st {

inline constexpr double kGeomTol = 1e-12;  // relative, null-boundary classification

struct Point {
  double t = 0.0;
  std::vector<double> x;

  std::size_t dim() const { return x.size(); }
};

enum class IntervalKind { Timelike, Null, Spacelike };
enum class TimeOrder { Future, Past, Simultaneous };

struct IntervalClass {
  IntervalKind kind;
  TimeOrder order;        // sign of Y.t - X.t
  double interval2;       // -(dt)^2 + |dx|^2
};

IntervalClass classify_interval(const Point& X, const Point& Y);

// closed Euclidean ball in spacetime around a centre event
struct Ball {
  Point center;
  double radius = 0.0;
};
// all of space between two times
struct Slab {
  double t0 = 0.0;
  double t1 = 0.0;
  std::size_t d = 1;
};
struct PointLike {
  Point center;
};

struct Region {
  std::variant<Ball, Slab, PointLike> shape;
  std::string label;

  std::size_t dim() const;
};

// exists a in closure(A), b in closure(B) with b in the causal future of a
bool region_precedes(const Region& A, const Region& B);
// every point pair spacelike
bool entirely_spacelike(const Region& A, const Region& B);
// every point of A in the causal past of every point of B
bool fully_ordered(const Region& A, const Region& B);

struct CausalOrderResult {
  std::vector<std::vector<bool>> raw;       // direct precedence, reflexive
  std::vector<std::vector<bool>> relation;  // transitive closure
  bool acyclic = false;
  std::optional<std::vector<std::size_t>> linear_extension;  // present iff acyclic
};

CausalOrderResult causal_order(const std::vector<Region>& regions);

enum class RestrictionRule { PartialOrderBeforeClosure, PairwiseSpacelikeOrFullyOrdered };

struct RestrictionVerdict {
  bool pass = false;
  std::optional<std::pair<std::size_t, std::size_t>> offending_pair;
};

RestrictionVerdict validate_restriction(const std::vector<Region>& regions, RestrictionRule rule);

}  // namespace qfc::st
