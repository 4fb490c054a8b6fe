#pragma once

// Combinatorial T-spaces: smooth complete fans (toric varieties), GKM-type
// one-skeleton assemblies of spinning spheres, single orbits, disjoint unions
// and products with a freely rotated circle. Each model knows its orbit-type
// strata and builds the graded modules H_T(X) and H_T(X_i, X_{i-1}).

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exseq/grmod.hpp"
#include "exseq/lattice.hpp"

namespace exseq {

struct Fan {
  int n = 0;
  std::vector<std::vector<long>> rays;
  std::vector<std::vector<int>> cones;  // as given; faces are implied
};

struct GkmEdge {
  int v = 0;
  int w = 0;
  std::vector<long> label;  // the character through which T rotates the sphere
};

struct GkmGraph {
  int n = 0;
  std::vector<std::string> vertices;
  std::vector<GkmEdge> edges;
};

struct SingleOrbit {
  ClosedSubgroup isotropy;
};

class SpaceModel;

struct DisjointUnion {
  int n = 0;
  std::vector<std::shared_ptr<const SpaceModel>> parts;
};

// S^1 x Y with the first circle of T rotating the S^1 factor freely and the
// remaining coordinates acting on Y.
struct FreeCircleProduct {
  std::shared_ptr<const SpaceModel> base;
};

class SpaceModel {
 public:
  using Variant = std::variant<Fan, GkmGraph, SingleOrbit, DisjointUnion, FreeCircleProduct>;

  // Validates the payload; throws InvalidModel.
  SpaceModel(Variant v, std::string name = {});

  const Variant& variant() const { return v_; }
  const std::string& name() const { return name_; }
  int n() const;
  std::string_view kind_name() const;

 private:
  Variant v_;
  std::string name_;
};

// --- fans -------------------------------------------------------------------

// Every cone of the fan (faces included) as sorted ray index lists, ordered by
// dimension and then lexicographically. The zero cone comes first.
std::vector<std::vector<int>> all_cones(const Fan& fan);
bool is_smooth(const Fan& fan);
// Every maximal cone is full-dimensional and every wall lies in exactly two of
// them, on opposite sides.
bool is_complete(const Fan& fan);
// A basis of the characters vanishing on the cone, as the rows of a matrix.
Matrix cone_orthogonal(const Fan& fan, const std::vector<int>& cone);
// The one-skeleton of a complete fan: fixed points are the maximal cones and
// every wall gives an edge labelled by its primitive orthogonal character.
GkmGraph fan_one_skeleton(const Fan& fan);

// --- strata and skeleta -----------------------------------------------------

std::vector<StratumDescriptor> strata(const SpaceModel& x);
// Strata with orbit_dim <= i; i in [-1, n] (IndexOutOfRange otherwise).
std::vector<StratumDescriptor> skeleton(const SpaceModel& x, int i);
// Strata whose T_p-orbits have at most p^i points: n - p_rank(T_x, p) <= i.
std::vector<StratumDescriptor> p_skeleton(const SpaceModel& x, long p, int i);
// Throws EmptySpace for a space without orbits.
int min_orbit_dim(const SpaceModel& x);

// --- cohomology ---------------------------------------------------------------

// Everything needed to assemble the sequences, in natural grading.
struct SpaceCohomology {
  int n = 0;
  CoefficientRing ring = CoefficientRing::integers();
  std::shared_ptr<const GradedModule> htx;
  std::vector<std::shared_ptr<const GradedModule>> relative;  // H_T(X_i, X_{i-1}), i = 0..n
  int first_index = 0;                 // H_T(X) maps to relative[first_index] = H_T(X_k)
  GradedMap first;                     // degree 0
  std::vector<GradedMap> differentials;  // relative[i] -> relative[i+1] for i < n, degree +1
  // Chang-Skjelbred data, present when X has fixed points: the plain
  // restriction H_T(X) -> H_T(X_0) and the map H_T(X_0) -> H_T(X_1, X_0) whose
  // kernel is the image of H_T(X_1).
  std::optional<GradedMap> restriction;
  std::optional<GradedMap> one_skeleton_delta;
};

// Throws UnsupportedModelRing for unsupported combinations (non-smooth or
// incomplete fans, GKM assemblies whose equalizer is not free).
SpaceCohomology space_cohomology(const SpaceModel& x, const CoefficientRing& ring, int max_degree, int jobs = 1);

GradedModule equivariant_cohomology(const SpaceModel& x, const CoefficientRing& ring, int max_degree, int jobs = 1);
GradedModule relative_term(const SpaceModel& x, int i, const CoefficientRing& ring, int max_degree, int jobs = 1);

// --- catalog and files ------------------------------------------------------

// "P1", "P2", "P1xP1", "Hirzebruch:a", "SpinningSphere:m", "FreeCircleTimes:<model>".
SpaceModel catalog_model(std::string_view name);
std::vector<std::string> catalog_names();

}  // namespace exseq
