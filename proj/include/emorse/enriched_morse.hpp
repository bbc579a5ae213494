#pragma once

// Morse complexes with coefficients in chain complexes of fibers.
//
// A datum lists critical points, a fiber complex for each, and for every
// ordered pair (x, y) with |x| > |y| a transport operator of degree
// |x| - |y| - 1 standing for the action of the flow-line chain from x to y.
// Absent transports are zero. Total complex:
//
//   d(a (x) x) = sum_y T^x_y(a) (x) y + (da) (x) x,
//
// filtered by Morse index.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "emorse/chain_complex.hpp"
#include "emorse/spectral.hpp"

namespace emorse {

struct CriticalPoint {
  std::string id;
  int index = 0;

  bool operator==(const CriticalPoint&) const = default;
};

using PointPair = std::pair<std::string, std::string>;  // (from, to)

class EnrichedMorseDatum {
 public:
  EnrichedMorseDatum() = default;

  /// Validates ids, fiber coverage, fiber complexes, transport endpoints,
  /// shifts and shapes. Throws std::invalid_argument. The structure equation
  /// is checked separately by check_structure_equation.
  EnrichedMorseDatum(std::vector<CriticalPoint> points, std::map<std::string, GradedComplex> fibers,
                     std::map<PointPair, DegreeMap> transports = {});

  /// Sorted by (index, id).
  const std::vector<CriticalPoint>& points() const { return points_; }
  int index(const std::string& id) const { return index_.at(id); }
  int max_index() const;
  const GradedComplex& fiber(const std::string& id) const { return fibers_.at(id); }
  const std::map<std::string, GradedComplex>& fibers() const { return fibers_; }
  const std::map<PointPair, DegreeMap>& transports() const { return transports_; }
  /// nullptr when the transport is zero.
  const DegreeMap* transport(const std::string& from, const std::string& to) const;

  bool operator==(const EnrichedMorseDatum&) const = default;

 private:
  std::vector<CriticalPoint> points_;
  std::map<std::string, int> index_;
  std::map<std::string, GradedComplex> fibers_;
  std::map<PointPair, DegreeMap> transports_;
};

struct StructureWitness {
  std::string from;
  std::string to;
  int degree;             // degree of the fiber generator in F_from
  std::string generator;  // generator of F_from

  bool operator==(const StructureWitness&) const = default;
};

/// Empty iff  dT^x_y + T^x_y d = sum_{|x|>|z|>|y|} T^z_y T^x_z  for all pairs.
std::vector<StructureWitness> check_structure_equation(const EnrichedMorseDatum& d);

class StructureEquationError : public std::runtime_error {
 public:
  explicit StructureEquationError(std::vector<StructureWitness> witnesses);
  const std::vector<StructureWitness>& witnesses() const { return witnesses_; }

 private:
  std::vector<StructureWitness> witnesses_;
};

/// Name of the total-complex generator a (x) x.
std::string total_generator(const std::string& fiber_generator, const std::string& point);

/// Throws StructureEquationError when the structure equation fails.
FilteredComplex build_total_complex(const EnrichedMorseDatum& d);

/// First page assembled from fiber homology and the degree-0 transports.
struct E1Page {
  /// Generators "h<k>|x" for the k-th basis class of H_q(F_x).
  GradedComplex complex;
  std::map<std::string, Bidegree> labels;
  BidegreeDims dims;
  /// d_1 out of (p, q) into (p - 1, q), present when both ends are nonzero.
  std::map<Bidegree, BitMatrix> d1;

  std::size_t d1_rank(int p, int q) const;
};

/// Throws StructureEquationError when the structure equation fails.
E1Page e1_complex(const EnrichedMorseDatum& d);

/// Homology of the first page under d_1.
BidegreeDims e2_dims(const EnrichedMorseDatum& d);
BidegreeDims e2_dims(const E1Page& e1);

}  // namespace emorse
