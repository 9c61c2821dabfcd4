#pragma once

#include <utility>
#include <vector>

#include "beamloop/beam_geometry.hpp"

namespace beamloop {

// Finite union of arcs on (0, 2pi], held as sorted disjoint pieces (lo, hi]
// with 0 <= lo < hi <= 2pi. Touching pieces are merged.
class ArcSet {
 public:
  ArcSet() = default;

  static ArcSet full();
  static ArcSet of(const AngularInterval& arc);
  static ArcSet union_of(const std::vector<AngularInterval>& arcs);

  ArcSet intersect(const ArcSet& other) const;
  ArcSet complement() const;
  bool contains(double psi) const;
  double measure() const;
  bool is_empty() const noexcept { return pieces_.empty(); }
  const std::vector<std::pair<double, double>>& pieces() const noexcept { return pieces_; }

  // Maximal arcs, joining the piece that ends at 2pi with the one starting at 0.
  std::vector<AngularInterval> arcs() const;

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  explicit ArcSet(std::vector<std::pair<double, double>> pieces);

  std::vector<std::pair<double, double>> pieces_;
};

}  // namespace beamloop
