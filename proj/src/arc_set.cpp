#include "beamloop/arc_set.hpp"

#include <algorithm>

namespace beamloop {

namespace {

using Piece = std::pair<double, double>;

std::vector<Piece> merged(std::vector<Piece> pieces) {
  std::sort(pieces.begin(), pieces.end());
  std::vector<Piece> out;
  for (const auto& p : pieces) {
    if (!(p.first < p.second)) continue;
    if (!out.empty() && p.first <= out.back().second) {
      out.back().second = std::max(out.back().second, p.second);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

void append_pieces(const AngularInterval& arc, std::vector<Piece>& out) {
  if (arc.is_full()) {
    out.emplace_back(0.0, kTwoPi);
    return;
  }
  if (arc.is_empty()) return;
  const double s = arc.start();
  const double e = arc.end();
  if (s < e) {
    out.emplace_back(s, e);
  } else {
    out.emplace_back(s, kTwoPi);
    if (e > 0.0) out.emplace_back(0.0, e);
  }
}

}  // namespace

ArcSet::ArcSet(std::vector<Piece> pieces) : pieces_(merged(std::move(pieces))) {}

ArcSet ArcSet::full() { return ArcSet({{0.0, kTwoPi}}); }

ArcSet ArcSet::of(const AngularInterval& arc) {
  std::vector<Piece> pieces;
  append_pieces(arc, pieces);
  return ArcSet(std::move(pieces));
}

ArcSet ArcSet::union_of(const std::vector<AngularInterval>& arcs) {
  std::vector<Piece> pieces;
  for (const auto& a : arcs) append_pieces(a, pieces);
  return ArcSet(std::move(pieces));
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
  std::vector<Piece> out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const auto& a = pieces_[i];
    const auto& b = other.pieces_[j];
    const double lo = std::max(a.first, b.first);
    const double hi = std::min(a.second, b.second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (a.second < b.second) {
      ++i;
    } else {
      ++j;
    }
  }
  return ArcSet(std::move(out));
}

ArcSet ArcSet::complement() const {
  std::vector<Piece> out;
  double cursor = 0.0;
  for (const auto& p : pieces_) {
    if (cursor < p.first) out.emplace_back(cursor, p.first);
    cursor = p.second;
  }
  if (cursor < kTwoPi) out.emplace_back(cursor, kTwoPi);
  return ArcSet(std::move(out));
}

bool ArcSet::contains(double psi) const {
  double p = wrap_angle(psi);
  if (p == 0.0) p = kTwoPi;
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [p](const Piece& piece) { return piece.first < p && p <= piece.second; });
}

double ArcSet::measure() const {
  double total = 0.0;
  for (const auto& p : pieces_) total += p.second - p.first;
  return total;
}

std::vector<AngularInterval> ArcSet::arcs() const {
  std::vector<AngularInterval> out;
  if (pieces_.empty()) return out;
  if (pieces_.size() == 1 && pieces_.front().first == 0.0 && pieces_.front().second == kTwoPi) {
    out.push_back(AngularInterval::full_circle(0.0));
    return out;
  }
  auto first = pieces_.begin();
  auto last = pieces_.end();
  const bool wraps = pieces_.size() > 1 && pieces_.front().first == 0.0 && pieces_.back().second == kTwoPi;
  if (wraps) {
    ++first;
    --last;
  }
  for (auto it = first; it != last; ++it) {
    out.push_back(AngularInterval::arc(wrap_angle(it->first), wrap_angle(it->second)));
  }
  if (wraps) {
    out.push_back(AngularInterval::arc(pieces_.back().first, wrap_angle(pieces_.front().second)));
  }
  return out;
}

}  // namespace beamloop
