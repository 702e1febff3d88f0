#include "tdoa/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "tdoa/errors.hpp"

namespace tdoa {

std::size_t ReceiverConfig::idx(int i) {
  if (i < 0 || i > 2) throw std::out_of_range("receiver index must be 0, 1 or 2");
  return static_cast<std::size_t>(i);
}

ReceiverConfig ReceiverConfig::make(const QVec2& m0, const QVec2& m1, const QVec2& m2) {
  ReceiverConfig cfg;
  cfg.m_ = {m0, m1, m2};
  for (std::size_t k = 0; k < 3; ++k) cfg.mf_[k] = to_double(cfg.m_[k]);

  cfg.W_ = wedge_star(cfg.d(1, 0), cfg.d(2, 0));
  if (cfg.W_.is_zero()) throw CollinearReceivers();
  cfg.Wf_ = cfg.W_.to_double();

  cfg.d10_sq_ = norm_sq(cfg.d(1, 0));
  cfg.d20_sq_ = norm_sq(cfg.d(2, 0));
  cfg.d21_sq_ = norm_sq(cfg.d(2, 1));
  cfg.d10_ = std::sqrt(cfg.d10_sq_.to_double());
  cfg.d20_ = std::sqrt(cfg.d20_sq_.to_double());
  cfg.d21_ = std::sqrt(cfg.d21_sq_.to_double());

  const QVec2 d12 = cfg.d(1, 2);
  const QVec2 d20 = cfg.d(2, 0);
  const QVec2 d01 = cfg.d(0, 1);
  cfg.c01_ = dot(d12, d20);
  cfg.c12_ = dot(d20, d01);
  cfg.c20_ = dot(d01, d12);
  return cfg;
}

const Rational& ReceiverConfig::dist_sq(int j, int i) const {
  idx(j);
  idx(i);
  if (j == i) throw std::invalid_argument("dist_sq: receiver indices must differ");
  const int s = i + j;
  if (s == 1) return d10_sq_;
  if (s == 2) return d20_sq_;
  return d21_sq_;
}

double ReceiverConfig::dist(int j, int i) const {
  idx(j);
  idx(i);
  if (j == i) throw std::invalid_argument("dist: receiver indices must differ");
  const int s = i + j;
  if (s == 1) return d10_;
  if (s == 2) return d20_;
  return d21_;
}

Vec2 ReceiverConfig::centroid() const {
  return {(mf_[0].x + mf_[1].x + mf_[2].x) / 3.0, (mf_[0].y + mf_[1].y + mf_[2].y) / 3.0};
}

double ReceiverConfig::radius() const {
  const Vec2 c = centroid();
  double r = 0.0;
  for (const Vec2& m : mf_) r = std::max(r, norm(m - c));
  return r;
}

}  // namespace tdoa
