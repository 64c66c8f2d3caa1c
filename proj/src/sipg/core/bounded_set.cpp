/*
 * Copyright 2026 The sipgains authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sipg/core/bounded_set.hpp"

#include <cmath>

#include "sipg/util/errors.hpp"

namespace sipg {

BoundedSet BoundedSet::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size()) throw_invalid("box: lo and hi dimensions differ");
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (!(lo[i] <= hi[i])) throw_invalid("box: lo > hi at coordinate " + std::to_string(i));
  }
  BoundedSet s;
  s.kind_ = Kind::box;
  s.dim_ = static_cast<int>(lo.size());
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

BoundedSet BoundedSet::ball(Vec center, double radius) {
  if (!(radius >= 0.0)) throw_invalid("ball: radius must be >= 0");
  BoundedSet s;
  s.kind_ = Kind::ball;
  s.dim_ = static_cast<int>(center.size());
  s.center_ = std::move(center);
  s.radius_ = radius;
  return s;
}

BoundedSet BoundedSet::product(std::vector<BoundedSet> parts) {
  BoundedSet s;
  s.kind_ = Kind::product;
  s.parts_ = std::move(parts);
  s.dim_ = 0;
  for (const auto& p : s.parts_) s.dim_ += p.dim();
  return s;
}

bool BoundedSet::is_singleton(double tol) const {
  switch (kind_) {
    case Kind::box:
      return ((hi_ - lo_).array() <= tol).all();
    case Kind::ball:
      return radius_ <= tol;
    case Kind::product:
      for (const auto& p : parts_) {
        if (!p.is_singleton(tol)) return false;
      }
      return true;
  }
  return false;
}

bool BoundedSet::contains(ConstRef xi, double tol) const {
  if (xi.size() != dim_) throw_invalid("contains: dimension mismatch");
  switch (kind_) {
    case Kind::box:
      return (xi.array() >= lo_.array() - tol).all() && (xi.array() <= hi_.array() + tol).all();
    case Kind::ball:
      return (xi - center_).norm() <= radius_ + tol;
    case Kind::product: {
      int off = 0;
      for (const auto& p : parts_) {
        if (!p.contains(xi.segment(off, p.dim()), tol)) return false;
        off += p.dim();
      }
      return true;
    }
  }
  return false;
}

bool BoundedSet::contains_for_sampling(ConstRef xi, double degenerate_tol) const {
  if (xi.size() != dim_) throw_invalid("contains_for_sampling: dimension mismatch");
  constexpr double kDegenerateWidth = 1e-9;
  switch (kind_) {
    case Kind::box:
      for (int i = 0; i < dim_; ++i) {
        const double slack = (hi_[i] - lo_[i] <= kDegenerateWidth) ? degenerate_tol : 0.0;
        if (xi[i] < lo_[i] - slack || xi[i] > hi_[i] + slack) return false;
      }
      return true;
    case Kind::ball: {
      const double slack = (radius_ <= kDegenerateWidth) ? degenerate_tol : 0.0;
      return (xi - center_).norm() <= radius_ + slack;
    }
    case Kind::product: {
      int off = 0;
      for (const auto& p : parts_) {
        if (!p.contains_for_sampling(xi.segment(off, p.dim()), degenerate_tol)) return false;
        off += p.dim();
      }
      return true;
    }
  }
  return false;
}

void BoundedSet::constraints(ConstRef xi, std::vector<double>& out) const {
  if (xi.size() != dim_) throw_invalid("constraints: dimension mismatch");
  switch (kind_) {
    case Kind::box:
      for (int i = 0; i < dim_; ++i) {
        out.push_back(lo_[i] - xi[i]);
        out.push_back(xi[i] - hi_[i]);
      }
      break;
    case Kind::ball:
      out.push_back((xi - center_).squaredNorm() - radius_ * radius_);
      break;
    case Kind::product: {
      int off = 0;
      for (const auto& p : parts_) {
        p.constraints(xi.segment(off, p.dim()), out);
        off += p.dim();
      }
      break;
    }
  }
}

std::vector<double> BoundedSet::constraints(ConstRef xi) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(num_constraints()));
  constraints(xi, out);
  return out;
}

int BoundedSet::num_constraints() const {
  switch (kind_) {
    case Kind::box:
      return 2 * dim_;
    case Kind::ball:
      return 1;
    case Kind::product: {
      int n = 0;
      for (const auto& p : parts_) n += p.num_constraints();
      return n;
    }
  }
  return 0;
}

Vec BoundedSet::sample(Rng& rng) const {
  Vec out(dim_);
  switch (kind_) {
    case Kind::box:
      for (int i = 0; i < dim_; ++i) out[i] = rng.uniform(lo_[i], hi_[i]);
      break;
    case Kind::ball: {
      if (dim_ == 0) break;
      // Direction from normalized Gaussians, radius via the U^(1/n) transform.
      Vec dir(dim_);
      double norm2 = 0.0;
      do {
        for (int i = 0; i < dim_; ++i) dir[i] = rng.normal();
        norm2 = dir.squaredNorm();
      } while (norm2 == 0.0);
      const double r = radius_ * std::pow(rng.uniform01(), 1.0 / static_cast<double>(dim_));
      out = center_ + (r / std::sqrt(norm2)) * dir;
      break;
    }
    case Kind::product: {
      int off = 0;
      for (const auto& p : parts_) {
        out.segment(off, p.dim()) = p.sample(rng);
        off += p.dim();
      }
      break;
    }
  }
  return out;
}

Vec BoundedSet::center() const {
  switch (kind_) {
    case Kind::box:
      return 0.5 * (lo_ + hi_);
    case Kind::ball:
      return center_;
    case Kind::product: {
      Vec out(dim_);
      int off = 0;
      for (const auto& p : parts_) {
        out.segment(off, p.dim()) = p.center();
        off += p.dim();
      }
      return out;
    }
  }
  return Vec(0);
}

void BoundedSet::envelope(Vec& lo, Vec& hi) const {
  lo.resize(dim_);
  hi.resize(dim_);
  switch (kind_) {
    case Kind::box:
      lo = lo_;
      hi = hi_;
      break;
    case Kind::ball:
      lo = center_.array() - radius_;
      hi = center_.array() + radius_;
      break;
    case Kind::product: {
      int off = 0;
      Vec plo, phi;
      for (const auto& p : parts_) {
        p.envelope(plo, phi);
        lo.segment(off, p.dim()) = plo;
        hi.segment(off, p.dim()) = phi;
        off += p.dim();
      }
      break;
    }
  }
}

}  // namespace sipg
