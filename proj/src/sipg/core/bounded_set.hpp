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

#pragma once

#include <vector>

#include "sipg/core/types.hpp"
#include "sipg/util/rng.hpp"

namespace sipg {

/// Compact uncertainty set: axis-aligned box, Euclidean ball, or a product of
/// such sets. Membership has two independent routes: the direct geometric test
/// (`contains`) and the smooth inequality encoding (`constraints`), which agree
/// by construction: x is a member iff max over constraint values is <= 0.
class BoundedSet {
 public:
  enum class Kind { box, ball, product };

  static BoundedSet box(Vec lo, Vec hi);
  static BoundedSet ball(Vec center, double radius);
  static BoundedSet product(std::vector<BoundedSet> parts);
  /// Zero-dimensional set (for absent uncertainty channels).
  static BoundedSet empty() { return box(Vec(0), Vec(0)); }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_box() const { return kind_ == Kind::box; }
  bool is_singleton(double tol = 0.0) const;

  /// Direct geometric membership test with additive tolerance on each face /
  /// on the radius.
  bool contains(ConstRef xi, double tol = 0.0) const;

  /// Membership test for rejection sampling: exact on non-degenerate
  /// directions, tolerant (degenerate_tol) where a face pair or radius is
  /// (near-)collapsed, so solver-accuracy proposals can still hit
  /// measure-zero sets.
  bool contains_for_sampling(ConstRef xi, double degenerate_tol = 1e-6) const;

  /// Appends the smooth encoding values c(xi): 2n affine values for a box,
  /// |xi - c|^2 - r^2 for a ball, concatenation for a product.
  void constraints(ConstRef xi, std::vector<double>& out) const;
  std::vector<double> constraints(ConstRef xi) const;
  int num_constraints() const;

  /// Uniform sample. Boxes draw independent uniforms; balls draw a normal
  /// direction and radius r * U^(1/n); products sample componentwise.
  Vec sample(Rng& rng) const;

  /// Box midpoint / ball center / componentwise centers.
  Vec center() const;

  /// Tightest enclosing axis-aligned box, written into lo/hi (resized).
  void envelope(Vec& lo, Vec& hi) const;

  // Box accessors (valid only for kind() == box).
  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }
  // Ball accessors (valid only for kind() == ball).
  const Vec& ball_center() const { return center_; }
  double ball_radius() const { return radius_; }
  const std::vector<BoundedSet>& parts() const { return parts_; }

 private:
  BoundedSet() = default;

  Kind kind_ = Kind::box;
  int dim_ = 0;
  Vec lo_, hi_;       // box
  Vec center_;        // ball
  double radius_ = 0; // ball
  std::vector<BoundedSet> parts_;  // product
};

}  // namespace sipg
