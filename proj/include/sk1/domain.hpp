// Copyright 2026 The sk1 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SK1_DOMAIN_HPP
#define SK1_DOMAIN_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sk1/scalar.hpp"

namespace sk1 {

struct Interval {
  Rational lo;
  Rational hi;
};

/// A box sampled on a regular grid, optionally restricted to a mask of active points.
///
/// Points are numbered row-major: the last dimension varies fastest. A
/// resolution of k along a dimension means k equally spaced samples including
/// both endpoints.
class Domain {
 public:
  Domain(std::vector<Interval> box, std::vector<int> resolution,
         std::optional<std::vector<bool>> mask = std::nullopt);

  std::size_t dims() const { return box_.size(); }
  std::size_t size() const { return size_; }
  const std::vector<Interval>& box() const { return box_; }
  const std::vector<int>& resolution() const { return resolution_; }
  bool has_mask() const { return mask_.has_value(); }
  const std::optional<std::vector<bool>>& mask() const { return mask_; }

  bool active(std::size_t p) const { return !mask_ || (*mask_)[p]; }
  /// Indices of active points, ascending.
  const std::vector<std::size_t>& active_points() const { return active_; }

  std::vector<int> multi_index(std::size_t p) const;
  std::size_t flat_index(std::span<const int> idx) const;

  double coord(std::size_t p, std::size_t d) const;
  Rational exact_coord(std::size_t p, std::size_t d) const;
  std::vector<double> point(std::size_t p) const;
  /// Coordinate rescaled to [-1, 1] along dimension d.
  double unit_coord(std::size_t p, std::size_t d) const;
  double to_unit(double x, std::size_t d) const;
  double step(std::size_t d) const;

  /// Human-readable "index (i,j) at (x,y)" description used in diagnostics.
  std::string describe_point(std::size_t p) const;

  /// This domain times [0,1] sampled at t_res points; the mask extends constantly in t.
  std::shared_ptr<const Domain> with_time(int t_res) const;
  /// Inverse of with_time: drops the last dimension (mask read at its first slice).
  std::shared_ptr<const Domain> without_time() const;
  /// The same box and resolution without a mask.
  std::shared_ptr<const Domain> unmasked() const;

  friend bool operator==(const Domain& a, const Domain& b);

 private:
  std::vector<Interval> box_;
  std::vector<int> resolution_;
  std::optional<std::vector<bool>> mask_;
  std::size_t size_ = 1;
  std::vector<std::size_t> strides_;
  std::vector<double> lo_, hi_;
  std::vector<std::size_t> active_;
};

using DomainPtr = std::shared_ptr<const Domain>;

DomainPtr make_domain(std::vector<Interval> box, std::vector<int> resolution,
                      std::optional<std::vector<bool>> mask = std::nullopt);

/// Pointer-or-value equality; null only matches null.
bool same_domain(const DomainPtr& a, const DomainPtr& b);

/// A set of grid points of a domain, stored as a membership vector over all points.
class GridSubset {
 public:
  GridSubset() = default;
  explicit GridSubset(DomainPtr domain);
  GridSubset(DomainPtr domain, std::vector<bool> members);

  static GridSubset all(const DomainPtr& domain);
  static GridSubset of_points(const DomainPtr& domain, std::span<const std::size_t> points);

  const DomainPtr& domain() const { return domain_; }
  bool contains(std::size_t p) const { return members_[p]; }
  void insert(std::size_t p) { members_[p] = true; }
  void erase(std::size_t p) { members_[p] = false; }
  const std::vector<bool>& members() const { return members_; }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> points() const;

  /// Active points of the domain not in this subset.
  GridSubset complement() const;
  GridSubset unite(const GridSubset& other) const;
  GridSubset intersect(const GridSubset& other) const;

  /// Points all of whose grid neighbours (Chebyshev distance 1, inside the
  /// active grid) belong to this subset.
  GridSubset interior() const;
  /// This subset grown by `radius` grid steps, restricted to active points.
  GridSubset dilate(int radius) const;

  friend bool operator==(const GridSubset& a, const GridSubset& b);

 private:
  DomainPtr domain_;
  std::vector<bool> members_;
};

/// Active neighbours of p within Chebyshev grid distance `radius` (p excluded).
std::vector<std::size_t> grid_neighbours(const Domain& d, std::size_t p, int radius = 1);

}  // namespace sk1

#endif  // SK1_DOMAIN_HPP
