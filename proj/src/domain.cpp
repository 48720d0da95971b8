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

#include "sk1/domain.hpp"

#include <algorithm>
#include <sstream>

#include "sk1/errors.hpp"

namespace sk1 {

Domain::Domain(std::vector<Interval> box, std::vector<int> resolution,
               std::optional<std::vector<bool>> mask)
    : box_(std::move(box)), resolution_(std::move(resolution)), mask_(std::move(mask)) {
  if (box_.empty()) throw ContractError("domain needs at least one dimension");
  if (box_.size() != resolution_.size())
    throw ContractError("domain box and resolution have different dimension counts");
  for (std::size_t d = 0; d < box_.size(); ++d) {
    if (!(box_[d].lo < box_[d].hi))
      throw ContractError("domain interval " + std::to_string(d) + " has lo >= hi");
    if (resolution_[d] < 2) throw ContractError("domain resolution must be at least 2 per dimension");
  }
  strides_.assign(dims(), 1);
  for (std::size_t d = dims(); d-- > 0;) {
    strides_[d] = size_;
    size_ *= static_cast<std::size_t>(resolution_[d]);
  }
  if (mask_) {
    if (mask_->size() != size_) throw ContractError("domain mask size does not match the grid");
    if (std::none_of(mask_->begin(), mask_->end(), [](bool b) { return b; }))
      throw ContractError("domain mask is empty");
  }
  for (const auto& iv : box_) {
    lo_.push_back(iv.lo.get_d());
    hi_.push_back(iv.hi.get_d());
  }
  for (std::size_t p = 0; p < size_; ++p)
    if (active(p)) active_.push_back(p);
}

std::vector<int> Domain::multi_index(std::size_t p) const {
  std::vector<int> idx(dims());
  for (std::size_t d = 0; d < dims(); ++d) {
    idx[d] = static_cast<int>(p / strides_[d]);
    p %= strides_[d];
  }
  return idx;
}

std::size_t Domain::flat_index(std::span<const int> idx) const {
  std::size_t p = 0;
  for (std::size_t d = 0; d < dims(); ++d) p += strides_[d] * static_cast<std::size_t>(idx[d]);
  return p;
}

double Domain::coord(std::size_t p, std::size_t d) const {
  const auto k = static_cast<int>((p / strides_[d]) % static_cast<std::size_t>(resolution_[d]));
  const int last = resolution_[d] - 1;
  if (k == last) return hi_[d];
  return lo_[d] + (hi_[d] - lo_[d]) * k / last;
}

Rational Domain::exact_coord(std::size_t p, std::size_t d) const {
  const auto k = static_cast<long>((p / strides_[d]) % static_cast<std::size_t>(resolution_[d]));
  Rational q = box_[d].lo + (box_[d].hi - box_[d].lo) * Rational(k, resolution_[d] - 1);
  q.canonicalize();
  return q;
}

std::vector<double> Domain::point(std::size_t p) const {
  std::vector<double> x(dims());
  for (std::size_t d = 0; d < dims(); ++d) x[d] = coord(p, d);
  return x;
}

double Domain::unit_coord(std::size_t p, std::size_t d) const {
  const auto k = static_cast<int>((p / strides_[d]) % static_cast<std::size_t>(resolution_[d]));
  return -1.0 + 2.0 * k / (resolution_[d] - 1);
}

double Domain::to_unit(double x, std::size_t d) const {
  return (2.0 * x - lo_[d] - hi_[d]) / (hi_[d] - lo_[d]);
}

double Domain::step(std::size_t d) const { return (hi_[d] - lo_[d]) / (resolution_[d] - 1); }

std::string Domain::describe_point(std::size_t p) const {
  std::ostringstream os;
  os << "grid index (";
  auto idx = multi_index(p);
  for (std::size_t d = 0; d < dims(); ++d) os << (d ? "," : "") << idx[d];
  os << ") at (";
  for (std::size_t d = 0; d < dims(); ++d) os << (d ? "," : "") << coord(p, d);
  os << ")";
  return os.str();
}

DomainPtr Domain::with_time(int t_res) const {
  auto box = box_;
  box.push_back({Rational(0), Rational(1)});
  auto res = resolution_;
  res.push_back(t_res);
  std::optional<std::vector<bool>> mask;
  if (mask_) {
    std::vector<bool> m;
    m.reserve(size_ * static_cast<std::size_t>(t_res));
    for (std::size_t p = 0; p < size_; ++p)
      for (int t = 0; t < t_res; ++t) m.push_back((*mask_)[p]);
    mask = std::move(m);
  }
  return make_domain(std::move(box), std::move(res), std::move(mask));
}

DomainPtr Domain::without_time() const {
  if (dims() < 2) throw ContractError("without_time needs a product domain with at least two dimensions");
  auto box = box_;
  box.pop_back();
  auto res = resolution_;
  const auto t_res = static_cast<std::size_t>(res.back());
  res.pop_back();
  std::optional<std::vector<bool>> mask;
  if (mask_) {
    std::vector<bool> m(size_ / t_res);
    for (std::size_t p = 0; p < m.size(); ++p) m[p] = (*mask_)[p * t_res];
    mask = std::move(m);
  }
  return make_domain(std::move(box), std::move(res), std::move(mask));
}

DomainPtr Domain::unmasked() const { return make_domain(box_, resolution_); }

bool operator==(const Domain& a, const Domain& b) {
  if (a.resolution_ != b.resolution_ || a.mask_ != b.mask_ || a.box_.size() != b.box_.size()) return false;
  for (std::size_t d = 0; d < a.box_.size(); ++d)
    if (a.box_[d].lo != b.box_[d].lo || a.box_[d].hi != b.box_[d].hi) return false;
  return true;
}

DomainPtr make_domain(std::vector<Interval> box, std::vector<int> resolution,
                      std::optional<std::vector<bool>> mask) {
  return std::make_shared<const Domain>(std::move(box), std::move(resolution), std::move(mask));
}

bool same_domain(const DomainPtr& a, const DomainPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------

GridSubset::GridSubset(DomainPtr domain) : domain_(std::move(domain)), members_(domain_->size(), false) {}

GridSubset::GridSubset(DomainPtr domain, std::vector<bool> members)
    : domain_(std::move(domain)), members_(std::move(members)) {
  if (members_.size() != domain_->size()) throw ContractError("grid subset size does not match its domain");
  for (std::size_t p = 0; p < members_.size(); ++p)
    if (members_[p] && !domain_->active(p)) members_[p] = false;
}

GridSubset GridSubset::all(const DomainPtr& domain) {
  GridSubset s(domain);
  for (auto p : domain->active_points()) s.members_[p] = true;
  return s;
}

GridSubset GridSubset::of_points(const DomainPtr& domain, std::span<const std::size_t> points) {
  GridSubset s(domain);
  for (auto p : points) {
    if (p >= domain->size()) throw ContractError("grid point index out of range");
    if (domain->active(p)) s.members_[p] = true;
  }
  return s;
}

std::size_t GridSubset::count() const { return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true)); }

std::vector<std::size_t> GridSubset::points() const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < members_.size(); ++p)
    if (members_[p]) out.push_back(p);
  return out;
}

GridSubset GridSubset::complement() const {
  GridSubset s(domain_);
  for (auto p : domain_->active_points()) s.members_[p] = !members_[p];
  return s;
}

GridSubset GridSubset::unite(const GridSubset& other) const {
  if (!same_domain(domain_, other.domain_)) throw ContractError("grid subsets live on different domains");
  GridSubset s(domain_);
  for (std::size_t p = 0; p < members_.size(); ++p) s.members_[p] = members_[p] || other.members_[p];
  return s;
}

GridSubset GridSubset::intersect(const GridSubset& other) const {
  if (!same_domain(domain_, other.domain_)) throw ContractError("grid subsets live on different domains");
  GridSubset s(domain_);
  for (std::size_t p = 0; p < members_.size(); ++p) s.members_[p] = members_[p] && other.members_[p];
  return s;
}

GridSubset GridSubset::interior() const {
  GridSubset s(domain_);
  for (std::size_t p = 0; p < members_.size(); ++p) {
    if (!members_[p]) continue;
    bool inside = true;
    for (auto q : grid_neighbours(*domain_, p))
      if (!members_[q]) {
        inside = false;
        break;
      }
    s.members_[p] = inside;
  }
  return s;
}

GridSubset GridSubset::dilate(int radius) const {
  GridSubset s = *this;
  for (std::size_t p = 0; p < members_.size(); ++p)
    if (members_[p])
      for (auto q : grid_neighbours(*domain_, p, radius)) s.members_[q] = true;
  return s;
}

bool operator==(const GridSubset& a, const GridSubset& b) {
  return same_domain(a.domain_, b.domain_) && a.members_ == b.members_;
}

std::vector<std::size_t> grid_neighbours(const Domain& d, std::size_t p, int radius) {
  const auto centre = d.multi_index(p);
  const std::size_t dims = d.dims();
  std::vector<std::size_t> out;
  std::vector<int> off(dims, -radius);
  std::vector<int> idx(dims);
  while (true) {
    bool valid = true;
    bool zero = true;
    for (std::size_t k = 0; k < dims; ++k) {
      idx[k] = centre[k] + off[k];
      if (idx[k] < 0 || idx[k] >= d.resolution()[k]) valid = false;
      if (off[k] != 0) zero = false;
    }
    if (valid && !zero) {
      auto q = d.flat_index(idx);
      if (d.active(q)) out.push_back(q);
    }
    bool done = true;
    for (std::size_t k = dims; k > 0; --k) {
      if (++off[k - 1] <= radius) {
        done = false;
        break;
      }
      off[k - 1] = -radius;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sk1
