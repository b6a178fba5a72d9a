#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdl/caps.hpp"
#include "pdl/poset.hpp"
#include "pdl/skeleton.hpp"

namespace pdl {

// An element <base, cloud> of P(2^k). Points of 2^k are k-bit masks; the
// cloud is sorted and duplicate free.
struct CubePoint {
  std::uint64_t base = 0;
  std::vector<std::uint64_t> cloud;

  friend bool operator==(const CubePoint&, const CubePoint&) = default;
};

struct CubePointHash {
  std::size_t operator()(const CubePoint& p) const;
};

bool cube_leq(const CubePoint& a, const CubePoint& b);
bool cube_is_maximal(const CubePoint& p);
// <x, C> |-> <x restricted to the low bits, image of C>.
CubePoint project_point(const CubePoint& p, std::size_t bits);

// A map P(2^k) -> X given by a rule, so that k may be far too large for
// P(2^k) to be listed.
class CubeMap {
 public:
  virtual ~CubeMap() = default;
  virtual std::size_t k() const = 0;
  virtual const FinitePoset& target() const = 0;
  virtual std::size_t operator()(const CubePoint& p) const = 0;
  virtual std::string kind() const = 0;
};

// |max X| = 1: bottom to bottom, the atom <0, 2^k - {x}> to element x (or to
// the top once x runs past X), everything else to the top. k = |X| + 1.
class BaseCaseMap final : public CubeMap {
 public:
  explicit BaseCaseMap(FinitePoset x);
  std::size_t k() const override { return k_; }
  const FinitePoset& target() const override { return x_; }
  std::size_t operator()(const CubePoint& p) const override;
  std::string kind() const override { return "base"; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

 private:
  FinitePoset x_;
  std::size_t k_;
  std::size_t bottom_;
  std::size_t top_;
};

// r on an explicit upset U of P(2^k), extended to all of P(2^k) by the rule
// of extend_weak_p_morphism: outside U a maximal <z,{z}> goes to w0 and any
// other <x,C> to s(bottom, r[C & D] + {w0 if C leaves D}), where D is the set
// of points z with <z,{z}> in U.
class ExtensionMap final : public CubeMap {
 public:
  // Throws PreconditionError unless U is an upset of P(2^k) and w verifies.
  ExtensionMap(std::size_t k, SkeletonWitness w, std::vector<CubePoint> u, std::vector<std::size_t> r);

  std::size_t k() const override { return k_; }
  const FinitePoset& target() const override { return w_.poset; }
  std::size_t operator()(const CubePoint& p) const override;
  std::string kind() const override { return "extension"; }

  const SkeletonWitness& witness() const { return w_; }
  const std::vector<CubePoint>& upset() const { return u_; }
  const std::vector<std::size_t>& values() const { return r_; }
  const std::vector<std::uint64_t>& d_points() const { return d_points_; }
  std::optional<std::size_t> find(const CubePoint& p) const;
  std::size_t w0() const { return w0_; }

 private:
  std::size_t k_;
  SkeletonWitness w_;
  std::vector<CubePoint> u_;
  std::vector<std::size_t> r_;
  std::unordered_map<CubePoint, std::size_t, CubePointHash> index_;
  std::vector<std::uint64_t> d_points_;
  std::unordered_map<std::uint64_t, std::size_t> d_value_;
  std::size_t w0_;
};

struct CubeCheck {
  bool ok = true;
  std::string method;  // "exhaustive", "certificate" or "structure"
  std::uint64_t checked = 0;
  std::string failure;
};

// Walks all of P(2^k); needs k <= 4 and |P(2^k)| within caps.
CubeCheck verify_exhaustive(const CubeMap& f, const Caps& caps = {});
// Finite certificate that the extension map is a surjective weak p-morphism.
CubeCheck verify_certificate(const ExtensionMap& f, const Caps& caps = {});
// Hypotheses of the base case construction.
CubeCheck verify_base_case(const BaseCaseMap& f);
CubeCheck verify_cube_map(const CubeMap& f, const Caps& caps = {});

struct Synthesis {
  std::size_t k = 0;
  std::shared_ptr<const CubeMap> map;
  CubeCheck check;
  std::optional<PosetMap> explicit_map;  // when P(2^k) is small enough to list
};

std::uint64_t cube_size(std::size_t k);  // |P(2^k)|, saturating

// The k the construction would use, without building anything.
std::size_t constructive_dimension(const SkeletonWitness& w);

Synthesis synthesize_surjection(const FinitePoset& x, const SkeletonWitness& w, const Caps& caps = {});

}  // namespace pdl
