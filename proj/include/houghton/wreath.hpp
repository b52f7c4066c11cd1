#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "houghton/blocks.hpp"
#include "houghton/finperm.hpp"

namespace houghton {

/// The data behind the Kaloujnine-Krasner embedding: a verified block system,
/// its quotient, and the order-rank bijections r_w from a block to each class.
class BlockContext {
 public:
  BlockContext(const GeneratedSubgroup& g, BlockSystem b, std::int64_t w);

  const GeneratedSubgroup& group() const noexcept { return group_; }
  const BlockSystem& blocks() const noexcept { return blocks_; }
  const QuotientStructure& quotient() const noexcept { return quotient_; }
  std::int64_t depth() const noexcept { return depth_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// Class keys are least elements of classes.
  RayPoint key_to_qpoint(const RayPoint& key) const;
  RayPoint qpoint_to_key(const RayPoint& q) const;
  std::optional<RayPoint> key_of(const RayPoint& p) const;
  const std::vector<RayPoint>& class_points(const RayPoint& key) const;
  int block_of(const RayPoint& key) const;
  /// Image of a class under a head element of the quotient.
  RayPoint act(const RayPoint& key, const Element& head) const;

  /// r_w(a) = class_points(w)[sigma_w(a)]; sigma_w is the identity unless
  /// overridden here (used to test non-order-preserving transversals).
  void override_transversal(const RayPoint& key, Perm sigma);
  const std::map<RayPoint, Perm>& transversal_overrides() const noexcept { return overrides_; }

 private:
  int class_of_key(const RayPoint& key) const;
  void refresh_fingerprint();

  GeneratedSubgroup group_;
  BlockSystem blocks_;
  std::int64_t depth_;
  QuotientStructure quotient_;
  std::map<RayPoint, Perm> overrides_;
  std::uint64_t fingerprint_ = 0;
};

/// (phi, a): phi finitely supported, keyed by class key, values permutations of
/// the owning block's indices; identity values are never stored.
struct MultiWreathElement {
  std::map<RayPoint, Perm> base;
  Element head;
  std::uint64_t context = 0;

  friend bool operator==(const MultiWreathElement& x, const MultiWreathElement& y) {
    return x.context == y.context && x.base == y.base && x.head == y.head;
  }
};

MultiWreathElement wreath_identity(const BlockContext& ctx);
/// (phi1, a1)(phi2, a2) = (w -> phi1(w) phi2(w a1), a1 a2).
MultiWreathElement multiply(const BlockContext& ctx, const MultiWreathElement& x, const MultiWreathElement& y);
MultiWreathElement inverse(const BlockContext& ctx, const MultiWreathElement& x);

/// kappa(g) = (w -> r_w g r_{wg}^-1, rho(g)).
MultiWreathElement kk_embed(const Element& g, const BlockContext& ctx);
/// Classes w (by key) on which g is not order preserving w -> wg.
std::vector<RayPoint> non_order_preserving_classes(const Element& g, const BlockContext& ctx);

struct KkReport {
  std::size_t pairs = 0;
  std::size_t homomorphism_failures = 0;
  std::size_t injectivity_failures = 0;
  std::size_t support_mismatches = 0;  // base support differs from the non-order-preserving classes
  std::size_t inconclusive = 0;
  std::string first_failure;
  bool passed() const noexcept { return homomorphism_failures == 0 && injectivity_failures == 0 && support_mismatches == 0; }
};

/// Random pairs of words of length <= max_word_length.
KkReport verify_kk(const BlockContext& ctx, std::size_t samples, std::uint64_t seed, int max_word_length = 4);

struct WGroups {
  int block = 0;
  FinitePermGroup of_group;     // words stabilizing B_r
  FinitePermGroup of_finitary;  // ... with t = 0
  FinitePermGroup of_kernel;    // ... acting trivially on the window classes
  bool group_equals_finitary = false;
  bool finitary_equals_kernel = false;
  std::vector<Element> kernel_elements;  // kernel words realizing the kernel generators
};

std::vector<WGroups> w_groups(const BlockContext& ctx, int radius = 4, std::size_t cap = 20000);

struct DescentResult {
  bool success = false;
  MultiWreathElement s;  // supported in S, trivial head
  Element g;             // alpha = s * kappa(g)
  std::vector<std::size_t> measures;  // |supp \ S| after the head lift and after each step
  std::string note;
  std::size_t steps() const noexcept { return measures.empty() ? 0 : measures.size() - 1; }
};

struct DescentOptions {
  int head_radius = 6;
  int mover_radius = 10;
  std::size_t node_cap = 20000;
};

/// Writes alpha = s * kappa(g) with s supported on S = union of the base supports
/// of kappa(F), reducing the support outside S one class at a time.
DescentResult phi_s_descent(const MultiWreathElement& alpha, const BlockContext& ctx, const std::vector<Element>& f,
                            const DescentOptions& opts = {});

/// The element of the ball whose head is h, first in breadth-first order.
std::optional<Element> lift_head(const BlockContext& ctx, const Element& h, int radius, std::size_t cap);

}  // namespace houghton
