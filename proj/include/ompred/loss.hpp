#pragma once

#include <string>
#include <string_view>

namespace ompred {

enum class LossKind {
  AbsoluteHalved,  // 1/2 |yhat - y|
  Absolute,        // |yhat - y|
  Linear,          // c * yhat
};

/// One round's loss. `param` is the label y for the absolute kinds and the
/// coefficient c for the linear kind.
struct LossFn {
  LossKind kind = LossKind::AbsoluteHalved;
  double param = 0.0;

  double value(double yhat) const;
  /// A subderivative at yhat; 0 at the kink of the absolute kinds.
  double subderivative(double yhat) const;
  double lipschitz() const;

  friend bool operator==(const LossFn&, const LossFn&) = default;
};

std::string_view kind_name(LossKind kind);
/// Inverse of kind_name; DomainError on an unknown name.
LossKind parse_kind(std::string_view name);

}  // namespace ompred
