#include "ompred/loss.hpp"

#include <cmath>

#include "ompred/error.hpp"

namespace ompred {

namespace {
double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
}  // namespace

double LossFn::value(double yhat) const {
  switch (kind) {
    case LossKind::AbsoluteHalved: return 0.5 * std::fabs(yhat - param);
    case LossKind::Absolute: return std::fabs(yhat - param);
    case LossKind::Linear: return param * yhat;
  }
  return 0.0;
}

double LossFn::subderivative(double yhat) const {
  switch (kind) {
    case LossKind::AbsoluteHalved: return 0.5 * sign(yhat - param);
    case LossKind::Absolute: return sign(yhat - param);
    case LossKind::Linear: return param;
  }
  return 0.0;
}

double LossFn::lipschitz() const {
  switch (kind) {
    case LossKind::AbsoluteHalved: return 0.5;
    case LossKind::Absolute: return 1.0;
    case LossKind::Linear: return std::fabs(param);
  }
  return 0.0;
}

std::string_view kind_name(LossKind kind) {
  switch (kind) {
    case LossKind::AbsoluteHalved: return "abshalf";
    case LossKind::Absolute: return "abs";
    case LossKind::Linear: return "linear";
  }
  return "?";
}

LossKind parse_kind(std::string_view name) {
  if (name == "abshalf") return LossKind::AbsoluteHalved;
  if (name == "abs") return LossKind::Absolute;
  if (name == "linear") return LossKind::Linear;
  throw DomainError("unknown loss kind '" + std::string(name) + "'");
}

}  // namespace ompred
