#pragma once

#include <string>

#include "psi/process.hpp"

namespace psi {

/// Parameters of one calculus instance: the assertion monoid and the
/// entailment relation. The transition engine touches assertions and
/// conditions only through this interface.
class Instance {
 public:
  virtual ~Instance() = default;

  virtual std::string name() const = 0;

  /// Unit of assertion composition.
  virtual Assertion unit() const = 0;

  /// Composition of assertions; commutative and associative up to
  /// assertion_eq, with unit() as identity.
  virtual Assertion compose(const Assertion& a, const Assertion& b) const = 0;

  /// Entailment of a condition under an assertion. Channel-equivalence
  /// guards are answered by chan_eq_holds; payload guards by the
  /// instance-specific relation.
  virtual bool entails(const Assertion& a, const Condition& c) const = 0;

  /// Channel equivalence of two terms under an assertion; symmetric and
  /// transitive on the terms the instance uses as channels.
  virtual bool chan_eq_holds(const Assertion& a, const Term& lhs, const Term& rhs) const = 0;

  virtual bool assertion_eq(const Assertion& a, const Assertion& b) const = 0;
};

}  // namespace psi
