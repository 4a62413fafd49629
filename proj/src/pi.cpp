#include "psi/pi.hpp"

#include <stdexcept>

namespace psi {

namespace {

class PiInstance final : public Instance {
 public:
  std::string name() const override { return "pi"; }

  Assertion unit() const override { return Term::tuple({}); }

  Assertion compose(const Assertion&, const Assertion&) const override { return unit(); }

  bool entails(const Assertion& a, const Condition& c) const override {
    if (const auto* eq = c.as_chan_eq()) return chan_eq_holds(a, eq->lhs, eq->rhs);
    throw std::invalid_argument("pi has no conditions beyond channel equivalence");
  }

  bool chan_eq_holds(const Assertion&, const Term& lhs, const Term& rhs) const override {
    return lhs == rhs;
  }

  bool assertion_eq(const Assertion&, const Assertion&) const override {
    return true;  // the assertion monoid is trivial
  }
};

}  // namespace

const Instance& pi_instance() {
  static const PiInstance instance;
  return instance;
}

}  // namespace psi
