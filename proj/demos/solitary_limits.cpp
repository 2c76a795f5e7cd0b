// Prints how each family approaches its sech profile as m -> 1.

#include <cstdio>

#include "cnoidal/cnoidal.hpp"
#include "../tests/figures.hpp"

using namespace cnoidal;

int main() {
  const FamilyRequest s43{FamilyTag::S43, figures::params(0, 0, 1, 2), 2.0, 0.125, 0.75, {}};
  for (const auto& req : {figures::fig2a(), figures::fig3b(), figures::fig4a(), s43}) {
    const ConvergenceTable t = limit_consistency(LimitKind::MToOne, req);
    std::printf("%s -> sech (order %.2f)\n", std::string(family_name(req.family)).c_str(), t.order);
    for (const auto& row : t.rows) std::printf("  1-m = %.0e   coefficient gap %.3e\n", row.parameter, row.error);
    std::printf("  residual at m = 1: %.2e\n", ode_residual(m1_limit(req), req.params).relative);
  }
}
