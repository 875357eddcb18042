#pragma once

// Reference domains used by the self-test, the fixtures and the tests.

#include "rlab/domains.hpp"

namespace rlab::corpus {

/// {|z| < 1}
ReinhardtDomain unit_disc();
/// {0 < |z| < 1}
ReinhardtDomain punctured_disc();
/// {inner < |z| < outer}
ReinhardtDomain annulus(double inner = 0.5, double outer = 1.0);
/// {|z1| < 1, |z2| < 1}
ReinhardtDomain unit_bidisc();
/// {|z1| < |z2| < 1}
ReinhardtDomain hartogs_triangle();
/// {|z1| < 1, 1/2 < |z2| < 1} u {|z1| < 1/2, |z2| < 1}
ReinhardtDomain hartogs_figure();
/// {0.1 < |z1| < 0.9, 0.1 < |z2| < 0.2} u {0.1 < |z1| < 0.2, 0.1 < |z2| < 0.9}
ReinhardtDomain l_shape();

}  // namespace rlab::corpus
