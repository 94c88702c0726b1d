#pragma once

#include <cstdlib>
#include <vector>

#include "metsub/schemes.hpp"
#include "metsub/spaces/euclidean.hpp"

namespace metsub {

// Stencil weights of a linear refinement rule, split into the even and odd
// output rules, listed in increasing output-index order.
struct MaskTable {
    std::vector<double> even;
    std::vector<double> odd;
};

// Recovers the mask from the impulse response: refine a closed scalar
// impulse and read the nonzero weights off the even and odd output indices.
// Only meaningful for rules that are linear over a Euclidean backend.
inline MaskTable export_masks(const Scheme<Vec>& scheme, std::size_t impulse_len = 32,
                              double tol = 1e-14) {
    if (impulse_len < 8) throw invalid_input("export_masks: impulse length too short");
    ElementSequence<Vec> impulse;
    impulse.boundary = Boundary::closed;
    impulse.elems.assign(impulse_len, Vec{0.0});
    impulse.elems[impulse_len / 2][0] = 1.0;
    const auto refined = scheme.refine(impulse);
    MaskTable table;
    for (std::size_t i = 0; i < refined.size(); ++i) {
        const double w = refined.elems[i][0];
        if (std::abs(w) <= tol) continue;
        (i % 2 == 0 ? table.even : table.odd).push_back(w);
    }
    return table;
}

}  // namespace metsub
