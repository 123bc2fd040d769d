#pragma once

#include <string>
#include <vector>

#include "maass/poincare.hpp"

namespace maass::verify {

struct check_result {
    std::string name;
    double defect = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

using suite = std::vector<check_result>;

// exact finite-sum identities
suite kloosterman_symmetry();      // K_32(m,n,c) = K_32(n,m,c) = -i K_12(-m,-n,c)
suite plus_combination();          // the two projection identities on K-sums

// series-level identities
suite weight_pair_symmetry(const poincare::truncation_policy& pol);  // 3/2 vs 1/2 coefficient map
suite eisenstein_ratio(const poincare::truncation_policy& pol);      // sigma_3 ratios at weight 4
suite hurwitz_recovery(const poincare::truncation_policy& pol, bool full_grid);
suite duality(const poincare::truncation_policy& pol);
suite basis_integrality(const poincare::truncation_policy& pol);
suite shadow_relation(const poincare::truncation_policy& pol);
suite niebur_j(const poincare::truncation_policy& pol);
suite plus_vanishing(const poincare::truncation_policy& pol);  // positive-index forms vanish at 3/4
suite theta_automorphy();
suite eisenstein_modularity(const poincare::truncation_policy& pol);  // level 4 weight 3/2 residuals

// names understood by run_suite
std::vector<std::string> suite_names();
suite run_suite(const std::string& name, const poincare::truncation_policy& pol);

std::string to_json(const suite& s);
bool all_pass(const suite& s);

}  // namespace maass::verify
