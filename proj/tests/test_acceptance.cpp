// Release gate.  Runs every acceptance criterion at its full parameters and
// asserts each one individually, so a single regression names itself in the
// test output.  Criterion 13 carries a known measured exception: the k = 4
// sign-change count on the standard segment is 1, below the T^{1/8-0.05}
// floor of 1.193; the bound is asserted as stated rather than weakened, and
// the failure is expected to stay until the floor or the segment changes.

#include <catch2/catch_amalgamated.hpp>

#include <iostream>

#include "dmf/acceptance.hpp"

TEST_CASE("acceptance criteria, full parameters", "[acceptance]") {
    const auto results = dmf::run_acceptance(true, std::cout);
    REQUIRE(results.size() == 14);
    for (const auto& r : results) {
        INFO("criterion " << r.id << " (" << r.name << "): measured = "
                          << r.measured << ", bound = " << r.bound << ", "
                          << r.detail);
        CHECK(r.pass);
    }
}
