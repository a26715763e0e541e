#include <doctest.h>

#include <cmath>

#include "beattylab/calibration.hpp"

using namespace beattylab::calibration;

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-6 * (1.0 + std::abs(b)); }

}  // namespace

// The recorded constants are frozen measurements of the seeded grids; a
// drift here means the measurement pipeline changed and the constants need
// re-freezing.
TEST_CASE("recorded calibration constants match a fresh run of the seeded grids") {
    CHECK(close(measure_lemma3(kCalibSeed).max_ratio, kLemma3Ratio));
    CHECK(close(measure_lemma4_first(kCalibSeed).max_ratio, kLemma4Ratio1));
    CHECK(close(measure_lemma4_second(kCalibSeed).max_ratio, kLemma4Ratio2));
    CHECK(close(measure_lemma6(kCalibSeed).max_ratio, kLemma6Ratio));
    CHECK(close(measure_lemma7(kCalibSeed).max_ratio, kLemma7Ratio));
    CHECK(close(measure_prop2(kCalibSeed).max_ratio, kProp2Ratio));
    CHECK(close(measure_prop1(kCalibSeed).max_ratio, kProp1Constant));
}

TEST_CASE("grid results echo their worst case") {
    GridResult g = measure_lemma3(kCalibSeed);
    CHECK(g.cases == 1000);
    CHECK(!g.worst.empty());
}
