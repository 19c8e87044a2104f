#include <catch2/catch_amalgamated.hpp>
#include "boxcover/boxcover.hpp"
TEST_CASE("smoke") { CHECK(boxcover::enumerate_faces(4,2).size() == 24); }
