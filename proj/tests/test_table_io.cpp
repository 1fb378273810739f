#include <doctest.h>

#include <cstdlib>

#include "ising_qfi/table_io.hpp"

using namespace ising_qfi;

TEST_CASE("format_value round-trips doubles exactly") {
    for (double v : {1.0, 0.1, 4.0 / 9.87654321, 1e-300, 3.141592653589793, -2.5e17}) {
        const std::string s = format_value(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_value(16.0) == "16");
    CHECK(format_value(0.0) == "0");
}

TEST_CASE("CsvTable renders header, comma separators, LF endings") {
    CsvTable t;
    t.header = {"N", "value"};
    t.rows = {{2.0, 0.5}, {3.0, 1.25}};
    CHECK(t.to_csv() == "N,value\n2,0.5\n3,1.25\n");
}
