#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "dmf/experiment.hpp"

using dmf::CsvDocument;
using dmf::format_sig;

TEST_CASE("numbers render with 15 significant digits and round-trip") {
    CHECK(format_sig(1.0) == "1");
    CHECK(format_sig(0.5) == "0.5");
    CHECK(format_sig(0.145876906397295) == "0.145876906397295");
    CHECK(format_sig(-2.0) == "-2");
    const double v = 0.1234567890123456789;
    CHECK(std::stod(format_sig(v)) == Catch::Approx(v).epsilon(1e-14));
}

TEST_CASE("document carries tool metadata, then rows") {
    CsvDocument doc("demo", {"a", "b"});
    doc.meta("q", std::int64_t{13});
    doc.row(std::int64_t{1}, 0.5);
    doc.row(std::int64_t{2}, 0.25);
    const std::string body = doc.str();
    std::istringstream is(body);
    std::string line;
    std::getline(is, line);
    CHECK(line == "# tool=demo");
    std::getline(is, line);
    CHECK(line.rfind("# version=", 0) == 0);
    std::getline(is, line);
    CHECK(line == "# q=13");
    std::getline(is, line);
    CHECK(line == "a,b");
    std::getline(is, line);
    CHECK(line == "1,0.5");
    std::getline(is, line);
    CHECK(line == "2,0.25");
}

TEST_CASE("wall time is the only nondeterministic line") {
    auto build = [] {
        CsvDocument doc("demo", {"x"});
        doc.meta("seed", std::int64_t{7});
        doc.row(3.14159265358979);
        return doc;
    };
    const std::string a = build().str();
    const std::string b = build().str();
    CHECK(a == b);  // no wall line requested: fully deterministic

    const std::string with_wall = build().str(0.123);
    CHECK(with_wall.find("# wall_seconds=") != std::string::npos);
    CHECK(a.find("# wall_seconds=") == std::string::npos);
    // stripping the wall line recovers the deterministic body
    std::string stripped;
    std::istringstream is(with_wall);
    std::string line;
    while (std::getline(is, line))
        if (line.rfind("# wall_seconds=", 0) != 0) stripped += line + "\n";
    CHECK(stripped == a);
}

TEST_CASE("row width is enforced") {
    CsvDocument doc("demo", {"a", "b", "c"});
    CHECK_THROWS_AS(doc.row(1.0), std::logic_error);
    CHECK_THROWS_AS(doc.row(1.0, 2.0), std::logic_error);
    CHECK_NOTHROW(doc.row(1.0, 2.0, 3.0));
}

TEST_CASE("string cells pass through unquoted") {
    CsvDocument doc("demo", {"name", "value"});
    doc.row(std::string("alpha"), 1.5);
    doc.row("beta", 2.5);
    const std::string body = doc.str();
    CHECK(body.find("alpha,1.5") != std::string::npos);
    CHECK(body.find("beta,2.5") != std::string::npos);
}
