#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace support;

namespace {

ProblemConfig scalar_config() {
    ProblemConfig c;
    c.op.kind = "diagonal";
    c.op.values = {-1.0};
    c.vector.kind = "ones";
    return c;
}

double max_column(const Table& t, const std::string& col) {
    const auto i = t.column_index(col);
    double m = 0.0;
    for (const auto& r : t.rows()) m = std::max(m, std::get<double>(r[i]));
    return m;
}

}  // namespace

TEST_CASE("config round trip", "[cli]") {
    ProblemConfig c;
    c.op.kind = "multiplier";
    c.op.symbol = "i*xi^3";
    c.op.modes = {-2, -1, 1, 2};
    c.sigma = cplx(0.4, 0.2);
    c.family = {"integrated_semigroup", 1.5};
    c.methods = {"balakrishnan"};
    c.alphas = {0.0, 1.0};
    c.z_grid = {cplx(0.5, 0.1), 1.0};
    c.trace.kinds = {"quotient"};
    c.trace.theta = 0.1;
    c.vector = {"values", 3, true, {cplx(1, 2), 3.0, 0.5, cplx(0, -1)}};
    c.tolerance = 1e-5;
    c.output = {"out.json", "json"};
    const std::string text = emit_config(c);
    CHECK(parse_config(text) == c);
    CHECK(emit_config(parse_config(text)) == text);
}

TEST_CASE("config validation", "[cli]") {
    CHECK_THROWS_AS(parse_config("{}"), ConfigError);
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"schema":"fracext/1","extra":1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"schema":"fracext/1","operator":{"kind":"banana"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"schema":"fracext/1","trace":{"kinds":["dirichlet"]}})"), ConfigError);
    try {
        parse_config(R"({"schema":"fracext/1","sigma":1.5})");
        FAIL("sigma = 1.5 accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("band") != std::string::npos);
    }
    CHECK_NOTHROW(parse_config(R"({"schema":"fracext/1","sigma":{"re":0.4,"im":0.2}})"));
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("operator and vector builders", "[cli]") {
    ProblemConfig c = scalar_config();
    CHECK(build_operator(c.op).dimension() == 1);
    CHECK(build_vector(c.vector, 1)(0) == cplx(1.0));
    c.vector = {"values", 0, false, {1.0, 2.0}};
    CHECK_THROWS_AS(build_vector(c.vector, 1), ConfigError);
    OperatorSpec r;
    r.kind = "random_hermitian";
    r.size = 6;
    CHECK(build_operator(r).is_self_adjoint());
    CHECK(build_family({"integrated_cosine", 1.0}, laplacian8()).kind() == FamilyKind::integrated_cosine);
    CHECK(build_family({"semigroup", 0.0}, laplacian8()).kind() == FamilyKind::semigroup);
}

TEST_CASE("table formats", "[cli]") {
    Table t({"name", "n", "x", "z"});
    t.add_row({std::string("a,b"), 3ll, 0.1, cplx(1.5, -2.0)});
    t.add_row({std::string("q\"x"), 4ll, NAN, Table::Cell{}});
    CHECK(to_string(t, TableFormat::csv) == "name,n,x,z\n\"a,b\",3,0.1,1.5;-2\n\"q\"\"x\",4,nan,\n");
    const auto j = nlohmann::json::parse(to_string(t, TableFormat::json));
    CHECK(j.size() == 2);
    CHECK(j[0]["z"]["im"] == -2.0);
    CHECK(j[1]["x"].is_null());
    CHECK(j[1]["z"].is_null());
    CHECK_THROWS_AS(t.add_row({1ll}), ContractError);
}

TEST_CASE("fracpow command", "[cli]") {
    ProblemConfig c;
    c.methods = {"all"};
    c.alphas = {0.0, 1.0, 1.5};
    const auto r = cmd_fracpow(c);
    CHECK(r.exit_code == kExitOk);
    CHECK(max_column(r.table, "rel_error") <= 1e-6);
    CHECK(r.table.rows().size() == 8 * 5);

    ProblemConfig a;
    a.op.kind = "multiplier";
    a.op.symbol = "i*xi^3";
    a.op.modes = {-2, -1, 1, 2};
    a.vector.complex_entries = true;
    a.tolerance = 1e-5;
    CHECK(cmd_fracpow(a).exit_code == kExitOk);

    c.tolerance = 1e-20;
    CHECK(cmd_fracpow(c).exit_code == kExitNumerical);
    c.methods = {"nope"};
    CHECK_THROWS_AS(cmd_fracpow(c), ConfigError);
}

TEST_CASE("extend command", "[cli]") {
    ProblemConfig c = scalar_config();
    c.methods = {"semigroup"};
    c.z_grid = {0.25, 1.0, 2.0};
    const auto r = cmd_extend(c);
    CHECK(r.exit_code == kExitOk);
    const auto vi = r.table.column_index("value"), zi = r.table.column_index("z");
    for (const auto& row : r.table.rows()) CHECK(rel(std::get<cplx>(row[vi]), std::exp(-std::get<cplx>(row[zi]))) < 1e-8);
    c.methods = {"all"};
    CHECK(cmd_extend(c).exit_code == kExitOk);
    c.z_grid.clear();
    CHECK_THROWS_AS(cmd_extend(c), ConfigError);
}

TEST_CASE("trace command", "[cli]") {
    ProblemConfig c = scalar_config();
    const auto r = cmd_trace(c);
    CHECK(r.exit_code == kExitOk);
    const auto li = r.table.column_index("limit"), ki = r.table.column_index("kind");
    for (const auto& row : r.table.rows())
        if (std::get<std::string>(row[ki]) == "neumann") CHECK(std::abs(std::get<cplx>(row[li]) + 1.0) < 1e-6);

    ProblemConfig l;
    l.sigma = 0.3;
    l.tolerance = 1e-4;
    const auto t = cmd_trace(l);
    CHECK(t.exit_code == kExitOk);
    CHECK(max_column(t.table, "rel_error") <= 1e-4);
}

TEST_CASE("verify command", "[cli]") {
    for (const char* s : {"specfun", "quadrature", "operators"}) {
        const auto r = cmd_verify(s);
        CHECK(r.exit_code == kExitOk);
        CHECK_FALSE(r.table.rows().empty());
    }
    CHECK_THROWS_AS(cmd_verify("nope"), ConfigError);
}

TEST_CASE("command output is deterministic", "[cli]") {
    ProblemConfig c;
    c.sigma = 0.3;
    CHECK(to_string(cmd_trace(c).table, TableFormat::csv) == to_string(cmd_trace(c).table, TableFormat::csv));
}
