#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "expinterp/expinterp.h"

namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(EXPINTERP_SCENARIO_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("parse, run, emit") {
    const auto text = read("counterexample.json");
    ei_scenario* s = nullptr;
    REQUIRE(ei_scenario_parse(text.data(), text.size(), &s) == EI_OK);
    REQUIRE(ei_scenario_set_seed(s, 9) == EI_OK);
    ei_report* r = nullptr;
    REQUIRE(ei_run(s, &r) == EI_OK);
    CHECK(ei_report_has_hard_error(r) == 0);
    char* out = nullptr;
    REQUIRE(ei_report_emit(r, EI_FORMAT_MACHINE, &out) == EI_OK);
    CHECK(std::strstr(out, "\"INFEASIBLE\"") != nullptr);
    CHECK(std::strstr(out, "\"seed\": 9") != nullptr);
    ei_string_free(out);
    REQUIRE(ei_report_plotdata(r, "NODES", nullptr, &out) == EI_OK);
    CHECK(std::strncmp(out, "index,re,im,multiplicity", 24) == 0);
    ei_string_free(out);
    CHECK(ei_report_plotdata(r, "SOLUTION_MODULUS", nullptr, &out) == EI_PAYLOAD_MISSING);
    CHECK(std::strstr(ei_last_error(), "PAYLOAD_MISSING") != nullptr);
    CHECK(ei_report_plotdata(r, "BOGUS", nullptr, &out) == EI_INVALID_ARGUMENT);
    ei_report_free(r);
    ei_scenario_free(s);
  }

  TEST_CASE("schema errors") {
    const char bad[] = R"({"lambda": {}, "nodes": {}, "oops": true})";
    ei_scenario* s = nullptr;
    CHECK(ei_scenario_parse(bad, sizeof bad - 1, &s) == EI_SCHEMA_ERROR);
    CHECK(s == nullptr);
    CHECK(std::strstr(ei_last_error(), "$.oops") != nullptr);
    CHECK(std::strcmp(ei_status_name(EI_SCHEMA_ERROR), "SCHEMA_ERROR") == 0);
    CHECK(ei_scenario_parse(nullptr, 0, &s) == EI_INVALID_ARGUMENT);
  }

  TEST_CASE("verify round-trip") {
    const auto text = read("real_axis.json");
    ei_scenario* s = nullptr;
    REQUIRE(ei_scenario_parse(text.data(), text.size(), &s) == EI_OK);
    CHECK(ei_scenario_set_task(s, "NOPE") == EI_INVALID_ARGUMENT);
    REQUIRE(ei_scenario_set_task(s, "SOLVE") == EI_OK);
    ei_report* r = nullptr;
    REQUIRE(ei_run(s, &r) == EI_OK);
    char* report = nullptr;
    REQUIRE(ei_report_emit(r, EI_FORMAT_MACHINE, &report) == EI_OK);
    char* verdict = nullptr;
    REQUIRE(ei_verify(r, report, std::strlen(report), EI_FORMAT_MACHINE, &verdict) == EI_OK);
    CHECK(std::strstr(verdict, "\"pass\": true") != nullptr);
    ei_string_free(verdict);
    ei_string_free(report);
    ei_report_free(r);
    ei_scenario_free(s);
  }
}
