#pragma once

#include <nlohmann/json.hpp>

#include "game.hpp"

namespace coxlink {

using Json = nlohmann::ordered_json;

// One bundled or user-supplied setup: ambient Cox data, seeded generic
// forms, equations (explicit or a pfaffian block), and a list of actions
// with inline expectations.
struct Scenario {
    std::string name;
    unsigned long prime = 32003;
    std::uint64_t seed = 42;
    int replicas = 3;
    Json raw;
};

Scenario parse_scenario(const std::string& text);

// Instantiate the scenario's subvariety for one (prime, seed).
Subvariety instantiate(const Scenario& sc, unsigned long prime, std::uint64_t seed);

struct Expectation {
    std::string id;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct RunResult {
    std::string scenario;
    unsigned long prime = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> replica_seeds;
    std::optional<LinkTrace> trace;       // present for link scenarios
    std::optional<long> count;            // present for count scenarios
    std::optional<QuasiSmoothVerdict> quasi;  // present for sampling scenarios
    std::vector<SingularityReport> classified;
    std::vector<Expectation> expectations;
    std::vector<std::string> model_names;  // start, intermediates..., endpoint
    bool pass = true;
};

// Execute the scenario's actions; counts and traces are replicated across the
// configured seeds and must agree (the genericity guard re-samples up to
// three more seeds before giving up).
RunResult run_scenario(const Scenario& sc,
                       std::optional<unsigned long> prime_override = {},
                       std::optional<std::uint64_t> seed_override = {});

}  // namespace coxlink
