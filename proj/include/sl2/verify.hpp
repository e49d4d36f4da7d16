#pragma once

// Invariant suites behind `sl2kit verify`.  Each suite exercises one module's
// identities and bounds and records pass/fail criteria in the report.

#include <string>

#include "sl2/report.hpp"

namespace sl2 {

// name: geometry | orbits | characters | spectral | counting | all
// returns false for an unknown suite name
bool run_suite(const std::string &name, unsigned long long seed, Report &rep);

void suite_geometry(Report &rep, unsigned long long seed);
void suite_orbits(Report &rep, unsigned long long seed);
void suite_characters(Report &rep, unsigned long long seed);
void suite_spectral(Report &rep, unsigned long long seed);
void suite_counting(Report &rep, unsigned long long seed);

// shared helpers for tests and suites
struct RandomSL2R {
    unsigned long long state;
    explicit RandomSL2R(unsigned long long seed);
    double uniform(double lo, double hi);
    // random unit-determinant matrix with entries bounded by ~10
    struct Mat2 sample();
};

}  // namespace sl2
