#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "unionpath/geom.hpp"

namespace unionpath::bench {

struct Row {
    std::string suite;
    int n = 0;
    uint64_t seed = 0;
    std::string metric;
    double value = 0;
    double wall = 0;  // seconds
};

struct Config {
    int seeds = 30;
    int n_min = 0;  // 0 = suite default
    int n_max = 0;
    int instances = 200;  // diameter-error
    int threads = 1;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite.
std::vector<Row> run_suite(const std::string& suite, const Config& cfg);

void write_csv(std::ostream& out, const std::vector<Row>& rows);

// UNIONPATH_THREADS when set, else the hardware concurrency; at least 1.
int default_threads();

// Random disks at mean degree about six, used by the sssp-scaling suite.
Instance dense_disks(int n, uint64_t seed);

// Smallest object id of the largest connected component.
int giant_component_source(const Instance& inst);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace unionpath::bench
