// Compares the serial reference replica runner against the OpenMP one on a
// small sweep and checks the outputs match byte for byte.

#include <chrono>
#include <iostream>

#include "bcmab/presets.hpp"
#include "bcmab/sweep.hpp"

using namespace bcmab;
using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
    int jobs = argc > 1 ? std::atoi(argv[1]) : 4;
    int64_t horizon = argc > 2 ? std::atoll(argv[2]) : 1500;
    int seeds = argc > 3 ? std::atoi(argv[3]) : 8;

    std::vector<ReplicaSpec> specs;
    for (int s = 1; s <= seeds; ++s)
        specs.push_back({make_preset("theorem1", horizon, static_cast<uint64_t>(s))});

    auto t0 = Clock::now();
    auto serial = run_replicas_serial(specs, /*keep_steps=*/true);
    auto t1 = Clock::now();
    auto parallel = run_replicas_parallel(specs, /*keep_steps=*/true, jobs);
    auto t2 = Clock::now();

    bool identical = serial.size() == parallel.size();
    for (size_t i = 0; identical && i < serial.size(); ++i)
        identical = serial[i].csv == parallel[i].csv &&
                    serial[i].summary_json == parallel[i].summary_json;

    double serial_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    double parallel_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    std::cout << "replicas: " << specs.size() << " horizon: " << horizon << "\n"
              << "serial reference: " << serial_ms << " ms\n"
              << "openmp (" << jobs << " jobs): " << parallel_ms << " ms\n"
              << "speedup: " << serial_ms / parallel_ms << "x\n"
              << "outputs identical: " << (identical ? "yes" : "NO") << "\n";
    return identical ? 0 : 1;
}
