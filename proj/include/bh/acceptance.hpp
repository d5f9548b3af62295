#pragma once

#include "bh/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bh::acceptance {

struct Options {
    QuadratureSpec q;
    std::uint64_t seed = 20240611;
};

struct Result {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

constexpr int kCount = 15;

const std::string& title(int id);
Result run(int id, const Options& opt);
// Runs the listed criteria (all when ids is empty), calling on_result after each.
std::vector<Result> run_all(const Options& opt, std::span<const int> ids = {},
                            const std::function<void(const Result&)>& on_result = {});
// "PASS [ 7] title: detail (12.3 s)"
std::string format(const Result& r);

}  // namespace bh::acceptance
