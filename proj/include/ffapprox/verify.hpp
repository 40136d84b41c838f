#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffapprox/exponents.hpp"
#include "ffapprox/laurent.hpp"

namespace ffa {

struct NamedSeries {
    std::string name;
    LaurentSeries xi;
};

struct SuiteCounts {
    int cartier = 200;     // per field and per j
    int frobenius = 200;
    int gauss = 1000;
    int cartop = 300;
    int pr = 100;
    int closest = 200;
    int split = 500;
    int transport = 100;
    int statistical = 30;
};

/// Cartier reconstruction, Frobenius lift identities, Gauss multiplicativity.
std::vector<VerificationReport> verify_identity_suite(std::uint64_t seed, const SuiteCounts& counts = {});
/// CartOp separable reduction and the p-reduction lemma on generated inseparable input.
std::vector<VerificationReport> verify_reduction_suite(std::uint64_t seed, const SuiteCounts& counts = {});
/// w* <= w per window, closest-root and split-product bounds, trend and statistical reports.
std::vector<VerificationReport> verify_inequality_suite(const std::vector<NamedSeries>& corpus,
                                                        const std::vector<EnumerationWindow>& windows,
                                                        std::uint64_t seed, const SuiteCounts& counts = {},
                                                        const EstimatorOptions& opt = {});
/// Witness transport between xi and xi^p.
std::vector<VerificationReport> verify_frobenius_suite(const std::vector<NamedSeries>& corpus,
                                                       const std::vector<EnumerationWindow>& windows,
                                                       std::uint64_t seed, const SuiteCounts& counts = {},
                                                       const EstimatorOptions& opt = {});

/// Every gated report passes.
bool all_gated_ok(const std::vector<VerificationReport>& reports);

}  // namespace ffa
