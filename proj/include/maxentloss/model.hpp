#pragma once

#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace maxent {

// Compound Poisson-lognormal model: S = sum_{i=1}^{N} X_i with
// N ~ Poisson(ell) and X_i ~ Lognormal(mu, sigma), all independent.
struct CompoundModel {
    double ell = 1.0;    // claim frequency (Poisson mean), > 0
    double mu = 0.0;     // log-scale of the severity
    double sigma = 1.0;  // log-sd of the severity, > 0

    // Probability of an empty period, P(S = 0) = exp(-ell).
    double atom() const;

    void validate() const;  // throws InputError on bad parameters
};

// A sample of aggregate losses.  Values are kept in draw order (the PIT
// diagnostics are order-sensitive); a sorted copy is cached for the ECDF,
// quantile and histogram work.
class LossSample {
public:
    LossSample() = default;
    explicit LossSample(std::vector<double> values,
                        std::optional<std::uint64_t> seed = std::nullopt);

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& sorted() const { return sorted_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    std::optional<std::uint64_t> seed() const { return seed_; }

    std::size_t zero_count() const { return zero_count_; }
    // Share of exact zeros; the empirical estimate of exp(-ell).
    double zero_fraction() const;

    // Positive part in draw order / sorted; this is the sample the
    // continuous reconstruction is fitted to and tested against.
    std::vector<double> positives() const;
    std::vector<double> sorted_positives() const;

    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }
    double mean() const;

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
    std::size_t zero_count_ = 0;
    std::optional<std::uint64_t> seed_;
};

// A named experiment: model parameters plus observed/test sample sizes.
struct CaseSpec {
    CompoundModel model;
    std::size_t n_observed = 8000;
    std::size_t n_test = 1500;
    std::string label;
};

// Draw `n` periods of the compound model.  Each period consumes its own
// derived substream, so individual periods are reproducible regardless of
// how the surrounding loop is restructured.
LossSample simulate_compound(const CompoundModel& model, std::size_t n, std::uint64_t seed);

// Deterministically split a sample into (rest, test) with |test| = n_test,
// chosen uniformly without replacement; original draw order is preserved
// within each part.
std::pair<LossSample, LossSample> split_observed_test(const LossSample& sample,
                                                      std::size_t n_test,
                                                      std::uint64_t seed);

// CSV I/O: one value per row, optional single header line "loss".
LossSample read_losses_csv(std::istream& in);
LossSample read_losses_csv_file(const std::string& path);
void write_losses_csv(std::ostream& out, const LossSample& sample);

}  // namespace maxent
