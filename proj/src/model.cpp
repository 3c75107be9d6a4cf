#include "maxentloss/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "maxentloss/errors.hpp"
#include "maxentloss/quadrature.hpp"
#include "maxentloss/rng.hpp"

namespace maxent {

double CompoundModel::atom() const {
    return std::exp(-ell);
}

void CompoundModel::validate() const {
    if (!(ell > 0.0) || !std::isfinite(ell)) {
        throw InputError("CompoundModel: ell must be positive and finite");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InputError("CompoundModel: sigma must be positive and finite");
    }
    if (!std::isfinite(mu)) {
        throw InputError("CompoundModel: mu must be finite");
    }
}

LossSample::LossSample(std::vector<double> values, std::optional<std::uint64_t> seed)
    : values_(std::move(values)), seed_(seed) {
    if (values_.empty()) throw InputError("LossSample: sample must be nonempty");
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw InputError("LossSample: losses must be finite and nonnegative");
        }
    }
    zero_count_ = static_cast<std::size_t>(
        std::count(values_.begin(), values_.end(), 0.0));
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
}

double LossSample::zero_fraction() const {
    return static_cast<double>(zero_count_) / static_cast<double>(values_.size());
}

std::vector<double> LossSample::positives() const {
    std::vector<double> out;
    out.reserve(values_.size() - zero_count_);
    for (double v : values_) {
        if (v > 0.0) out.push_back(v);
    }
    return out;
}

std::vector<double> LossSample::sorted_positives() const {
    // sorted_ is ascending, so positives are its tail.
    return {sorted_.begin() + static_cast<std::ptrdiff_t>(zero_count_), sorted_.end()};
}

double LossSample::mean() const {
    NeumaierSum sum;
    for (double v : values_) sum.add(v);
    return sum.value() / static_cast<double>(values_.size());
}

LossSample simulate_compound(const CompoundModel& model, std::size_t n,
                             std::uint64_t seed) {
    model.validate();
    if (n < 1) throw InputError("simulate_compound: n must be >= 1");
    std::vector<double> values(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        // One derived substream per period: period k is reproducible on its
        // own, independent of how many periods surround it.
        Rng rng(derive_seed(seed, "period", k));
        const long count = poisson_draw(rng, model.ell);
        NeumaierSum sum;
        for (long j = 0; j < count; ++j) {
            sum.add(lognormal_draw(rng, model.mu, model.sigma));
        }
        values[k] = sum.value();
    }
    return LossSample(std::move(values), seed);
}

std::pair<LossSample, LossSample> split_observed_test(const LossSample& sample,
                                                      std::size_t n_test,
                                                      std::uint64_t seed) {
    const std::size_t n = sample.size();
    if (n_test >= n) throw InputError("split_observed_test: n_test must be < sample size");
    // Choose n_test indices by a partial Fisher-Yates shuffle, then keep
    // both parts in original draw order.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Rng rng(derive_seed(seed, "split"));
    for (std::size_t i = 0; i < n_test; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    std::vector<bool> is_test(n, false);
    for (std::size_t i = 0; i < n_test; ++i) is_test[idx[i]] = true;
    std::vector<double> rest, test;
    rest.reserve(n - n_test);
    test.reserve(n_test);
    for (std::size_t i = 0; i < n; ++i) {
        (is_test[i] ? test : rest).push_back(sample.values()[i]);
    }
    if (n_test == 0) {
        return {LossSample(std::move(rest), sample.seed()), LossSample()};
    }
    return {LossSample(std::move(rest), sample.seed()),
            LossSample(std::move(test), sample.seed())};
}

LossSample read_losses_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Strip trailing CR from files written on Windows.
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == "loss") continue;  // optional header
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(line, &pos);
        } catch (const std::exception&) {
            throw InputError("read_losses_csv: malformed record at line " +
                             std::to_string(line_no) + ": '" + line + "'");
        }
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos != line.size()) {
            throw InputError("read_losses_csv: malformed record at line " +
                             std::to_string(line_no) + ": '" + line + "'");
        }
        if (v < 0.0) {
            throw InputError("read_losses_csv: negative loss at line " +
                             std::to_string(line_no));
        }
        values.push_back(v);
    }
    if (values.empty()) throw InputError("read_losses_csv: no records found");
    return LossSample(std::move(values));
}

LossSample read_losses_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open losses file: " + path);
    return read_losses_csv(in);
}

void write_losses_csv(std::ostream& out, const LossSample& sample) {
    out << "loss\n";
    char buf[40];
    for (double v : sample.values()) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out << buf << '\n';
    }
}

}  // namespace maxent
