// SPDX-License-Identifier: Apache-2.0
#pragma once

// Monte Carlo estimation of Pr{D < 0} and histograms of D. The other of the
// two cross-validation oracles: it shares nothing with the closed form or the
// inversion route beyond the problem description itself.
//
// Sampling: z_k = m_k + S w, where S is the principal square root of R and
// w = (g1 + j g2, g3 + j g4) / sqrt(2) from four standard normals, so that
// E{w w^H} = I and E{(z - m)(z - m)^H} = R.
//
// Work is split into fixed-size batches, each driven by its own counter-keyed
// stream. Batch results are integer counts reduced in index order, so the
// estimate depends only on (seed, batch size), not on thread scheduling.

#include <cmath>
#include <cstdint>
#include <future>
#include <ostream>
#include <thread>
#include <vector>

#include "gqf/errors.hpp"
#include "gqf/mat2.hpp"
#include "gqf/model.hpp"
#include "gqf/rng.hpp"

namespace gqf {

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t batch = 65'536;
};

struct McEstimate {
    double p_hat{};
    double std_err{}; // binomial standard error sqrt(p(1-p)/n)
    std::uint64_t negatives{};
    std::uint64_t samples{};
};

// Draws realizations of D for one problem. Exposes the per-branch vector draw
// so tests can check the sampled moments directly.
class DecisionSampler {
  public:
    explicit DecisionSampler(const ProblemSpec& spec)
        : Q_(spec.Q()), root_R_(sqrt_pd(spec.R)), means_(spec.means) {
        require_valid(spec);
    }

    std::size_t branches() const { return means_.size(); }

    Vec2 sample_branch(std::size_t k, SplitMix64& g) const {
        const auto [g1, g2] = normal_pair(g);
        const auto [g3, g4] = normal_pair(g);
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        const Vec2 w{cplx{g1, g2} * inv_sqrt2, cplx{g3, g4} * inv_sqrt2};
        return means_[k] + root_R_ * w;
    }

    double sample_decision(SplitMix64& g) const {
        cplx d{};
        for (std::size_t k = 0; k < means_.size(); ++k)
            d += quad_form(sample_branch(k, g), Q_);
        if (std::abs(d.imag()) > 1e-10 * (1.0 + std::abs(d.real())))
            throw NumericalError("sample_decision: sampled D has a non-negligible "
                                 "imaginary part");
        return d.real();
    }

  private:
    Mat2 Q_;
    Mat2 root_R_;
    std::vector<Vec2> means_;
};

namespace detail {

// Run `fn(batch_index, batch_samples)` over all batches on a small thread
// pool; fn must be pure given its arguments. Results are merged in batch
// order by the caller via the returned per-batch vector.
template <typename T, typename Fn>
std::vector<T> map_batches(std::uint64_t samples, std::uint64_t batch, Fn&& fn) {
    if (batch == 0) throw ValidationError("map_batches: batch size must be > 0");
    const std::uint64_t n_batches = (samples + batch - 1) / batch;
    std::vector<T> out(static_cast<std::size_t>(n_batches));

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t workers = std::min<std::uint64_t>(hw, n_batches);
    std::vector<std::future<void>> futs;
    futs.reserve(static_cast<std::size_t>(workers));
    for (std::uint64_t w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (std::uint64_t bi = w; bi < n_batches; bi += workers) {
                const std::uint64_t lo = bi * batch;
                const std::uint64_t n = std::min(batch, samples - lo);
                out[static_cast<std::size_t>(bi)] = fn(bi, n);
            }
        }));
    }
    for (auto& f : futs) f.get();
    return out;
}

} // namespace detail

inline McEstimate estimate_probability(const ProblemSpec& spec,
                                       const McConfig& cfg = {}) {
    if (cfg.samples == 0)
        throw ValidationError("estimate_probability: need at least one sample");
    const DecisionSampler sampler(spec);
    const auto counts = detail::map_batches<std::uint64_t>(
        cfg.samples, cfg.batch, [&](std::uint64_t bi, std::uint64_t n) {
            SplitMix64 g(mix_seed(cfg.seed, bi));
            std::uint64_t neg = 0;
            for (std::uint64_t i = 0; i < n; ++i)
                if (sampler.sample_decision(g) < 0.0) ++neg;
            return neg;
        });
    std::uint64_t neg = 0;
    for (std::uint64_t c : counts) neg += c;

    McEstimate est;
    est.negatives = neg;
    est.samples = cfg.samples;
    est.p_hat = static_cast<double>(neg) / static_cast<double>(cfg.samples);
    est.std_err = std::sqrt(std::max(est.p_hat * (1.0 - est.p_hat), 0.0) /
                            static_cast<double>(cfg.samples));
    return est;
}

struct Histogram {
    double lo{};
    double hi{};
    std::vector<std::uint64_t> counts;
    std::uint64_t below{};
    std::uint64_t above{};
    std::uint64_t total{};

    double bin_width() const {
        return (hi - lo) / static_cast<double>(counts.size());
    }

    // One row per bin: bin_lo,bin_hi,count. LF line endings, full precision.
    void write_csv(std::ostream& os) const {
        os.precision(17);
        os << "bin_lo,bin_hi,count\n";
        const double w = bin_width();
        for (std::size_t i = 0; i < counts.size(); ++i) {
            const double l = lo + w * static_cast<double>(i);
            const double h = (i + 1 == counts.size()) ? hi : l + w;
            os << l << ',' << h << ',' << counts[i] << '\n';
        }
    }
};

inline Histogram histogram_decision(const ProblemSpec& spec, const McConfig& cfg,
                                    std::size_t n_bins, double lo, double hi) {
    if (n_bins == 0) throw ValidationError("histogram_decision: need >= 1 bin");
    if (!(lo < hi)) throw ValidationError("histogram_decision: need lo < hi");
    const DecisionSampler sampler(spec);
    const double inv_w = static_cast<double>(n_bins) / (hi - lo);

    struct Part {
        std::vector<std::uint64_t> counts;
        std::uint64_t below{}, above{};
    };
    const auto parts = detail::map_batches<Part>(
        cfg.samples, cfg.batch, [&](std::uint64_t bi, std::uint64_t n) {
            SplitMix64 g(mix_seed(cfg.seed, bi));
            Part part;
            part.counts.assign(n_bins, 0);
            for (std::uint64_t i = 0; i < n; ++i) {
                const double d = sampler.sample_decision(g);
                if (d < lo) {
                    ++part.below;
                } else if (d >= hi) {
                    ++part.above;
                } else {
                    auto idx = static_cast<std::size_t>((d - lo) * inv_w);
                    if (idx >= n_bins) idx = n_bins - 1; // right edge rounding
                    ++part.counts[idx];
                }
            }
            return part;
        });

    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.total = cfg.samples;
    h.counts.assign(n_bins, 0);
    for (const Part& p : parts) {
        h.below += p.below;
        h.above += p.above;
        for (std::size_t i = 0; i < n_bins; ++i) h.counts[i] += p.counts[i];
    }
    return h;
}

// Range for a histogram nobody configured: sample mean +/- 5 sample standard
// deviations from a 10k pilot run on a stream that the main run never uses.
inline std::pair<double, double> default_histogram_range(const ProblemSpec& spec,
                                                         std::uint64_t seed) {
    const DecisionSampler sampler(spec);
    SplitMix64 g(mix_seed(seed ^ 0x9e3779b97f4a7c15ULL, 0xffffffffULL));
    const std::uint64_t n = 10'000;
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const double d = sampler.sample_decision(g);
        const double delta = d - mean;
        mean += delta / static_cast<double>(i);
        m2 += delta * (d - mean);
    }
    const double sd = std::sqrt(m2 / static_cast<double>(n - 1));
    return {mean - 5.0 * sd, mean + 5.0 * sd};
}

} // namespace gqf
