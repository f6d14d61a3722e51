#include "ipsim/harness.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

namespace ipsim {

void SimulationStats::record(const TrialOutcome& out) {
    ++trials;
    switch (out.verdict) {
    case Verdict::accept: ++accepts; break;
    case Verdict::reject: ++rejects; break;
    case Verdict::cutoff: ++cutoffs; return; // no moment contribution
    }
    steps_sum += out.steps;
    steps_sumsq += static_cast<unsigned __int128>(out.steps) * out.steps;
    if (out.steps > steps_max) steps_max = out.steps;
    pri_sum += out.private_coins_used;
    pri_sumsq += static_cast<unsigned __int128>(out.private_coins_used) * out.private_coins_used;
    pub_sum += out.public_coins_used;
    pub_sumsq += static_cast<unsigned __int128>(out.public_coins_used) * out.public_coins_used;
}

SimulationStats& SimulationStats::operator+=(const SimulationStats& o) {
    trials += o.trials;
    accepts += o.accepts;
    rejects += o.rejects;
    cutoffs += o.cutoffs;
    steps_sum += o.steps_sum;
    steps_sumsq += o.steps_sumsq;
    if (o.steps_max > steps_max) steps_max = o.steps_max;
    pri_sum += o.pri_sum;
    pri_sumsq += o.pri_sumsq;
    pub_sum += o.pub_sum;
    pub_sumsq += o.pub_sumsq;
    return *this;
}

double SimulationStats::accept_rate() const {
    return trials ? static_cast<double>(accepts) / static_cast<double>(trials) : 0.0;
}

std::pair<double, double> SimulationStats::accept_interval() const {
    return wilson_interval(accepts, trials, confidence);
}

namespace {

double mean_of(std::uint64_t sum, std::uint64_t n) {
    return n ? static_cast<double>(sum) / static_cast<double>(n) : 0.0;
}

double variance_of(std::uint64_t sum, unsigned __int128 sumsq, std::uint64_t n) {
    if (n < 2) return 0.0;
    double dn = static_cast<double>(n);
    double mean = static_cast<double>(sum) / dn;
    double msq = static_cast<double>(sumsq) / dn;
    double var = (msq - mean * mean) * dn / (dn - 1.0);
    return var > 0.0 ? var : 0.0;
}

} // namespace

double SimulationStats::runtime_mean() const { return mean_of(steps_sum, halting()); }
double SimulationStats::runtime_variance() const {
    return variance_of(steps_sum, steps_sumsq, halting());
}
double SimulationStats::pri_mean() const { return mean_of(pri_sum, halting()); }
double SimulationStats::pri_variance() const { return variance_of(pri_sum, pri_sumsq, halting()); }
double SimulationStats::pub_mean() const { return mean_of(pub_sum, halting()); }
double SimulationStats::pub_variance() const { return variance_of(pub_sum, pub_sumsq, halting()); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile wants p in (0,1)");
    // Acklam's rational approximation, then one Halley refinement via erfc.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= 1 - plow) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    // Halley step against the exact CDF
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double confidence) {
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes > trials");
    if (trials == 0) return {0.0, 1.0};
    const double z = normal_quantile(0.5 + confidence / 2.0);
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        (z / denom) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    double low = center - half, high = center + half;
    if (successes == 0) low = 0.0;
    if (successes == trials) high = 1.0;
    if (low < 0.0) low = 0.0;
    if (high > 1.0) high = 1.0;
    return {low, high};
}

SimulationStats monte_carlo(const TrialRunner& runner, const ProverStrategy& prover,
                            const std::string& input, std::uint64_t trials,
                            std::uint64_t cutoff, std::uint64_t seed,
                            const MonteCarloOptions& options) {
    if (trials < 1) throw MachineError("monte_carlo wants at least one trial");
    int workers = options.workers;
    if (workers <= 0) {
        if (const char* env = std::getenv("IPSIM_WORKERS")) workers = std::atoi(env);
        if (workers <= 0) workers = 1;
    }
    if (static_cast<std::uint64_t>(workers) > trials)
        workers = static_cast<int>(trials);

    std::vector<SimulationStats> parts(static_cast<size_t>(workers));
    auto run_range = [&](int idx, std::uint64_t lo, std::uint64_t hi) {
        auto& part = parts[static_cast<size_t>(idx)];
        part.confidence = options.confidence;
        for (std::uint64_t t = lo; t < hi; ++t)
            part.record(runner.run(input, prover, CoinSource(seed, t), cutoff));
    };

    if (workers == 1) {
        run_range(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + static_cast<std::uint64_t>(workers) - 1) /
                                    static_cast<std::uint64_t>(workers);
        for (int i = 0; i < workers; ++i) {
            std::uint64_t lo = chunk * static_cast<std::uint64_t>(i);
            std::uint64_t hi = std::min(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, i, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    SimulationStats total;
    total.confidence = options.confidence;
    for (const auto& part : parts) total += part; // commutative integer merge
    return total;
}

std::string stats_to_json(const SimulationStats& s, const std::string& machine,
                          const std::string& input, std::uint64_t cutoff,
                          std::uint64_t seed) {
    auto [low, high] = s.accept_interval();
    nlohmann::json j{
        {"machine", machine},
        {"input", input},
        {"trials", s.trials},
        {"cutoff", cutoff},
        {"seed", seed},
        {"accepts", s.accepts},
        {"rejects", s.rejects},
        {"cutoffs", s.cutoffs},
        {"accept_rate", s.accept_rate()},
        {"wilson", {{"confidence", s.confidence}, {"low", low}, {"high", high}}},
        {"runtime",
         {{"mean", s.runtime_mean()}, {"variance", s.runtime_variance()}, {"max", s.steps_max}}},
        {"private_coins", {{"mean", s.pri_mean()}, {"variance", s.pri_variance()}}},
        {"public_coins", {{"mean", s.pub_mean()}, {"variance", s.pub_variance()}}},
    };
    return j.dump(2);
}

std::string stats_csv_header() {
    return "machine,input,trials,cutoff,seed,accepts,rejects,cutoffs,accept_rate,"
           "wilson_confidence,wilson_low,wilson_high,runtime_mean,runtime_variance,"
           "runtime_max,pri_mean,pri_variance,pub_mean,pub_variance";
}

std::string stats_to_csv(const SimulationStats& s, const std::string& machine,
                         const std::string& input, std::uint64_t cutoff,
                         std::uint64_t seed) {
    auto [low, high] = s.accept_interval();
    std::ostringstream out;
    out.precision(17);
    out << machine << ',' << input << ',' << s.trials << ',' << cutoff << ',' << seed << ','
        << s.accepts << ',' << s.rejects << ',' << s.cutoffs << ',' << s.accept_rate() << ','
        << s.confidence << ',' << low << ',' << high << ',' << s.runtime_mean() << ','
        << s.runtime_variance() << ',' << s.steps_max << ',' << s.pri_mean() << ','
        << s.pri_variance() << ',' << s.pub_mean() << ',' << s.pub_variance();
    return out.str();
}

} // namespace ipsim
