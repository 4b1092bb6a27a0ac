#include "aim/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "aim/rng.hpp"
#include "aim/sobol.hpp"

namespace aim {

namespace {

constexpr std::uint64_t kRewardStreamTag = 0x72657761726473ULL;
constexpr std::uint64_t kPolicyStreamTag = 0x706f6c696379ULL;
constexpr std::uint64_t kMeansStreamTag = 0x6d65616e73ULL;

// Kahan-Babuska (Neumaier) compensated accumulator.
struct CompensatedSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

ArmChoice select(const PolicySpec& spec, const PolicyState& st, RewardFamily family,
                 std::mt19937_64& policy_rng) {
    switch (spec.kind) {
        case PolicyKind::AimGauss2: return select_aim_gauss2(st);
        case PolicyKind::AimBern2: return select_aim_bern2(st);
        case PolicyKind::AimBernK: return select_aim_bernK(st);
        case PolicyKind::Thompson: return select_thompson(st, family, policy_rng);
        case PolicyKind::UcbTuned: return select_ucb_tuned(st);
        case PolicyKind::KlUcb: return select_kl_ucb(st);
    }
    throw std::logic_error("select: unknown policy kind");
}

unsigned worker_count() {
    if (const char* env = std::getenv("AIM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

}  // namespace

std::vector<std::int64_t> default_checkpoints(std::int64_t horizon) {
    std::vector<std::int64_t> cps;
    double x = 1.0;
    while (static_cast<std::int64_t>(std::llround(x)) < horizon) {
        cps.push_back(std::llround(x));
        x *= 1.25;
    }
    cps.push_back(horizon);
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    return cps;
}

RegretTrace run_episode(const PolicySpec& policy, const BanditInstance& instance,
                        std::int64_t horizon, std::uint64_t seed,
                        std::span<const std::int64_t> checkpoints) {
    const int k = static_cast<int>(instance.means.size());
    if (horizon < k) throw std::invalid_argument("run_episode: horizon shorter than arm count");

    std::mt19937_64 reward_rng = make_rng(stream_key({seed, kRewardStreamTag}));
    std::mt19937_64 policy_rng = make_rng(stream_key({seed, kPolicyStreamTag}));
    std::normal_distribution<double> gauss(0.0, std::sqrt(instance.sigma2));

    PolicyState st;
    st.arms.assign(k, ArmStats{});
    st.sigma2 = policy.sigma2;
    st.c_ucb = policy.c_ucb;
    st.c_klucb = policy.c_klucb;

    const double mu_star = *std::max_element(instance.means.begin(), instance.means.end());
    CompensatedSum pulled_mean_sum;

    const bool gaussian_rewards = instance.family == RewardFamily::Gaussian;

    RegretTrace trace;
    trace.checkpoints.reserve(checkpoints.size());
    std::size_t next_cp = 0;
    while (next_cp < checkpoints.size() && checkpoints[next_cp] < 1) ++next_cp;

    for (std::int64_t t = 1; t <= horizon; ++t) {
        int choice;
        if (t <= k) {
            choice = static_cast<int>(t - 1);
        } else {
            choice = select(policy, st, instance.family, policy_rng).index;
        }
        double reward;
        if (gaussian_rewards)
            reward = instance.means[choice] + gauss(reward_rng);
        else
            reward = std::bernoulli_distribution(instance.means[choice])(reward_rng) ? 1.0 : 0.0;
        st.arms[choice] = update_stats(st.arms[choice], reward);
        st.t = t;
        pulled_mean_sum.add(instance.means[choice]);
        if (next_cp < checkpoints.size() && t == checkpoints[next_cp]) {
            trace.checkpoints.emplace_back(t, mu_star * static_cast<double>(t) -
                                                  pulled_mean_sum.value());
            ++next_cp;
        }
    }
    trace.final_pulls.reserve(k);
    for (const ArmStats& a : st.arms) trace.final_pulls.push_back(a.pulls);
    return trace;
}

std::vector<BanditInstance> instances_of(const ExperimentConfig& cfg) {
    std::vector<BanditInstance> out;
    switch (cfg.mean_source) {
        case MeanSource::Fixed:
            out.push_back({cfg.family, cfg.fixed_means, cfg.sigma2});
            break;
        case MeanSource::SobolGrid:
            for (int i = 0; i < cfg.sobol_count; ++i) {
                const auto [a, b] = sobol_pair(static_cast<std::uint64_t>(i));
                out.push_back({cfg.family, {a, b}, cfg.sigma2});
            }
            break;
        case MeanSource::Uniform:
            for (int r = 0; r < cfg.runs; ++r) {
                std::mt19937_64 rng =
                    make_rng(stream_key({cfg.base_seed, kMeansStreamTag, static_cast<std::uint64_t>(r)}));
                std::uniform_real_distribution<double> u(0.0, 1.0);
                BanditInstance inst{cfg.family, {}, cfg.sigma2};
                inst.means.reserve(cfg.k);
                for (int j = 0; j < cfg.k; ++j) inst.means.push_back(u(rng));
                out.push_back(std::move(inst));
            }
            break;
    }
    return out;
}

AggregatedTable run_experiment(const ExperimentConfig& cfg) {
    const std::vector<BanditInstance> instances = instances_of(cfg);
    const int reps = cfg.mean_source == MeanSource::Uniform ? 1 : cfg.runs;
    const std::vector<std::int64_t> cps =
        cfg.checkpoints.empty() ? default_checkpoints(cfg.horizon) : cfg.checkpoints;

    struct Job {
        std::size_t policy;
        std::size_t instance;
        int replicate;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    jobs.reserve(cfg.policies.size() * instances.size() * reps);
    for (std::size_t p = 0; p < cfg.policies.size(); ++p)
        for (std::size_t i = 0; i < instances.size(); ++i)
            for (int r = 0; r < reps; ++r)
                jobs.push_back({p, i, r,
                                stream_key({cfg.base_seed, fnv1a(cfg.policies[p].name),
                                            static_cast<std::uint64_t>(i),
                                            static_cast<std::uint64_t>(r)})});

    std::vector<RegretTrace> traces(jobs.size());
    std::vector<std::string> failures(jobs.size());
    std::atomic<std::size_t> cursor{0};
    const unsigned workers =
        std::min<unsigned>(worker_count(), std::max<std::size_t>(jobs.size(), 1));

    const auto work = [&]() {
        for (;;) {
            const std::size_t j = cursor.fetch_add(1);
            if (j >= jobs.size()) return;
            const Job& job = jobs[j];
            try {
                traces[j] = run_episode(cfg.policies[job.policy], instances[job.instance],
                                        cfg.horizon, job.seed, cps);
            } catch (const std::exception& e) {
                failures[j] = "policy=" + cfg.policies[job.policy].name +
                              " instance=" + std::to_string(job.instance) +
                              " replicate=" + std::to_string(job.replicate) +
                              " seed=" + std::to_string(job.seed) + ": " + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& th : pool) th.join();

    for (const std::string& f : failures)
        if (!f.empty()) throw std::runtime_error("run_experiment: run failed: " + f);

    // Deterministic reduction: jobs are visited in their construction order,
    // so the table is independent of how the pool interleaved them.
    AggregatedTable table;
    for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
        const std::int64_t n_runs = static_cast<std::int64_t>(instances.size()) * reps;
        for (std::size_t ci = 0; ci < cps.size(); ++ci) {
            CompensatedSum sum;
            for (std::size_t j = 0; j < jobs.size(); ++j)
                if (jobs[j].policy == p) sum.add(traces[j].checkpoints[ci].second);
            const double mean = sum.value() / static_cast<double>(n_runs);
            CompensatedSum sq;
            for (std::size_t j = 0; j < jobs.size(); ++j)
                if (jobs[j].policy == p) {
                    const double d = traces[j].checkpoints[ci].second - mean;
                    sq.add(d * d);
                }
            double se = 0.0;
            if (n_runs > 1)
                se = std::sqrt(sq.value() / static_cast<double>(n_runs - 1)) /
                     std::sqrt(static_cast<double>(n_runs));
            table.rows.push_back({cfg.policies[p].name, cps[ci], mean, se, n_runs});
        }
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const AggRow& a, const AggRow& b) {
        return a.policy != b.policy ? a.policy < b.policy : a.t < b.t;
    });
    return table;
}

}  // namespace aim
