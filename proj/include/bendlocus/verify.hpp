/**
 * End-to-end checks on seeded random instances: connectivity of X and of
 * its one-point compactification, the compact parts for a single
 * hypersurface, and the relative connectivity of X inside a polytope
 * together with the Morse report.
 */
#ifndef BENDLOCUS_VERIFY_HPP
#define BENDLOCUS_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bendlocus/generator.hpp"
#include "bendlocus/homology.hpp"
#include "bendlocus/morse.hpp"

namespace bendlocus {

/// BENDLOCUS_WORKERS if set to a positive integer, else the hardware
/// concurrency (at least 1).
std::size_t default_workers();

/// Runs job(i) for i in [0, count) on `workers` threads; results keep index
/// order. The first exception thrown by a job is rethrown after all finish.
template <typename Result>
std::vector<Result> run_parallel(std::size_t count, std::size_t workers, const std::function<Result(std::size_t)>& job)
{
    std::vector<Result> out(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try
            {
                out[i] = job(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

struct RunOptions
{
    std::size_t workers = 1;
    Rational box_scale = 1;
    bool timings = false;
};

struct Truncation
{
    PolyComplex complex;
    Rational m;
    std::size_t draws = 0;
};

/// Truncates x to a random box [-M, M]^d, M = scale * U[2V+1, 3V+1] with
/// V = box_radius(x), redrawing M while the truncation is not generic.
/// Throws RejectionLimitExceeded after 100 draws.
Truncation truncate_generic(const PolyComplex& x, std::uint64_t seed, const Rational& scale = 1);

struct TheoremRecord
{
    std::uint64_t seed = 0;
    std::size_t attempts = 0;
    GenericityReport genericity;
    std::vector<std::size_t> cells_by_dim;   // of X before truncation
    Rational box;
    HomologyResult homology_x;
    HomologyResult homology_cone;
    ConnectivityLevel level_x;
    ConnectivityLevel level_cone;
    int required = 0;
    std::optional<std::string> pi1_x;
    std::optional<std::string> pi1_cone;
    bool pass = false;
    std::optional<std::string> error;
    double seconds = 0;
};

struct BaseRecord
{
    std::uint64_t seed = 0;
    std::size_t attempts = 0;
    GenericityReport genericity;
    int required = 0;
    ConnectivityLevel level_cone;        // (i)
    bool compact_x_nonempty = false;
    ConnectivityLevel level_compact_x;   // (ii)
    bool compact_refinement_applicable = false;
    HomologyResult homology_compact_refinement;   // (iii)
    bool compact_refinement_is_point = false;
    bool pass = false;
    std::optional<std::string> error;
    double seconds = 0;
};

struct LemmaRecord
{
    std::uint64_t seed = 0;
    std::size_t attempts = 0;
    std::size_t polytope_draws = 0;
    GenericityReport genericity;
    Polyhedron polytope;
    HomologyResult relative;
    ConnectivityLevel level_relative;
    int required = 0;
    bool pass = false;
    MorseReport morse;
    bool morse_pass = false;
    std::optional<std::string> error;
    double seconds = 0;
};

TheoremRecord verify_theorem_instance(const InstanceSpec& spec, const RunOptions& opt = {});
BaseRecord verify_base_instance(const InstanceSpec& spec, const RunOptions& opt = {});
LemmaRecord verify_lemma_instance(const InstanceSpec& spec, const RunOptions& opt = {});

/// Morse setup for an instance: a random generic simplex around X, redrawn
/// while the polytope is not generic or the Morse report rejects it.
struct LemmaSetup
{
    MorseSetup setup;
    MorseReport morse;
    std::size_t draws = 0;
    GenericityReport genericity;
};
LemmaSetup lemma_setup(const Instance& inst);

inline bool record_passes(const TheoremRecord& r) { return r.pass; }
inline bool record_passes(const BaseRecord& r) { return r.pass; }
inline bool record_passes(const LemmaRecord& r) { return r.pass && r.morse_pass; }

template <typename Record>
struct Report
{
    std::string command;
    InstanceSpec spec;
    std::size_t count = 0;
    std::vector<Record> records;

    std::size_t passed() const
    {
        return static_cast<std::size_t>(
            std::count_if(records.begin(), records.end(), [](const Record& r) { return record_passes(r); }));
    }
    bool all_pass() const { return passed() == records.size(); }
};

Report<TheoremRecord> verify_theorem(const InstanceSpec& spec, std::size_t count, const RunOptions& opt = {});
Report<BaseRecord> verify_base(const InstanceSpec& spec, std::size_t count, const RunOptions& opt = {});
Report<LemmaRecord> verify_lemma(const InstanceSpec& spec, std::size_t count, const RunOptions& opt = {});

}   // namespace bendlocus

#endif
