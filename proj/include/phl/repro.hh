#ifndef PHL_REPRO_HH
#define PHL_REPRO_HH 1

#include <phl/corpus.hh>

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace phl
{
    struct TargetOutcome
    {
        nlohmann::ordered_json computed;
        nlohmann::ordered_json expected;
        bool match = false;
        std::string details;
        /// Named structures backing the verdict, e.g. a non-returning pair.
        nlohmann::ordered_json evidence;
    };

    struct ReproductionTarget
    {
        std::string name;
        std::string description;
        std::vector<std::string> tags;
        Provenance provenance;
        std::size_t bound = 0;
        /// Why the bound suffices for the expected value.
        std::string bound_note;
        std::function<TargetOutcome(std::uint64_t seed)> run;
    };

    struct ReproductionResult
    {
        const ReproductionTarget * target = nullptr;
        TargetOutcome outcome;
        double runtime_ms = 0;
        /// Set when run threw; the verdict is then "error".
        std::optional<std::string> error;

        [[nodiscard]] auto verdict() const -> std::string;
    };

    /// All targets, ordered by name.
    auto reproduction_targets() -> const std::vector<ReproductionTarget> &;
    auto find_target(const std::string & name) -> const ReproductionTarget *;

    auto run_reproduction(const ReproductionTarget & t, std::uint64_t seed) -> ReproductionResult;

    /// Runs on up to `jobs` threads (0 means hardware concurrency); results
    /// keep the order of `targets`.
    auto run_reproductions(const std::vector<const ReproductionTarget *> & targets, std::uint64_t seed, std::size_t jobs = 0)
        -> std::vector<ReproductionResult>;

    enum class ReportFormat
    {
        text,
        json
    };

    auto emit_report(std::ostream & out, const std::vector<ReproductionResult> & results, ReportFormat format) -> void;

    /// Corpus entries and targets, optionally filtered by tag.
    auto list_corpus(std::ostream & out, const std::string & tag, ReportFormat format) -> void;
}

#endif
