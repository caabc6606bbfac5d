#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <vector>

#include "qrcensus/laws.hpp"

namespace qrc {

/// Checkpoint could not be read or written, or its content is malformed.
class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checkpoint is well formed but belongs to a different sweep (mode or range).
class CheckpointMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Resumable sweep state. Every odd n < next_unscanned has been classified.
struct Checkpoint {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    ThresholdMode mode = ThresholdMode::corrected;
    std::uint64_t lo = 3;
    std::uint64_t hi = 3;
    std::uint64_t next_unscanned = 3;
    std::vector<std::uint64_t> counterexamples;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

[[nodiscard]] std::string to_json_text(const Checkpoint& cp);
/// Throws CheckpointError on malformed input.
[[nodiscard]] Checkpoint parse_checkpoint(const std::string& text);
/// Writes a temporary sibling file and renames it over path.
void write_checkpoint_atomically(const std::filesystem::path& path, const Checkpoint& cp);
[[nodiscard]] Checkpoint read_checkpoint(const std::filesystem::path& path);

struct SweepOptions {
    std::uint64_t lo = 3;
    std::uint64_t hi = 3;
    ThresholdMode mode = ThresholdMode::corrected;
    unsigned workers = 1;
    std::optional<std::filesystem::path> checkpoint;
    bool resume = false;
    std::uint64_t checkpoint_interval = 4096;  // moduli between checkpoint writes
    std::uint64_t chunk_size = 256;            // odd moduli per work item

    /// Invoked in ascending n order, from whichever worker advances the
    /// contiguous frontier, never concurrently.
    std::function<void(const Classification&)> on_counterexample;

    std::stop_token stop;
    /// Stop once at least this many moduli were scanned in this run.
    std::optional<std::uint64_t> stop_after;
};

struct SweepOutcome {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    ThresholdMode mode = ThresholdMode::corrected;
    std::vector<Classification> counterexamples;  // strictly increasing n
    std::uint64_t scanned = 0;                    // odd moduli covered, resumed part included
    std::uint64_t next_unscanned = 0;
    bool completed = false;
    std::chrono::steady_clock::duration elapsed{};

    [[nodiscard]] std::vector<std::uint64_t> counterexample_moduli() const;
};

/// Classifies every odd n in [lo, hi] and collects disagreements with the
/// primality oracle.
///
/// Throws std::invalid_argument for a bad range, CheckpointError for
/// checkpoint I/O, CheckpointMismatch when resuming a foreign checkpoint.
[[nodiscard]] SweepOutcome sweep(const SweepOptions& options);

}  // namespace qrc
