#include "qrcensus/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qrcensus/census.hpp"

namespace qrc {

std::string to_json_text(const Checkpoint& cp) {
    nlohmann::ordered_json j;
    j["schema_version"] = cp.schema_version;
    j["mode"] = std::string(to_string(cp.mode));
    j["lo"] = cp.lo;
    j["hi"] = cp.hi;
    j["next_unscanned"] = cp.next_unscanned;
    j["counterexamples"] = cp.counterexamples;
    return j.dump(2) + "\n";
}

Checkpoint parse_checkpoint(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CheckpointError(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    const auto field = [&](const char* key) -> const nlohmann::json& {
        if (!j.is_object() || !j.contains(key)) {
            throw CheckpointError(std::string("checkpoint lacks field '") + key + "'");
        }
        return j.at(key);
    };
    const auto unsigned_field = [&](const char* key) {
        const auto& v = field(key);
        if (!v.is_number_unsigned()) {
            throw CheckpointError(std::string("checkpoint field '") + key + "' must be a nonnegative integer");
        }
        return v.get<std::uint64_t>();
    };

    Checkpoint cp;
    if (!field("schema_version").is_number_integer() || field("schema_version").get<int>() != Checkpoint::kSchemaVersion) {
        throw CheckpointError("unsupported checkpoint schema_version");
    }
    if (!field("mode").is_string()) {
        throw CheckpointError("checkpoint field 'mode' must be a string");
    }
    const auto mode = parse_threshold_mode(field("mode").get<std::string>());
    if (!mode) {
        throw CheckpointError("checkpoint names unknown mode '" + field("mode").get<std::string>() + "'");
    }
    cp.mode = *mode;
    cp.lo = unsigned_field("lo");
    cp.hi = unsigned_field("hi");
    cp.next_unscanned = unsigned_field("next_unscanned");
    const auto& list = field("counterexamples");
    if (!list.is_array()) {
        throw CheckpointError("checkpoint field 'counterexamples' must be an array");
    }
    for (const auto& v : list) {
        if (!v.is_number_unsigned()) {
            throw CheckpointError("checkpoint counterexamples must be nonnegative integers");
        }
        cp.counterexamples.push_back(v.get<std::uint64_t>());
    }

    if (cp.lo % 2 == 0 || cp.hi % 2 == 0 || cp.lo < 3 || cp.lo > cp.hi) {
        throw CheckpointError("checkpoint range is not a valid odd range");
    }
    if (cp.next_unscanned % 2 == 0 || cp.next_unscanned < cp.lo || cp.next_unscanned > cp.hi + 2) {
        throw CheckpointError("checkpoint next_unscanned lies outside its range");
    }
    for (std::size_t i = 0; i < cp.counterexamples.size(); ++i) {
        const std::uint64_t n = cp.counterexamples[i];
        if (n % 2 == 0 || n < cp.lo || n >= cp.next_unscanned ||
            (i > 0 && n <= cp.counterexamples[i - 1])) {
            throw CheckpointError("checkpoint counterexamples must be ascending odd values below next_unscanned");
        }
    }
    return cp;
}

void write_checkpoint_atomically(const std::filesystem::path& path, const Checkpoint& cp) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw CheckpointError("cannot open " + tmp.string() + " for writing");
        }
        out << to_json_text(cp);
        out.flush();
        if (!out) {
            throw CheckpointError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw CheckpointError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CheckpointError("cannot open checkpoint " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw CheckpointError("failed reading checkpoint " + path.string());
    }
    return parse_checkpoint(buf.str());
}

std::vector<std::uint64_t> SweepOutcome::counterexample_moduli() const {
    std::vector<std::uint64_t> out;
    out.reserve(counterexamples.size());
    for (const auto& c : counterexamples) out.push_back(c.n);
    return out;
}

namespace {

class SweepRun {
public:
    explicit SweepRun(const SweepOptions& o) : opt_(o) {
        outcome_.lo = o.lo;
        outcome_.hi = o.hi;
        outcome_.mode = o.mode;
        total_ = (o.hi - o.lo) / 2 + 1;
    }

    SweepOutcome run() {
        const auto started = std::chrono::steady_clock::now();
        if (opt_.resume) {
            load_resume_state();
        }
        start_index_ = done_;
        frontier_chunk_ = 0;
        const std::uint64_t remaining = total_ - start_index_;
        chunk_count_ = (remaining + chunk_size() - 1) / chunk_size();

        {
            const unsigned workers = std::max(1u, opt_.workers);
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned i = 0; i < workers; ++i) {
                pool.emplace_back([this] { work(); });
            }
        }
        if (failure_) {
            std::rethrow_exception(failure_);
        }

        outcome_.scanned = done_;
        outcome_.completed = done_ == total_;
        outcome_.next_unscanned = opt_.lo + 2 * done_;
        if (opt_.checkpoint) {
            write_checkpoint_atomically(*opt_.checkpoint, snapshot());
        }
        outcome_.elapsed = std::chrono::steady_clock::now() - started;
        return std::move(outcome_);
    }

private:
    std::uint64_t chunk_size() const { return std::max<std::uint64_t>(1, opt_.chunk_size); }

    void load_resume_state() {
        if (!opt_.checkpoint) {
            throw std::invalid_argument("resume requires a checkpoint path");
        }
        const Checkpoint cp = read_checkpoint(*opt_.checkpoint);
        if (cp.mode != opt_.mode) {
            throw CheckpointMismatch("checkpoint mode '" + std::string(to_string(cp.mode)) +
                                     "' differs from requested mode '" + std::string(to_string(opt_.mode)) + "'");
        }
        if (cp.lo != opt_.lo || cp.hi != opt_.hi) {
            throw CheckpointMismatch("checkpoint range [" + std::to_string(cp.lo) + ", " + std::to_string(cp.hi) +
                                     "] differs from requested range [" + std::to_string(opt_.lo) + ", " +
                                     std::to_string(opt_.hi) + "]");
        }
        for (std::uint64_t n : cp.counterexamples) {
            const Classification c = classify(OddModulus(n), opt_.mode);
            if (c.agree) {
                throw CheckpointError("checkpoint lists " + std::to_string(n) + ", which is not a counterexample");
            }
            emit(c);
        }
        done_ = (cp.next_unscanned - opt_.lo) / 2;
    }

    Checkpoint snapshot() const {
        Checkpoint cp;
        cp.mode = opt_.mode;
        cp.lo = opt_.lo;
        cp.hi = opt_.hi;
        cp.next_unscanned = opt_.lo + 2 * done_;
        cp.counterexamples = outcome_.counterexample_moduli();
        return cp;
    }

    void emit(const Classification& c) {
        outcome_.counterexamples.push_back(c);
        if (opt_.on_counterexample) {
            opt_.on_counterexample(c);
        }
    }

    bool should_stop() const {
        if (stopping_.load(std::memory_order_relaxed) || opt_.stop.stop_requested()) {
            return true;
        }
        return false;
    }

    void work() {
        std::vector<std::uint64_t> scratch;
        try {
            while (!should_stop()) {
                const std::uint64_t chunk = next_chunk_.fetch_add(1);
                if (chunk >= chunk_count_) {
                    return;
                }
                const std::uint64_t first = start_index_ + chunk * chunk_size();
                const std::uint64_t last = std::min(total_, first + chunk_size());
                std::vector<Classification> found;
                for (std::uint64_t i = first; i < last; ++i) {
                    const OddModulus n(opt_.lo + 2 * i);
                    const Classification c = classify_from_count(n, count_small_residues(n, scratch), opt_.mode);
                    if (!c.agree) {
                        found.push_back(c);
                    }
                }
                publish(chunk, last - first, std::move(found));
            }
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!failure_) {
                failure_ = std::current_exception();
            }
            stopping_ = true;
        }
    }

    // Merges finished chunks in order; only the contiguous prefix counts as done.
    void publish(std::uint64_t chunk, std::uint64_t size, std::vector<Classification> found) {
        std::lock_guard lock(mutex_);
        pending_.emplace(chunk, Pending{size, std::move(found)});
        while (!pending_.empty() && pending_.begin()->first == frontier_chunk_) {
            auto node = pending_.extract(pending_.begin());
            for (const auto& c : node.mapped().found) {
                emit(c);
            }
            done_ += node.mapped().size;
            since_checkpoint_ += node.mapped().size;
            ++frontier_chunk_;
        }
        if (opt_.checkpoint && since_checkpoint_ >= opt_.checkpoint_interval) {
            since_checkpoint_ = 0;
            write_checkpoint_atomically(*opt_.checkpoint, snapshot());
        }
        if (opt_.stop_after && done_ - start_index_ >= *opt_.stop_after) {
            stopping_ = true;
        }
    }

    struct Pending {
        std::uint64_t size;
        std::vector<Classification> found;
    };

    const SweepOptions& opt_;
    SweepOutcome outcome_;
    std::uint64_t total_ = 0;
    std::uint64_t start_index_ = 0;
    std::uint64_t chunk_count_ = 0;
    std::atomic<std::uint64_t> next_chunk_{0};
    std::atomic<bool> stopping_{false};

    std::mutex mutex_;  // guards everything below plus outcome_ during the run
    std::map<std::uint64_t, Pending> pending_;
    std::uint64_t frontier_chunk_ = 0;
    std::uint64_t done_ = 0;  // odd moduli in the contiguous scanned prefix
    std::uint64_t since_checkpoint_ = 0;
    std::exception_ptr failure_;
};

}  // namespace

SweepOutcome sweep(const SweepOptions& options) {
    if (options.lo < 3 || options.lo > options.hi || options.lo % 2 == 0 || options.hi % 2 == 0) {
        throw std::invalid_argument("sweep range must be odd with 3 <= lo <= hi");
    }
    if (options.hi >= kCensusCeiling) {
        throw std::invalid_argument("sweep supports hi < 2^32");
    }
    return SweepRun(options).run();
}

}  // namespace qrc
