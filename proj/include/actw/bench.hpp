#ifndef ACTW_BENCH_HPP
#define ACTW_BENCH_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "actw/context_tree.hpp"
#include "actw/errors.hpp"

namespace actw {

// Ordered file list compressed as one concatenated stream.
struct MergeSet {
    std::string name;
    std::vector<std::filesystem::path> files;
};

// Plain-text manifest: `[set-name]` section headers followed by one file
// path per line; blank lines and lines starting with '#' are skipped.
// Paths are kept as written and resolved against the corpus directory.
std::vector<MergeSet> parse_manifest(const std::filesystem::path& manifest_path);

struct BenchCell {
    bool ok = false;
    uint64_t original_bytes = 0;
    uint64_t compressed_bytes = 0;
    double space_saving_pct = 0.0;
    double seconds = 0.0;
    std::string error;  // set when !ok
};

struct BenchRow {
    std::string name;
    bool merged = false;
    std::vector<BenchCell> cells;  // one per variant, same order as the report
};

struct BenchReport {
    std::vector<std::pair<std::string, VariantConfig>> variants;
    std::vector<BenchRow> rows;
};

// Compress every regular file in corpus_dir (sorted by name) and every merge
// set with every variant. Each size is reported only after the output was
// decompressed and compared against the input; a mismatch marks the cell
// failed. Unreadable files fail their cells and the suite continues.
// jobs = 0 uses one worker per processor.
BenchReport run_suite(const std::filesystem::path& corpus_dir,
                      const std::vector<MergeSet>& merges,
                      const std::vector<std::pair<std::string, VariantConfig>>& variants,
                      unsigned jobs = 0);

enum class RenderFormat : uint8_t { Csv, Markdown };

// CSV schema: file,variant,original_bytes,compressed_bytes,space_saving_pct,seconds
// with savings at two decimals. Failed cells keep the schema with empty
// numeric fields; the cause follows on a '#' comment line. include_seconds
// = false drops the wall-time column for byte-reproducible output.
std::string render(const BenchReport& report, RenderFormat format,
                   bool include_seconds = true);

}  // namespace actw

#endif  // ACTW_BENCH_HPP
