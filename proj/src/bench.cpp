#include "actw/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "actw/codec.hpp"
#include "actw/io.hpp"

namespace actw {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct RowInput {
    std::string name;
    bool merged = false;
    std::vector<std::filesystem::path> files;  // one entry for plain rows
};

// Reads and, for merge rows, concatenates the row's content in order.
std::vector<uint8_t> load_row(const RowInput& row) {
    std::vector<uint8_t> data;
    for (const auto& path : row.files) {
        std::vector<uint8_t> part = read_file(path);
        data.insert(data.end(), part.begin(), part.end());
    }
    return data;
}

BenchCell run_cell(const std::vector<uint8_t>& content, const VariantConfig& cfg) {
    BenchCell cell;
    cell.original_bytes = content.size();
    try {
        const auto start = std::chrono::steady_clock::now();
        const std::vector<uint8_t> compressed = compress(content, cfg);
        cell.seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        if (decompress(compressed) != content) {
            cell.error = "round-trip mismatch";
            return cell;
        }
        cell.compressed_bytes = compressed.size();
        cell.space_saving_pct =
            content.empty() ? 0.0
                            : 100.0 * space_saving(content.size(), compressed.size());
        cell.ok = true;
    } catch (const Error& e) {
        cell.error = e.what();
    }
    return cell;
}

std::string format_pct(double pct) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", pct);
    return buf;
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", s);
    return buf;
}

}  // namespace

std::vector<MergeSet> parse_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open manifest " + manifest_path.string());

    std::vector<MergeSet> sets;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string entry = trim(line);
        if (entry.empty() || entry.front() == '#') continue;
        if (entry.front() == '[') {
            if (entry.back() != ']' || entry.size() < 3)
                throw FormatError("manifest line " + std::to_string(lineno) +
                                  ": malformed section header");
            sets.push_back({entry.substr(1, entry.size() - 2), {}});
        } else {
            if (sets.empty())
                throw FormatError("manifest line " + std::to_string(lineno) +
                                  ": file entry before any [set] header");
            sets.back().files.emplace_back(entry);
        }
    }
    return sets;
}

BenchReport run_suite(const std::filesystem::path& corpus_dir,
                      const std::vector<MergeSet>& merges,
                      const std::vector<std::pair<std::string, VariantConfig>>& variants,
                      unsigned jobs) {
    BenchReport report;
    report.variants = variants;

    std::vector<RowInput> inputs;
    if (std::filesystem::exists(corpus_dir)) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            inputs.push_back({f.filename().string(), false, {f}});
    }
    for (const MergeSet& set : merges) {
        RowInput row{set.name, true, {}};
        for (const auto& f : set.files)
            row.files.push_back(f.is_absolute() ? f : corpus_dir / f);
        inputs.push_back(std::move(row));
    }

    report.rows.resize(inputs.size());
    for (size_t r = 0; r < inputs.size(); ++r) {
        report.rows[r].name = inputs[r].name;
        report.rows[r].merged = inputs[r].merged;
        report.rows[r].cells.resize(variants.size());
    }

    unsigned workers = jobs ? jobs : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;

    for (size_t r = 0; r < inputs.size(); ++r) {
        BenchRow& row = report.rows[r];
        std::vector<uint8_t> content;
        try {
            content = load_row(inputs[r]);
        } catch (const Error& e) {
            for (auto& cell : row.cells) cell.error = e.what();
            continue;
        }

        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t v = next.fetch_add(1); v < variants.size();
                 v = next.fetch_add(1))
                row.cells[v] = run_cell(content, variants[v].second);
        };
        if (workers == 1 || variants.size() == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < std::min<size_t>(workers, variants.size()); ++w)
                pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    }
    return report;
}

std::string render(const BenchReport& report, RenderFormat format,
                   bool include_seconds) {
    std::ostringstream out;
    if (format == RenderFormat::Csv) {
        out << "file,variant,original_bytes,compressed_bytes,space_saving_pct";
        if (include_seconds) out << ",seconds";
        out << '\n';
        for (const BenchRow& row : report.rows) {
            for (size_t v = 0; v < row.cells.size(); ++v) {
                const BenchCell& cell = row.cells[v];
                out << row.name << ',' << report.variants[v].first << ',';
                if (cell.ok) {
                    out << cell.original_bytes << ',' << cell.compressed_bytes << ','
                        << format_pct(cell.space_saving_pct);
                    if (include_seconds) out << ',' << format_seconds(cell.seconds);
                    out << '\n';
                } else {
                    out << ",,";
                    if (include_seconds) out << ',';
                    out << '\n';
                    out << "# error " << row.name << ' ' << report.variants[v].first
                        << ": " << cell.error << '\n';
                }
            }
        }
        return out.str();
    }

    out << "| file | variant | original_bytes | compressed_bytes | space_saving_pct |";
    if (include_seconds) out << " seconds |";
    out << '\n';
    out << "|:-----|:--------|---------------:|-----------------:|-----------------:|";
    if (include_seconds) out << "--------:|";
    out << '\n';
    for (const BenchRow& row : report.rows) {
        for (size_t v = 0; v < row.cells.size(); ++v) {
            const BenchCell& cell = row.cells[v];
            out << "| " << row.name << (row.merged ? " (merged)" : "") << " | "
                << report.variants[v].first << " | ";
            if (cell.ok) {
                out << cell.original_bytes << " | " << cell.compressed_bytes << " | "
                    << format_pct(cell.space_saving_pct) << " |";
                if (include_seconds) out << ' ' << format_seconds(cell.seconds) << " |";
            } else {
                out << "- | - | failed: " << cell.error << " |";
                if (include_seconds) out << " - |";
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace actw
