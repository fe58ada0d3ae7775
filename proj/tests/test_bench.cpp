#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "actw/bench.hpp"
#include "actw/codec.hpp"
#include "actw/io.hpp"
#include "support/synthetic.hpp"

using namespace actw;
namespace fs = std::filesystem;

namespace {

struct TempCorpus {
    fs::path dir;

    TempCorpus() {
        dir = fs::temp_directory_path() /
              ("actw_bench_" + std::to_string(::getpid()) + "_" +
               std::to_string(reinterpret_cast<uintptr_t>(this)));
        fs::create_directories(dir);
    }
    ~TempCorpus() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }

    fs::path add(const std::string& name, const std::vector<uint8_t>& content) {
        const fs::path p = dir / name;
        write_file_atomic(p, content);
        return p;
    }
};

std::vector<std::pair<std::string, VariantConfig>> small_variants() {
    std::vector<std::pair<std::string, VariantConfig>> out;
    for (const auto name : {"ctw", "actw2"}) {
        VariantConfig cfg = preset(name);
        cfg.depth = 6;
        out.emplace_back(name, cfg);
    }
    return out;
}

}  // namespace

TEST_CASE("manifest parsing") {
    TempCorpus corpus;
    const fs::path manifest = corpus.dir / "sets.txt";
    {
        std::ofstream out(manifest);
        out << "# comment line\n"
            << "\n"
            << "[merge1]\n"
            << "a.bin\n"
            << "b.bin\n"
            << "[merge2]\n"
            << "b.bin\n";
    }
    const auto sets = parse_manifest(manifest);
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].name == "merge1");
    REQUIRE(sets[0].files.size() == 2);
    CHECK(sets[0].files[1] == "b.bin");
    CHECK(sets[1].name == "merge2");

    {
        std::ofstream out(manifest);
        out << "orphan.bin\n";
    }
    CHECK_THROWS_AS(parse_manifest(manifest), FormatError);
    CHECK_THROWS_AS(parse_manifest(corpus.dir / "missing.txt"), IoError);
}

TEST_CASE("single file, single variant") {
    TempCorpus corpus;
    const auto content = synth::text_like(1, 2000);
    corpus.add("alpha.txt", content);

    VariantConfig cfg = preset("ctw");
    cfg.depth = 6;
    const BenchReport report = run_suite(corpus.dir, {}, {{"ctw", cfg}}, 1);
    REQUIRE(report.rows.size() == 1);
    REQUIRE(report.rows[0].cells.size() == 1);
    const BenchCell& cell = report.rows[0].cells[0];
    CHECK(cell.ok);
    CHECK(cell.original_bytes == content.size());
    CHECK(cell.compressed_bytes == compress(content, cfg).size());
    // stored percentage agrees with one recomputed from the byte counts
    const double recomputed =
        100.0 * space_saving(cell.original_bytes, cell.compressed_bytes);
    CHECK(std::abs(cell.space_saving_pct - recomputed) < 0.01);
    CHECK(cell.seconds >= 0.0);
}

TEST_CASE("merge rows compress the ordered concatenation as one stream") {
    TempCorpus corpus;
    const auto a = synth::text_like(2, 1500);
    const auto b = synth::random_bytes(3, 1000);
    corpus.add("a.bin", a);
    corpus.add("b.bin", b);

    std::vector<MergeSet> merges{{"merge1", {"a.bin", "b.bin"}}};
    const auto variants = small_variants();
    const BenchReport report = run_suite(corpus.dir, merges, variants);
    REQUIRE(report.rows.size() == 3);  // a.bin, b.bin, merge1
    const BenchRow& merge = report.rows.back();
    CHECK(merge.name == "merge1");
    CHECK(merge.merged);

    std::vector<uint8_t> cat = a;
    cat.insert(cat.end(), b.begin(), b.end());
    for (size_t v = 0; v < variants.size(); ++v) {
        REQUIRE(merge.cells[v].ok);
        CHECK(merge.cells[v].compressed_bytes ==
              compress(cat, variants[v].second).size());
    }
}

TEST_CASE("missing merge member fails that row and the suite continues") {
    TempCorpus corpus;
    corpus.add("ok.bin", synth::repetitive(600));
    std::vector<MergeSet> merges{{"broken", {"ok.bin", "not_there.bin"}}};
    const BenchReport report = run_suite(corpus.dir, merges, small_variants(), 1);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].cells[0].ok);
    for (const auto& cell : report.rows[1].cells) {
        CHECK_FALSE(cell.ok);
        CHECK_FALSE(cell.error.empty());
    }
}

TEST_CASE("suite results are deterministic") {
    TempCorpus corpus;
    corpus.add("x.bin", synth::mixed_file(5, 3000));
    corpus.add("y.bin", synth::random_bytes(6, 500));
    std::vector<MergeSet> merges{{"m", {"x.bin", "y.bin"}}};

    const BenchReport r1 = run_suite(corpus.dir, merges, small_variants());
    const BenchReport r2 = run_suite(corpus.dir, merges, small_variants());
    CHECK(render(r1, RenderFormat::Csv, false) == render(r2, RenderFormat::Csv, false));
    CHECK(render(r1, RenderFormat::Markdown, false) ==
          render(r2, RenderFormat::Markdown, false));
}

TEST_CASE("csv golden rendering") {
    BenchReport report;
    VariantConfig cfg = preset("ctw");
    report.variants = {{"ctw", cfg}};
    BenchRow row;
    row.name = "sample.bin";
    BenchCell cell;
    cell.ok = true;
    cell.original_bytes = 1000;
    cell.compressed_bytes = 400;
    cell.space_saving_pct = 60.0;
    cell.seconds = 0.25;
    row.cells = {cell};
    report.rows = {row};

    CHECK(render(report, RenderFormat::Csv) ==
          "file,variant,original_bytes,compressed_bytes,space_saving_pct,seconds\n"
          "sample.bin,ctw,1000,400,60.00,0.2500\n");
    CHECK(render(report, RenderFormat::Csv, false) ==
          "file,variant,original_bytes,compressed_bytes,space_saving_pct\n"
          "sample.bin,ctw,1000,400,60.00\n");
}

TEST_CASE("empty report renders headers only") {
    BenchReport report;
    report.variants = {{"ctw", preset("ctw")}};
    CHECK(render(report, RenderFormat::Csv) ==
          "file,variant,original_bytes,compressed_bytes,space_saving_pct,seconds\n");
    const std::string md = render(report, RenderFormat::Markdown);
    CHECK(md.find("| file |") == 0);
    CHECK(md.find("|:-----|") != std::string::npos);
}

TEST_CASE("failed cells keep the schema and carry their cause as a comment") {
    BenchReport report;
    report.variants = {{"ctw", preset("ctw")}};
    BenchRow row;
    row.name = "ghost.bin";
    BenchCell cell;
    cell.error = "cannot open ghost.bin";
    row.cells = {cell};
    report.rows = {row};

    const std::string csv = render(report, RenderFormat::Csv);
    CHECK(csv.find("ghost.bin,ctw,,,,\n") != std::string::npos);
    CHECK(csv.find("# error ghost.bin ctw: cannot open ghost.bin") !=
          std::string::npos);
    const std::string md = render(report, RenderFormat::Markdown);
    CHECK(md.find("failed: cannot open ghost.bin") != std::string::npos);
}
