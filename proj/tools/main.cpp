// actw: lossless bit-level compressor built on (adaptive) context tree
// weighting, plus a benchmark harness and analysis helpers.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "actw/analysis.hpp"
#include "actw/bench.hpp"
#include "actw/codec.hpp"
#include "actw/context_tree.hpp"
#include "actw/io.hpp"

namespace {

// Exit codes: 0 success, 2 usage, 3 parameter range, 4 container/manifest
// format, 5 truncated stream, 6 I/O failure, 1 anything else.
enum ExitCode : int {
    kOk = 0,
    kOther = 1,
    kUsage = 2,
    kParam = 3,
    kFormat = 4,
    kTruncation = 5,
    kIo = 6,
};

constexpr const char* kPresetHelp =
    "Preset parameter sets:\n"
    "  ctw    plain context tree weighting\n"
    "  actw1  fixed discount rate, gamma = 0.01\n"
    "  actw2  partial-context visit schedule, c = 0.1, alpha = 0.33\n"
    "  actw3  partial-context visit schedule, c = 0.1, alpha = 0.5\n"
    "  actw4  full-context visit schedule, c = 0.1, alpha = 0.33\n"
    "  actw5  leaf-context visit schedule, c = 0.1, alpha = 0.33";

actw::VariantKind parse_kind(const std::string& name) {
    if (name == "ctw") return actw::VariantKind::Ctw;
    if (name == "fixed") return actw::VariantKind::FixedRate;
    if (name == "seqlen") return actw::VariantKind::SeqLength;
    if (name == "partial") return actw::VariantKind::PartialVisit;
    if (name == "full") return actw::VariantKind::FullVisit;
    if (name == "leaf") return actw::VariantKind::LeafVisit;
    throw actw::ParamError("unknown variant: " + name);
}

struct ModelFlags {
    std::string preset;
    std::string variant;
    std::optional<uint32_t> depth;
    std::optional<double> gamma, c, alpha;

    actw::VariantConfig resolve() const {
        actw::VariantConfig cfg;
        if (!preset.empty()) cfg = actw::preset(preset);
        if (!variant.empty()) cfg.kind = parse_kind(variant);
        if (depth) cfg.depth = *depth;
        if (gamma) cfg.gamma = *gamma;
        if (c) cfg.c = *c;
        if (alpha) cfg.alpha = *alpha;
        cfg.validate();
        return cfg;
    }
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
    cmd->add_option("--preset", flags.preset, "Named parameter set (see presets)");
    cmd->add_option("--variant", flags.variant,
                    "Schedule: ctw|fixed|seqlen|partial|full|leaf");
    cmd->add_option("--depth", flags.depth, "Context length in bits (1..63)");
    cmd->add_option("--gamma", flags.gamma, "Fixed discount rate");
    cmd->add_option("--c", flags.c, "Schedule scale");
    cmd->add_option("--alpha", flags.alpha, "Schedule exponent");
}

int cmd_compress(const std::string& in, const std::string& out,
                 const ModelFlags& flags) {
    const actw::VariantConfig cfg = flags.resolve();
    const std::vector<uint8_t> input = actw::read_file(in);
    const std::vector<uint8_t> output = actw::compress(input, cfg);
    actw::write_file_atomic(out, output);
    if (!input.empty())
        std::printf("%s -> %s: %zu -> %zu bytes (space saving %.2f%%)\n", in.c_str(),
                    out.c_str(), input.size(), output.size(),
                    100.0 * actw::space_saving(input.size(), output.size()));
    else
        std::printf("%s -> %s: 0 -> %zu bytes\n", in.c_str(), out.c_str(),
                    output.size());
    return kOk;
}

int cmd_decompress(const std::string& in, const std::string& out) {
    const std::vector<uint8_t> input = actw::read_file(in);
    const std::vector<uint8_t> output = actw::decompress(input);
    actw::write_file_atomic(out, output);
    std::printf("%s -> %s: %zu -> %zu bytes\n", in.c_str(), out.c_str(), input.size(),
                output.size());
    return kOk;
}

int cmd_bench(const std::string& corpus, const std::string& manifest,
              const std::vector<std::string>& variant_names,
              const std::optional<uint32_t>& depth, const std::string& format,
              const std::string& out, unsigned jobs, bool no_timing) {
    std::vector<std::pair<std::string, actw::VariantConfig>> variants;
    for (const std::string& name : variant_names) {
        actw::VariantConfig cfg = actw::preset(name);
        if (depth) cfg.depth = *depth;
        cfg.validate();
        variants.emplace_back(name, cfg);
    }

    std::vector<actw::MergeSet> merges;
    if (!manifest.empty()) merges = actw::parse_manifest(manifest);

    const actw::BenchReport report = actw::run_suite(corpus, merges, variants, jobs);
    const actw::RenderFormat fmt = format == "markdown" ? actw::RenderFormat::Markdown
                                                        : actw::RenderFormat::Csv;
    const std::string text = actw::render(report, fmt, !no_timing);
    if (out.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        actw::write_file_atomic(
            out, std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
    }
    return kOk;
}

int cmd_analyze_redundancy(double theta, uint32_t kmax, const std::string& out) {
    std::ostringstream csv;
    csv << "k,theta,R\n";
    for (uint32_t k = 1; k <= kmax; ++k) {
        char line[96];
        std::snprintf(line, sizeof(line), "%u,%.17g,%.17g\n", k, theta,
                      actw::expected_redundancy(k, theta));
        csv << line;
    }
    const std::string text = csv.str();
    if (out.empty())
        std::fputs(text.c_str(), stdout);
    else
        actw::write_file_atomic(
            out, std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
    return kOk;
}

int cmd_analyze_generate(const actw::SourceSpec& spec, const std::string& out) {
    const std::vector<uint8_t> bits = actw::generate(spec);
    const std::vector<uint8_t> bytes = actw::pack_bits(bits);
    actw::write_file_atomic(out, bytes);
    std::printf("wrote %zu bytes (%llu bits) to %s\n", bytes.size(),
                static_cast<unsigned long long>(spec.total_bits), out.c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"actw: context tree weighting compressor and benchmark harness"};
    app.footer(kPresetHelp);
    app.require_subcommand(1);

    // compress
    auto* compress = app.add_subcommand("compress", "Compress a file");
    std::string c_in, c_out;
    ModelFlags c_flags;
    compress->add_option("-i,--input", c_in, "Input file")->required();
    compress->add_option("-o,--output", c_out, "Output file")->required();
    add_model_flags(compress, c_flags);

    // decompress
    auto* decompress = app.add_subcommand("decompress", "Decompress a file");
    std::string d_in, d_out;
    decompress->add_option("-i,--input", d_in, "Input file")->required();
    decompress->add_option("-o,--output", d_out, "Output file")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Run the corpus benchmark");
    std::string b_corpus, b_manifest, b_format = "csv", b_out;
    std::vector<std::string> b_variants(actw::preset_names().begin(),
                                        actw::preset_names().end());
    std::optional<uint32_t> b_depth;
    unsigned b_jobs = 0;
    bool b_no_timing = false;
    bench->add_option("--corpus", b_corpus, "Directory of corpus files")->required();
    bench->add_option("--manifest", b_manifest,
                      "Merge-set manifest ([name] headers, one path per line)");
    bench->add_option("--variants", b_variants, "Preset names to run")->delimiter(',');
    bench->add_option("--depth", b_depth, "Context depth override");
    bench->add_option("--format", b_format, "Output format: csv|markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    bench->add_option("-o,--output", b_out, "Report file (default stdout)");
    bench->add_option("--jobs", b_jobs, "Parallel workers (default: processors)");
    bench->add_flag("--no-timing", b_no_timing, "Omit the seconds column");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Redundancy curves and sources");
    bool a_redundancy = false, a_generate = false;
    double a_theta = 0.5;
    uint32_t a_kmax = 256;
    std::string a_out, a_kind = "iid";
    std::vector<double> a_thetas;
    uint64_t a_segment = 2048, a_total_bits = 0, a_seed = 0;
    double a_drift_rate = 1.0;
    analyze->add_flag("--redundancy", a_redundancy,
                      "Emit CSV of expected one-bit redundancy R(k; theta)");
    analyze->add_flag("--generate", a_generate, "Emit a synthetic Bernoulli source");
    analyze->add_option("--theta", a_theta, "Bernoulli parameter for --redundancy");
    analyze->add_option("--kmax", a_kmax, "Largest window length for --redundancy");
    analyze->add_option("--kind", a_kind, "Source kind: iid|switching|drifting");
    analyze->add_option("--thetas", a_thetas, "Theta list for --generate")
        ->delimiter(',');
    analyze->add_option("--segment-length", a_segment, "Bits per switching segment");
    analyze->add_option("--drift-rate", a_drift_rate,
                        "Traversals of the theta list while drifting");
    analyze->add_option("--total-bits", a_total_bits, "Bits to generate");
    analyze->add_option("--seed", a_seed, "Generator seed");
    analyze->add_option("-o,--output", a_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*compress) return cmd_compress(c_in, c_out, c_flags);
        if (*decompress) return cmd_decompress(d_in, d_out);
        if (*bench)
            return cmd_bench(b_corpus, b_manifest, b_variants, b_depth, b_format, b_out,
                             b_jobs, b_no_timing);
        if (*analyze) {
            if (a_redundancy == a_generate)
                throw actw::ParamError("analyze needs exactly one of --redundancy, --generate");
            if (a_redundancy) {
                if (a_kmax < 1) throw actw::ParamError("--kmax must be >= 1");
                return cmd_analyze_redundancy(a_theta, a_kmax, a_out);
            }
            if (a_out.empty()) throw actw::ParamError("--generate requires --output");
            actw::SourceSpec spec;
            if (a_kind == "iid")
                spec.kind = actw::SourceKind::Iid;
            else if (a_kind == "switching")
                spec.kind = actw::SourceKind::Switching;
            else if (a_kind == "drifting")
                spec.kind = actw::SourceKind::Drifting;
            else
                throw actw::ParamError("unknown source kind: " + a_kind);
            spec.thetas = a_thetas.empty() ? std::vector<double>{a_theta} : a_thetas;
            spec.segment_length = a_segment;
            spec.drift_rate = a_drift_rate;
            spec.seed = a_seed;
            spec.total_bits = a_total_bits;
            return cmd_analyze_generate(spec, a_out);
        }
        return kUsage;
    } catch (const actw::ParamError& e) {
        std::fprintf(stderr, "actw: %s\n", e.what());
        return kParam;
    } catch (const actw::FormatError& e) {
        std::fprintf(stderr, "actw: %s\n", e.what());
        return kFormat;
    } catch (const actw::TruncationError& e) {
        std::fprintf(stderr, "actw: %s\n", e.what());
        return kTruncation;
    } catch (const actw::IoError& e) {
        std::fprintf(stderr, "actw: %s\n", e.what());
        return kIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "actw: %s\n", e.what());
        return kOther;
    }
}
