#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "vogue/config.hpp"
#include "vogue/errors.hpp"
#include "vogue/fixture.hpp"
#include "vogue/pipeline.hpp"

namespace {

// exit codes: 0 ok, 1 internal, 2 config/io, 3 validation/parse
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw vogue::IoError("cannot write " + path);
    out << content;
}

int cmd_run(const std::string& config_path, const std::string& stage_name,
            const std::string& out_override, unsigned threads) {
    vogue::PipelineConfig config = vogue::parse_config(config_path);
    if (!out_override.empty()) config.output_dir = out_override;
    vogue::Pipeline pipeline(config, threads);
    const auto result = pipeline.run(vogue::parse_stage(stage_name));
    for (const auto& name : result.artifacts) {
        std::cout << "wrote " << name << '\n';
    }
    std::cout << "manifest " << result.manifest_path << '\n';
    return 0;
}

int cmd_fixture(const std::string& out_dir, std::uint64_t seed,
                const std::string& regime_name) {
    namespace fs = std::filesystem;
    vogue::FixtureParams params;
    params.seed = seed;
    if (regime_name == "hierarchical") params.regime = vogue::Regime::Hierarchical;
    else if (regime_name == "niche") params.regime = vogue::Regime::Niche;
    else throw vogue::ConfigError("unknown regime \"" + regime_name + "\"");

    const vogue::Fixture fixture = vogue::make_fixture(params);
    fs::create_directories(out_dir);
    fs::create_directories(fs::path(out_dir) / "journals");
    write_file((fs::path(out_dir) / "corpus.jsonl").string(), fixture.corpus_jsonl);
    write_file((fs::path(out_dir) / "institutions.csv").string(),
               fixture.institutions_csv);
    write_file((fs::path(out_dir) / "journals" / "journals.jsonl").string(),
               fixture.journals_jsonl);
    write_file((fs::path(out_dir) / "ground_truth.json").string(),
               fixture.ground_truth_json);

    std::ostringstream config;
    config << "corpus = " << (fs::path(out_dir) / "corpus.jsonl").string() << '\n'
           << "institutions = " << (fs::path(out_dir) / "institutions.csv").string()
           << '\n'
           << "journals_dir = " << (fs::path(out_dir) / "journals").string() << '\n'
           << "output_dir = " << (fs::path(out_dir) / "out").string() << '\n'
           << "year_start = " << params.year_start << '\n'
           << "year_boundary = " << params.year_boundary << '\n'
           << "year_end = " << params.year_end << '\n';
    write_file((fs::path(out_dir) / "pipeline.conf").string(), config.str());
    std::cout << "fixture written to " << out_dir << '\n';
    return 0;
}

int cmd_inspect(const std::string& out_dir, const std::string& what) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    std::string name;
    if (what == "manifest") name = "manifest.json";
    else if (what == "report") name = "vogue_report.json";
    else if (what == "shares") name = "shares.json";
    else if (what == "journals") name = "journal_overlap.csv";
    else if (what == "models") name = "models.csv";
    else throw vogue::ConfigError("unknown inspect target \"" + what + "\"");

    std::ifstream in(dir / name);
    if (!in) {
        throw vogue::ValidationError("artifact \"" + name + "\" not found in " + out_dir);
    }
    std::cout << in.rdbuf();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic trend and diffusion pipeline"};
    app.require_subcommand(1);

    std::string config_path, stage = "all", out_override;
    unsigned threads = 1;
    auto* run = app.add_subcommand("run", "run pipeline stages from a config file");
    run->add_option("-c,--config", config_path, "key = value config file")->required();
    run->add_option("-s,--stage", stage,
                    "all|network|backbone|vogue|diffusion|journals|regress");
    run->add_option("-o,--out", out_override, "override the configured output dir");
    run->add_option("-t,--threads", threads, "worker threads (results are identical)");

    std::string fixture_dir = "fixture";
    std::uint64_t seed = 1;
    std::string regime = "hierarchical";
    auto* fixture = app.add_subcommand("fixture", "write a synthetic test corpus");
    fixture->add_option("-o,--out", fixture_dir, "output directory");
    fixture->add_option("--seed", seed, "generator seed");
    fixture->add_option("--regime", regime, "hierarchical|niche");

    std::string inspect_dir = "out", what = "manifest";
    auto* inspect = app.add_subcommand("inspect", "print a pipeline artifact");
    inspect->add_option("-d,--dir", inspect_dir, "pipeline output directory");
    inspect->add_option("what", what, "manifest|report|shares|journals|models");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, stage, out_override, threads);
        if (fixture->parsed()) return cmd_fixture(fixture_dir, seed, regime);
        if (inspect->parsed()) return cmd_inspect(inspect_dir, what);
    } catch (const vogue::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const vogue::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const vogue::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const vogue::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
