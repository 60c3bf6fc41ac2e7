// posterforge command-line entry point.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "posterforge/commands.hpp"
#include "posterforge/synthetic.hpp"

namespace fs = std::filesystem;
using namespace posterforge;

namespace {

int write_synthetic_corpus(const fs::path& out, std::size_t count, std::uint64_t seed) {
    return detail::guarded(std::cerr, "synth", [&] {
        fs::create_directories(out);
        for (const auto& doc : synthetic_corpus(count, seed))
            detail::write_file(out / (doc.id + ".json"), annotated_to_json(doc).dump(2) + "\n");
        std::cerr << count << " documents written to " << out.string() << '\n';
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"posterforge: learn poster layouts from annotated posters and generate new ones"};
    app.require_subcommand(1);

    std::optional<fs::path> config_path;
    app.add_option("--config", config_path,
                   "JSON config file (falls back to $POSTERFORGE_CONFIG, then defaults)");

    fs::path corpus, model, doc, out, split;
    std::optional<std::uint64_t> seed;
    std::size_t count = 20;

    auto* train = app.add_subcommand("train", "fit the panel and composition models");
    train->add_option("--corpus", corpus, "directory of annotated *.json documents")->required();
    train->add_option("--out", out, "model file to write")->required();

    auto* gen = app.add_subcommand("generate", "generate poster.svg, poster.tex and layout.json");
    gen->add_option("--doc", doc, "input document")->required();
    gen->add_option("--model", model, "trained model file")->required();
    gen->add_option("--out", out, "output directory")->required();
    gen->add_option("--seed", seed, "sampling seed (default: config seed)");

    auto* eval = app.add_subcommand("eval", "held-out MSE of panel inference vs. a ridge baseline");
    eval->add_option("--corpus", corpus, "directory of annotated *.json documents")->required();
    eval->add_option("--split", split, "split file {\"test\": [ids]}")->required();
    eval->add_option("--out", out, "report path; predictions go next to it as .csv")->required();
    eval->add_option("--seed", seed, "recorded in the report");

    std::optional<fs::path> inspect_doc, inspect_model;
    auto* inspect = app.add_subcommand("inspect", "summarize a document and/or a model file");
    inspect->add_option("--doc", inspect_doc, "input document");
    inspect->add_option("--model", inspect_model, "model file");

    auto* synth = app.add_subcommand("synth", "write a synthetic annotated corpus");
    synth->add_option("--out", out, "output directory")->required();
    synth->add_option("--count", count, "number of documents")->check(CLI::PositiveNumber);
    synth->add_option("--seed", seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    Config cfg;
    try {
        cfg = resolve_config(config_path);
    } catch (const InputError& e) {
        std::cerr << "error [config]: " << e.what() << '\n';
        return kExitInput;
    }
    const std::uint64_t s = seed.value_or(cfg.seed);

    if (*train) return cmd_train(corpus, out, cfg, std::cerr);
    if (*gen) return cmd_generate(doc, model, out, s, cfg, std::cerr);
    if (*eval) return cmd_eval(corpus, split, out, s, cfg, std::cerr);
    if (*inspect) return cmd_inspect(inspect_doc, inspect_model, cfg, std::cout, std::cerr);
    if (*synth) return write_synthetic_corpus(out, count, s);
    return kExitInput;
}
