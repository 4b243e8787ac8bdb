#include "sfw/attack.hpp"
#include "sfw/authenticator.hpp"
#include "sfw/embedder.hpp"
#include "sfw/evaluation.hpp"
#include "sfw/recovery.hpp"
#include "sfw/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kUsageError = 1;
constexpr int kPipelineError = 2;

struct KeyOptions {
    std::string key;
    int step = 16;
    double th1 = 0.1;
    double th2 = 0.3;
};

void add_key_options(CLI::App* cmd, KeyOptions& k)
{
    cmd->add_option("--key", k.key, "secret key, decimal or 0x-hex")->required();
    cmd->add_option("--step", k.step, "QIM step S")->capture_default_str();
    cmd->add_option("--th1", k.th1, "smooth/normal threshold")->capture_default_str();
    cmd->add_option("--th2", k.th2, "normal/rough threshold")->capture_default_str();
}

sfw::Config make_config(const KeyOptions& k)
{
    sfw::Config cfg;
    cfg.key = sfw::parse_key(k.key);
    cfg.step = k.step;
    cfg.th1 = k.th1;
    cfg.th2 = k.th2;
    cfg.validate();
    return cfg;
}

sfw::Rect rect_of(const std::vector<int>& v, std::size_t at)
{
    return sfw::Rect{v[at], v[at + 1], v[at + 2], v[at + 3]};
}

std::string truth_path_for(const std::string& out)
{
    std::filesystem::path p(out);
    return (p.parent_path() / (p.stem().string() + ".truth.pgm")).string();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Semi-fragile watermarking: embed, attack, detect, recover, evaluate, inspect"};
    app.require_subcommand(1);

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "watermark an image");
    std::string embed_in, embed_out, embed_report;
    KeyOptions embed_key;
    embed_cmd->add_option("--in", embed_in, "input PGM")->required()->check(CLI::ExistingFile);
    embed_cmd->add_option("--out", embed_out, "watermarked PGM")->required();
    embed_cmd->add_option("--report", embed_report, "JSON report");
    add_key_options(embed_cmd, embed_key);

    // attack
    auto* attack_cmd = app.add_subcommand("attack", "apply a tamper and/or JPEG compression");
    std::string attack_in, attack_out, attack_truth;
    std::optional<int> attack_qf;
    std::vector<int> erase_args, move_args;
    attack_cmd->add_option("--in", attack_in, "input PGM")->required()->check(CLI::ExistingFile);
    attack_cmd->add_option("--out", attack_out, "attacked PGM")->required();
    attack_cmd->add_option("--jpeg", attack_qf, "JPEG quality factor, applied after any tamper")
        ->check(CLI::Range(1, 100));
    auto* erase_opt = attack_cmd->add_option("--erase", erase_args, "x,y,w,h,value")->delimiter(',')->expected(5);
    auto* move_opt =
        attack_cmd->add_option("--copy-move", move_args, "sx,sy,dx,dy,w,h")->delimiter(',')->expected(6);
    erase_opt->excludes(move_opt);
    attack_cmd->add_option("--truth", attack_truth, "ground-truth block mask (default: <out>.truth.pgm)");

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "locate tampered blocks");
    std::string detect_in, detect_mask, detect_report, detect_truth;
    KeyOptions detect_key;
    detect_cmd->add_option("--in", detect_in, "received PGM")->required()->check(CLI::ExistingFile);
    detect_cmd->add_option("--mask", detect_mask, "block mask PGM (0/128/255)");
    detect_cmd->add_option("--report", detect_report, "JSON report");
    detect_cmd->add_option("--truth", detect_truth, "ground-truth mask for FR/FA")->check(CLI::ExistingFile);
    add_key_options(detect_cmd, detect_key);

    // recover
    auto* recover_cmd = app.add_subcommand("recover", "detect and repair tampered blocks");
    std::string recover_in, recover_out, recover_report, recover_mask;
    KeyOptions recover_key;
    recover_cmd->add_option("--in", recover_in, "received PGM")->required()->check(CLI::ExistingFile);
    recover_cmd->add_option("--out", recover_out, "recovered PGM")->required();
    recover_cmd->add_option("--report", recover_report, "JSON report");
    recover_cmd->add_option("--mask", recover_mask, "use this block mask instead of detection")
        ->check(CLI::ExistingFile);
    add_key_options(recover_cmd, recover_key);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "run an experiment spec over a corpus");
    std::string eval_spec, eval_out, eval_table;
    eval_cmd->add_option("--spec", eval_spec, "experiment JSON")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--out", eval_out, "score card JSON")->required();
    eval_cmd->add_option("--table", eval_table, "aligned text table");

    // inspect
    auto* inspect_cmd = app.add_subcommand("inspect", "dump texture map and keyed topology");
    std::string inspect_in, inspect_out;
    KeyOptions inspect_key;
    inspect_cmd->add_option("--in", inspect_in, "input PGM")->required()->check(CLI::ExistingFile);
    inspect_cmd->add_option("--out", inspect_out, "JSON output (default stdout)");
    add_key_options(inspect_cmd, inspect_key);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "error: " << e.what() << "\n\n";
        const auto chosen = app.get_subcommands();
        std::cerr << (chosen.empty() ? app.help() : chosen.front()->help());
        return kUsageError;
    }

    try {
        if (*embed_cmd) {
            const sfw::Config cfg = make_config(embed_key);
            const sfw::EmbedResult r = sfw::embed(sfw::load_pgm(embed_in), cfg);
            sfw::save_pgm(r.image, embed_out);
            if (!embed_report.empty())
                sfw::write_json(sfw::embed_report_json(r.report), embed_report);
            if (r.report.degraded())
                std::cerr << "warning: " << r.report.residual_bit_errors << " payload bits could not be embedded\n";
        } else if (*attack_cmd) {
            if (!attack_qf && erase_args.empty() && move_args.empty()) {
                std::cerr << "attack: give --jpeg, --erase or --copy-move\n" << attack_cmd->help();
                return kUsageError;
            }
            sfw::GrayImage img = sfw::load_pgm(attack_in);
            std::optional<sfw::Rect> tampered;
            if (!erase_args.empty()) {
                if (erase_args[4] < 0 || erase_args[4] > 255)
                    throw std::invalid_argument("erase value must be in 0..255");
                tampered = rect_of(erase_args, 0);
                img = sfw::erase(img, *tampered, static_cast<std::uint8_t>(erase_args[4]));
            } else if (!move_args.empty()) {
                const sfw::Rect src{move_args[0], move_args[1], move_args[4], move_args[5]};
                tampered = sfw::Rect{move_args[2], move_args[3], move_args[4], move_args[5]};
                img = sfw::copy_move(img, src, *tampered);
            }
            if (attack_qf)
                img = sfw::jpeg_attack(img, *attack_qf);
            sfw::save_pgm(img, attack_out);
            if (tampered) {
                const std::string path = attack_truth.empty() ? truth_path_for(attack_out) : attack_truth;
                sfw::save_pgm(sfw::mask_to_image(sfw::tamper_truth(img.width(), img.height(), *tampered)), path);
            }
        } else if (*detect_cmd) {
            const sfw::Config cfg = make_config(detect_key);
            const sfw::GrayImage img = sfw::load_pgm(detect_in);
            const sfw::Detection d = sfw::detect(img, cfg);
            std::optional<sfw::BlockMask> truth;
            if (!detect_truth.empty())
                truth = sfw::load_block_mask(detect_truth, d.grid.blocks_w, d.grid.blocks_h);
            if (!detect_mask.empty())
                sfw::save_pgm(sfw::detection_mask_image(d), detect_mask);
            if (!detect_report.empty())
                sfw::write_json(sfw::detection_json(d, truth), detect_report);
            std::cout << d.mask.count() << " of " << d.grid.count() << " blocks tampered\n";
        } else if (*recover_cmd) {
            const sfw::Config cfg = make_config(recover_key);
            const sfw::GrayImage img = sfw::load_pgm(recover_in);
            std::optional<sfw::BlockMask> mask;
            if (!recover_mask.empty())
                mask = sfw::load_block_mask(recover_mask, img.width() / sfw::kBlockSize,
                                            img.height() / sfw::kBlockSize);
            const sfw::RecoveryResult r = sfw::recover_image(img, cfg, mask);
            sfw::save_pgm(r.recovered, recover_out);
            if (!recover_report.empty())
                sfw::write_json(sfw::recovery_json(r), recover_report);
        } else if (*eval_cmd) {
            const sfw::ScoreCard card = sfw::run_experiment(sfw::load_experiment_spec(eval_spec));
            sfw::write_json(sfw::scorecard_json(card), eval_out);
            if (!eval_table.empty()) {
                std::ofstream out(eval_table, std::ios::trunc);
                out << sfw::format_table(card);
                if (!out)
                    throw std::runtime_error("cannot write '" + eval_table + "'");
            }
        } else if (*inspect_cmd) {
            const sfw::Config cfg = make_config(inspect_key);
            const sfw::GrayImage img = sfw::load_pgm(inspect_in);
            const sfw::BlockGrid grid = sfw::BlockGrid::for_watermarking(img);
            const sfw::TextureMap tex = sfw::analyze_texture(img, grid, cfg.th1, cfg.th2);
            const sfw::Topology topo = sfw::build_topology(cfg.key, grid, tex.types);
            const nlohmann::json j = {{"config", sfw::config_json(cfg)},
                                      {"texture", sfw::texture_json(tex)},
                                      {"topology", sfw::topology_json(topo)}};
            if (inspect_out.empty())
                std::cout << j.dump(2) << "\n";
            else
                sfw::write_json(j, inspect_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPipelineError;
    }
    return 0;
}
