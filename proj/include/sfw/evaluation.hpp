#pragma once

#include "sfw/attack.hpp"
#include "sfw/config.hpp"
#include "sfw/image.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sfw {

struct EraseSpec {
    Rect rect;            ///< position ignored when `random` is set
    std::uint8_t value = 0;
    bool random = false;  ///< keyed random position per image
};

struct CopyMoveSpec {
    Rect src;
    Rect dst;
};

/// One attack: an optional tamper followed by optional JPEG compression.
struct AttackSpec {
    std::string name;
    std::optional<EraseSpec> erase;
    std::optional<CopyMoveSpec> copy_move;
    std::optional<int> jpeg_qf;
};

struct ExperimentSpec {
    std::vector<std::filesystem::path> images;
    Config config;
    std::vector<AttackSpec> attacks;
};

struct ScoreRow {
    std::string image;
    std::string attack;
    double watermarked_psnr = 0.0;
    double watermarked_ssim = 0.0;
    double fr = 0.0;
    double fa = 0.0;
    std::optional<double> region_psnr; ///< recovered vs original over the tampered blocks
    double recovered_psnr = 0.0;       ///< whole recovered image vs original
    int tampered_blocks = 0;
    int flagged_blocks = 0;
};

struct ScoreAverage {
    std::string attack;
    int rows = 0;
    double watermarked_psnr = 0.0;
    double watermarked_ssim = 0.0;
    double fr = 0.0;
    double fa = 0.0;
    std::optional<double> region_psnr;
    double recovered_psnr = 0.0;
};

struct ScoreCard {
    std::vector<ScoreRow> rows;
    std::vector<ScoreAverage> averages; ///< one per attack, in spec order
};

/// Parse the JSON experiment description; relative image paths resolve against `base_dir`.
ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::filesystem::path& base_dir);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

/// The rectangle an attack actually tampers for image number `image_index`.
std::optional<Rect> resolve_tamper_rect(const AttackSpec& attack, const Config& cfg, int image_index,
                                        int width, int height);

/// Apply the attack (tamper, then JPEG) to a watermarked image.
GrayImage apply_attack(const GrayImage& wm, const AttackSpec& attack, const Config& cfg, int image_index);

/// Embed, attack, detect, recover and score every (image, attack) cell.
ScoreCard run_experiment(const ExperimentSpec& spec);

/// Arithmetic means of the rows, grouped by attack name in first-seen order.
std::vector<ScoreAverage> average_rows(const std::vector<ScoreRow>& rows);

/// Fixed-width table: one line per image, recovered-region PSNR per attack.
std::string format_table(const ScoreCard& card);

/// Rebuild the whole image from embedded digests alone: every block is
/// treated as tampered while all digest holders are trusted.
GrayImage full_digest_recovery(const GrayImage& wm, const Config& cfg);

/// Sweep S over [lo, hi] and keep the largest step whose mean watermarked PSNR
/// lies in [psnr_lo, psnr_hi] with mean SSIM >= ssim_min.
struct StepCalibration {
    int step = 0;
    double mean_psnr = 0.0;
    double mean_ssim = 0.0;
    bool found = false;
};
StepCalibration calibrate_step(const std::vector<GrayImage>& corpus, const Config& base, int lo, int hi,
                               double psnr_lo, double psnr_hi, double ssim_min);

} // namespace sfw
