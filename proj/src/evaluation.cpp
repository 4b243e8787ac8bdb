#include "sfw/evaluation.hpp"

#include "sfw/authenticator.hpp"
#include "sfw/embedder.hpp"
#include "sfw/metrics.hpp"
#include "sfw/recovery.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sfw {

using nlohmann::json;

namespace {

Rect parse_rect(const json& j)
{
    return Rect{j.value("x", 0), j.value("y", 0), j.at("w").get<int>(), j.at("h").get<int>()};
}

SecretKey parse_key_value(const json& j)
{
    if (j.is_number_unsigned() || j.is_number_integer())
        return SecretKey{j.get<std::uint64_t>()};
    if (j.is_string())
        return parse_key(j.get<std::string>());
    throw std::invalid_argument("key must be a number or a string");
}

AttackSpec parse_attack(const json& j)
{
    AttackSpec a;
    a.name = j.at("name").get<std::string>();
    if (j.contains("erase")) {
        const json& e = j.at("erase");
        EraseSpec spec;
        spec.random = e.value("random", false);
        spec.rect = parse_rect(e);
        spec.value = static_cast<std::uint8_t>(e.value("value", 0));
        a.erase = spec;
    }
    if (j.contains("copy_move")) {
        const json& c = j.at("copy_move");
        CopyMoveSpec spec;
        spec.src = parse_rect(c.at("src"));
        spec.dst = parse_rect(c.at("dst"));
        a.copy_move = spec;
    }
    if (a.erase && a.copy_move)
        throw std::invalid_argument("attack '" + a.name + "' has both erase and copy_move");
    if (j.contains("jpeg"))
        a.jpeg_qf = j.at("jpeg").get<int>();
    return a;
}

} // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::filesystem::path& base_dir)
{
    ExperimentSpec spec;
    try {
        const json j = json::parse(json_text);
        for (const auto& p : j.at("images")) {
            std::filesystem::path path = p.get<std::string>();
            spec.images.push_back(path.is_absolute() ? path : base_dir / path);
        }
        spec.config.key = parse_key_value(j.at("key"));
        spec.config.step = j.value("step", spec.config.step);
        spec.config.th1 = j.value("th1", spec.config.th1);
        spec.config.th2 = j.value("th2", spec.config.th2);
        if (j.contains("attacks"))
            for (const auto& a : j.at("attacks"))
                spec.attacks.push_back(parse_attack(a));
        if (j.contains("qf_sweep")) {
            const json& sweep = j.at("qf_sweep");
            const std::string prefix = sweep.value("prefix", std::string("qf"));
            for (const auto& qf : sweep.at("qualities")) {
                json a = sweep.contains("tamper") ? sweep.at("tamper") : json::object();
                a["name"] = prefix + std::to_string(qf.get<int>());
                a["jpeg"] = qf;
                spec.attacks.push_back(parse_attack(a));
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("experiment spec: ") + e.what());
    }
    if (spec.images.empty())
        throw std::invalid_argument("experiment spec lists no images");
    if (spec.attacks.empty())
        throw std::invalid_argument("experiment spec lists no attacks");
    spec.config.validate();
    for (const auto& path : spec.images)
        if (!std::filesystem::exists(path))
            throw std::invalid_argument("experiment image not found: " + path.string());
    return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_spec(ss.str(), path.parent_path());
}

std::optional<Rect> resolve_tamper_rect(const AttackSpec& attack, const Config& cfg, int image_index, int width,
                                        int height)
{
    if (attack.copy_move)
        return attack.copy_move->dst;
    if (!attack.erase)
        return std::nullopt;
    Rect r = attack.erase->rect;
    if (attack.erase->random) {
        if (r.w > width || r.h > height)
            throw std::invalid_argument("random erase larger than the image");
        Keystream ks(cfg.key.seed ^ kTrialDomain ^ (static_cast<std::uint64_t>(image_index) * 0x9E3779B97F4A7C15ULL));
        r.x = static_cast<int>(ks.below(static_cast<std::uint64_t>(width - r.w + 1)));
        r.y = static_cast<int>(ks.below(static_cast<std::uint64_t>(height - r.h + 1)));
    }
    return r;
}

GrayImage apply_attack(const GrayImage& wm, const AttackSpec& attack, const Config& cfg, int image_index)
{
    GrayImage out = wm;
    if (attack.copy_move) {
        out = copy_move(out, attack.copy_move->src, attack.copy_move->dst);
    } else if (attack.erase) {
        const Rect r = *resolve_tamper_rect(attack, cfg, image_index, wm.width(), wm.height());
        out = erase(out, r, attack.erase->value);
    }
    if (attack.jpeg_qf)
        out = jpeg_attack(out, *attack.jpeg_qf);
    return out;
}

std::vector<ScoreAverage> average_rows(const std::vector<ScoreRow>& rows)
{
    std::vector<ScoreAverage> out;
    std::map<std::string, std::size_t> slot;
    std::vector<int> region_rows;
    for (const auto& r : rows) {
        auto [it, inserted] = slot.try_emplace(r.attack, out.size());
        if (inserted) {
            ScoreAverage fresh;
            fresh.attack = r.attack;
            out.push_back(fresh);
            region_rows.push_back(0);
        }
        ScoreAverage& a = out[it->second];
        ++a.rows;
        a.watermarked_psnr += r.watermarked_psnr;
        a.watermarked_ssim += r.watermarked_ssim;
        a.fr += r.fr;
        a.fa += r.fa;
        a.recovered_psnr += r.recovered_psnr;
        if (r.region_psnr) {
            a.region_psnr = a.region_psnr.value_or(0.0) + *r.region_psnr;
            ++region_rows[it->second];
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        ScoreAverage& a = out[i];
        const double n = a.rows;
        a.watermarked_psnr /= n;
        a.watermarked_ssim /= n;
        a.fr /= n;
        a.fa /= n;
        a.recovered_psnr /= n;
        if (a.region_psnr)
            *a.region_psnr /= region_rows[i];
    }
    return out;
}

ScoreCard run_experiment(const ExperimentSpec& spec)
{
    spec.config.validate();
    ScoreCard card;
    for (std::size_t i = 0; i < spec.images.size(); ++i) {
        const auto& path = spec.images[i];
        const std::string name = path.stem().string();
        try {
            const GrayImage original = load_pgm(path);
            const EmbedResult wm = embed(original, spec.config);
            for (const auto& attack : spec.attacks) {
                try {
                    const int idx = static_cast<int>(i);
                    const GrayImage attacked = apply_attack(wm.image, attack, spec.config, idx);
                    const auto rect = resolve_tamper_rect(attack, spec.config, idx, original.width(), original.height());
                    const BlockMask truth = rect ? tamper_truth(original.width(), original.height(), *rect)
                                                 : BlockMask(original.width() / 16, original.height() / 16);
                    const RecoveryResult rec = recover_image(attacked, spec.config);

                    ScoreRow row;
                    row.image = name;
                    row.attack = attack.name;
                    row.watermarked_psnr = wm.report.psnr;
                    row.watermarked_ssim = wm.report.ssim;
                    row.tampered_blocks = static_cast<int>(truth.count());
                    row.flagged_blocks = static_cast<int>(rec.mask.count());
                    if (truth.count() > 0 && truth.count() < truth.size()) {
                        const DetectionRates rates = fr_fa(rec.mask, truth);
                        row.fr = rates.false_rejection;
                        row.fa = rates.false_acceptance;
                        row.region_psnr = region_psnr(original, rec.recovered, truth);
                    } else if (truth.count() == 0) {
                        row.fr = 0.0;
                        row.fa = static_cast<double>(rec.mask.count()) / static_cast<double>(rec.mask.size());
                    }
                    row.recovered_psnr = psnr(original, rec.recovered);
                    card.rows.push_back(row);
                } catch (const std::exception& e) {
                    throw std::runtime_error("image '" + name + "', attack '" + attack.name + "': " + e.what());
                }
            }
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error("image '" + name + "': " + e.what());
        }
    }
    card.averages = average_rows(card.rows);
    return card;
}

namespace {

std::string fmt_db(std::optional<double> v)
{
    if (!v)
        return "-";
    if (std::isinf(*v))
        return "inf";
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << *v;
    return os.str();
}

} // namespace

std::string format_table(const ScoreCard& card)
{
    std::vector<std::string> attacks;
    for (const auto& a : card.averages)
        attacks.push_back(a.attack);

    // image -> attack -> row
    std::vector<std::string> images;
    std::map<std::string, std::map<std::string, const ScoreRow*>> cells;
    for (const auto& r : card.rows) {
        if (!cells.contains(r.image))
            images.push_back(r.image);
        cells[r.image][r.attack] = &r;
    }

    std::ostringstream os;
    os << std::left << std::setw(20) << "image" << std::right << std::setw(9) << "PSNR_wm" << std::setw(8)
       << "SSIM_wm";
    for (const auto& a : attacks)
        os << std::setw(10) << a;
    os << "\n";

    auto ssim_str = [](double v) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(3) << v;
        return s.str();
    };

    for (const auto& img : images) {
        const ScoreRow* first = cells[img].begin()->second;
        os << std::left << std::setw(20) << img << std::right << std::setw(9) << fmt_db(first->watermarked_psnr)
           << std::setw(8) << ssim_str(first->watermarked_ssim);
        for (const auto& a : attacks) {
            auto it = cells[img].find(a);
            os << std::setw(10) << (it == cells[img].end() ? "-" : fmt_db(it->second->region_psnr));
        }
        os << "\n";
    }
    if (!card.averages.empty()) {
        os << std::left << std::setw(20) << "average" << std::right << std::setw(9)
           << fmt_db(card.averages.front().watermarked_psnr) << std::setw(8)
           << ssim_str(card.averages.front().watermarked_ssim);
        for (const auto& a : card.averages)
            os << std::setw(10) << fmt_db(a.region_psnr);
        os << "\n\n";
        os << std::left << std::setw(20) << "attack" << std::right << std::setw(8) << "FR%" << std::setw(8) << "FA%"
           << std::setw(12) << "PSNR_rec" << "\n";
        for (const auto& a : card.averages) {
            std::ostringstream fr, fa;
            fr << std::fixed << std::setprecision(2) << 100.0 * a.fr;
            fa << std::fixed << std::setprecision(2) << 100.0 * a.fa;
            os << std::left << std::setw(20) << a.attack << std::right << std::setw(8) << fr.str() << std::setw(8)
               << fa.str() << std::setw(12) << fmt_db(a.recovered_psnr) << "\n";
        }
    }
    return os.str();
}

GrayImage full_digest_recovery(const GrayImage& wm, const Config& cfg)
{
    const Detection d = detect(wm, cfg);
    const BlockMask all(d.grid.blocks_w, d.grid.blocks_h, true);
    ValueGrid grid = recovery_grid(wm, all, all, d.votes.types, d.topology, d.extracted);
    fill_gaps(grid);
    return bicubic_reconstruct(grid, wm.width(), wm.height());
}

StepCalibration calibrate_step(const std::vector<GrayImage>& corpus, const Config& base, int lo, int hi,
                               double psnr_lo, double psnr_hi, double ssim_min)
{
    if (corpus.empty())
        throw std::invalid_argument("calibration corpus is empty");
    StepCalibration best;
    for (int s = lo; s <= hi; ++s) {
        Config cfg = base;
        cfg.step = s;
        double p = 0.0, q = 0.0;
        for (const auto& img : corpus) {
            const EmbedResult r = embed(img, cfg);
            p += r.report.psnr;
            q += r.report.ssim;
        }
        p /= static_cast<double>(corpus.size());
        q /= static_cast<double>(corpus.size());
        if (p >= psnr_lo && p <= psnr_hi && q >= ssim_min)
            best = {s, p, q, true};
    }
    return best;
}

} // namespace sfw
