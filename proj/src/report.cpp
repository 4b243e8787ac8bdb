#include "sfw/report.hpp"

#include "sfw/metrics.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sfw {

using nlohmann::json;

json db_json(double v)
{
    if (std::isinf(v))
        return "inf";
    return v;
}

json config_json(const Config& cfg)
{
    return {{"key", cfg.key.seed}, {"step", cfg.step}, {"th1", cfg.th1}, {"th2", cfg.th2}};
}

json texture_json(const TextureMap& map)
{
    json blocks = json::array();
    for (int b = 0; b < map.grid.count(); ++b) {
        const auto i = static_cast<std::size_t>(b);
        const BlockCoord c = map.grid.coord(b);
        blocks.push_back({{"bx", c.bx},
                          {"by", c.by},
                          {"raw_std", map.raw_std[i]},
                          {"norm_std", map.norm_std[i]},
                          {"type", to_string(map.types[i])}});
    }
    return {{"blocks_w", map.grid.blocks_w}, {"blocks_h", map.grid.blocks_h}, {"blocks", blocks}};
}

json topology_json(const Topology& topo)
{
    static constexpr const char* kAreas = "ABCD";
    json blocks = json::array();
    for (int b = 0; b < topo.grid.count(); ++b) {
        const auto i = static_cast<std::size_t>(b);
        const AreaCell& a = topo.areas[i];
        blocks.push_back({{"index", b},
                          {"area", std::string(1, kAreas[a.area])},
                          {"subarea", a.subarea + 1},
                          {"prev", topo.chains.prev[i]},
                          {"next", topo.chains.next[i]},
                          {"pair", topo.pair[i]},
                          {"positions", std::vector<int>(topo.positions[i].begin(), topo.positions[i].end())}});
    }
    return {{"blocks_w", topo.grid.blocks_w},
            {"blocks_h", topo.grid.blocks_h},
            {"chains", topo.chains.chains},
            {"blocks", blocks}};
}

json embed_report_json(const EmbedReport& rep)
{
    return {{"psnr", db_json(rep.psnr)},
            {"ssim", rep.ssim},
            {"blocks", {{"smooth", rep.smooth_blocks}, {"normal", rep.normal_blocks}, {"rough", rep.rough_blocks}}},
            {"residual_bit_errors", rep.residual_bit_errors},
            {"digest_mismatches", rep.digest_mismatches},
            {"digest_passes", rep.digest_passes},
            {"degraded", rep.degraded()},
            {"config", config_json(rep.config)}};
}

json detection_json(const Detection& d, const std::optional<BlockMask>& truth)
{
    json blocks = json::array();
    int counts[3] = {0, 0, 0};
    for (int b = 0; b < d.grid.count(); ++b) {
        const auto i = static_cast<std::size_t>(b);
        const BlockCoord c = d.grid.coord(b);
        ++counts[static_cast<int>(d.status[i])];
        blocks.push_back({{"bx", c.bx},
                          {"by", c.by},
                          {"status", to_string(d.status[i])},
                          {"tampered", d.mask.at(c.bx, c.by)},
                          {"type", to_string(d.votes.types[i])},
                          {"type_support", d.votes.support[i]},
                          {"type_low_confidence", static_cast<bool>(d.votes.low_confidence[i])}});
    }
    json j = {{"blocks_w", d.grid.blocks_w},
              {"blocks_h", d.grid.blocks_h},
              {"healthful", counts[0]},
              {"partially_destroyed", counts[1]},
              {"fully_destroyed", counts[2]},
              {"tampered_blocks", d.mask.count()},
              {"blocks", blocks}};
    if (truth) {
        const DetectionRates r = fr_fa(d.mask, *truth);
        j["fr"] = r.false_rejection;
        j["fa"] = r.false_acceptance;
    }
    return j;
}

json recovery_json(const RecoveryResult& r)
{
    int sources[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < r.grid.source.size(); ++k) {
        const BlockCoord b{static_cast<int>(k % static_cast<std::size_t>(r.grid.cells_w)) / 3,
                           static_cast<int>(k / static_cast<std::size_t>(r.grid.cells_w)) / 3};
        if (r.mask.at(b.bx, b.by))
            ++sources[static_cast<int>(r.grid.source[k])];
    }
    return {{"recovered_blocks", r.mask.count()},
            {"cells", {{"pair_digest", sources[1]}, {"dependent_digest", sources[2]}, {"diffused", sources[3]}}},
            {"detection", detection_json(r.detection)}};
}

namespace {

json optional_db(const std::optional<double>& v)
{
    return v ? db_json(*v) : json(nullptr);
}

} // namespace

json scorecard_json(const ScoreCard& card)
{
    json rows = json::array();
    for (const auto& r : card.rows) {
        rows.push_back({{"image", r.image},
                        {"attack", r.attack},
                        {"watermarked_psnr", db_json(r.watermarked_psnr)},
                        {"watermarked_ssim", r.watermarked_ssim},
                        {"fr", r.fr},
                        {"fa", r.fa},
                        {"region_psnr", optional_db(r.region_psnr)},
                        {"recovered_psnr", db_json(r.recovered_psnr)},
                        {"tampered_blocks", r.tampered_blocks},
                        {"flagged_blocks", r.flagged_blocks}});
    }
    json avgs = json::array();
    for (const auto& a : card.averages) {
        avgs.push_back({{"attack", a.attack},
                        {"rows", a.rows},
                        {"watermarked_psnr", db_json(a.watermarked_psnr)},
                        {"watermarked_ssim", a.watermarked_ssim},
                        {"fr", a.fr},
                        {"fa", a.fa},
                        {"region_psnr", optional_db(a.region_psnr)},
                        {"recovered_psnr", db_json(a.recovered_psnr)}});
    }
    return {{"rows", rows}, {"averages", avgs}};
}

void write_json(const json& j, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << j.dump(2) << "\n";
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

} // namespace sfw
