#pragma once

#include "sfw/authenticator.hpp"
#include "sfw/embedder.hpp"
#include "sfw/evaluation.hpp"
#include "sfw/recovery.hpp"
#include "sfw/texture.hpp"
#include "sfw/topology.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>

// JSON views of the pipeline results. Field names are stable; see README.
namespace sfw {

/// Infinite PSNR is written as the string "inf".
nlohmann::json db_json(double v);

nlohmann::json config_json(const Config& cfg);
nlohmann::json texture_json(const TextureMap& map);
nlohmann::json topology_json(const Topology& topo);
nlohmann::json embed_report_json(const EmbedReport& rep);
nlohmann::json detection_json(const Detection& d, const std::optional<BlockMask>& truth = std::nullopt);
nlohmann::json recovery_json(const RecoveryResult& r);
nlohmann::json scorecard_json(const ScoreCard& card);

void write_json(const nlohmann::json& j, const std::filesystem::path& path);

} // namespace sfw
