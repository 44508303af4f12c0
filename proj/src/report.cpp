#include "qcorr/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <system_error>

namespace qcorr {

std::string format_number(double v) {
    if (v == 0.0) return "0"; // also normalizes -0
    char buf[64];
    for (int digits = 1; digits <= 12; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = "param,c1,c2,c3,concurrence,min,fmin\n";
    for (const SweepRow& row : result.rows) {
        out += format_number(row.param);
        out += ',';
        out += format_number(row.c.c1);
        out += ',';
        out += format_number(row.c.c2);
        out += ',';
        out += format_number(row.c.c3);
        out += ',';
        out += format_number(row.concurrence);
        out += ',';
        out += format_number(row.min);
        out += ',';
        out += format_number(row.fmin);
        out += '\n';
    }
    return out;
}

nlohmann::json sweep_rows_json(const SweepResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : result.rows) {
        rows.push_back({{"param", row.param},
                        {"c1", row.c.c1},
                        {"c2", row.c.c2},
                        {"c3", row.c.c3},
                        {"concurrence", row.concurrence},
                        {"min", row.min},
                        {"fmin", row.fmin}});
    }
    return rows;
}

nlohmann::json channel_spec_json(const ChannelSpec& spec) {
    nlohmann::json j;
    j["family"] = to_string(spec.family);
    if (spec.p) j["p"] = *spec.p;
    if (spec.alpha) j["alpha"] = *spec.alpha;
    if (spec.beta) j["beta"] = *spec.beta;
    if (spec.gamma) j["gamma"] = *spec.gamma;
    if (spec.gamma_rate) j["gamma_rate"] = *spec.gamma_rate;
    if (spec.equilibrium_p) j["equilibrium_p"] = *spec.equilibrium_p;
    return j;
}

ChannelSpec channel_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw ValidationError("channel record needs a \"family\" field");
    ChannelSpec spec;
    spec.family = channel_family_from_string(j.at("family").get<std::string>());
    const auto pick = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key)) return std::nullopt;
        if (!j.at(key).is_number()) throw ValidationError(std::string("channel field \"") + key + "\" must be a number");
        return j.at(key).get<double>();
    };
    spec.p = pick("p");
    spec.alpha = pick("alpha");
    spec.beta = pick("beta");
    spec.gamma = pick("gamma");
    spec.gamma_rate = pick("gamma_rate");
    spec.equilibrium_p = pick("equilibrium_p");
    return spec;
}

nlohmann::json critical_points_json(const std::vector<CriticalPoint>& points) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CriticalPoint& cp : points) {
        nlohmann::json j{{"kind", to_string(cp.kind)},
                         {"measure", to_string(cp.measure)},
                         {"location", cp.location},
                         {"bracket", {cp.bracket.first, cp.bracket.second}}};
        if (cp.kind == CriticalPoint::Kind::DarkPoint) j["revival"] = cp.revival;
        arr.push_back(std::move(j));
    }
    return arr;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        throw IoError("failed to move output into place at " + target.string() + ": " + ec.message());
    }
}

} // namespace qcorr
