#include "ccap/family.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ccap/capacity.hpp"
#include "ccap/errors.hpp"

namespace ccap {

double ChannelFamily::max_capacity() const {
    double m = 0.0;
    for (double c : capacities) m = std::max(m, c);
    return m;
}

ChannelFamily validate_family(const RawFamily& raw, double ba_tol, int ba_iters) {
    if (raw.channels.empty())
        throw MismatchedInputAlphabet("family needs at least one channel");
    if (raw.num_inputs < 2)
        throw MismatchedInputAlphabet("input alphabet needs at least 2 symbols");

    ChannelFamily fam;
    for (const auto& rc : raw.channels) {
        Channel ch;
        ch.name = rc.name;
        ch.num_inputs = raw.num_inputs;
        ch.num_outputs = rc.num_outputs;
        ch.matrix = rc.matrix;
        if (ch.matrix.size() != raw.num_inputs)
            throw MismatchedInputAlphabet("channel '" + ch.name + "' input alphabet mismatch");
        check_channel(ch);
        fam.channels.push_back(std::move(ch));
    }

    for (std::size_t s = 0; s < fam.channels.size(); ++s) {
        const CapacityResult cap = capacity_ba(fam.channels[s], ba_tol, ba_iters);
        if (cap.capacity <= kCapacityFloor) throw DegenerateChannel(s, cap.capacity);
        fam.capacities.push_back(cap.capacity);
        fam.t_star.push_back(1.0 / cap.capacity);
        fam.cap_dists.push_back(cap.input);
    }
    return fam;
}

namespace {

double require_param(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw ParameterOutOfRange("missing parameter '" + key + "'");
    return it->second;
}

double open_unit_param(const std::map<std::string, double>& params, const std::string& key) {
    const double v = require_param(params, key);
    if (!(v > 0.0 && v < 1.0))
        throw ParameterOutOfRange("parameter '" + key + "' must lie in (0,1), got " +
                                  std::to_string(v));
    return v;
}

RawFamily make_zs(double z, double s) {
    RawFamily raw;
    raw.num_inputs = 2;
    raw.channels.push_back({"Z", 2, {{1.0, 0.0}, {z, 1.0 - z}}});
    raw.channels.push_back({"S", 2, {{1.0 - s, s}, {0.0, 1.0}}});
    return raw;
}

RawFamily make_bsc_pair(double q1, double q2) {
    RawFamily raw;
    raw.num_inputs = 2;
    raw.channels.push_back({"BSC1", 2, {{1.0 - q1, q1}, {q1, 1.0 - q1}}});
    raw.channels.push_back({"BSC2", 2, {{1.0 - q2, q2}, {q2, 1.0 - q2}}});
    return raw;
}

// Two languages of w1 and w2 symbols. Channel i passes its own language
// noiselessly; wrong-language symbols come out uniform over the other block,
// which makes the noise block act as a single extra clean super-symbol and
// gives C_i = log2(w_i + 1).
RawFamily make_bilingual(std::size_t w1, std::size_t w2) {
    const std::size_t n = w1 + w2;
    RawFamily raw;
    raw.num_inputs = n;

    RawChannel ch1{"lang1", n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
    for (std::size_t x = 0; x < n; ++x) {
        if (x < w1) {
            ch1.matrix[x][x] = 1.0;
        } else {
            for (std::size_t y = w1; y < n; ++y) ch1.matrix[x][y] = 1.0 / double(w2);
        }
    }

    RawChannel ch2{"lang2", n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
    for (std::size_t x = 0; x < n; ++x) {
        if (x >= w1) {
            ch2.matrix[x][x] = 1.0;
        } else {
            for (std::size_t y = 0; y < w1; ++y) ch2.matrix[x][y] = 1.0 / double(w1);
        }
    }

    raw.channels.push_back(std::move(ch1));
    raw.channels.push_back(std::move(ch2));
    return raw;
}

// Four inputs, two per language. Wrong-language symbols come out uniform over
// the receiving channel's own clean pair, so they carry no information at all
// and the capacities are exactly (eps, 1). Channel 1 is additionally erased
// with probability 1-eps (output '?' is index 4, |Y1| = 5); outputs 3,4 of
// channel 1 and 1,2 of channel 2 never occur, which is what lets the decoder
// discard the wrong channel hypothesis outright.
RawFamily make_bilingual_erasure(double eps) {
    RawFamily raw;
    raw.num_inputs = 4;

    RawChannel ch1{"erased", 5, std::vector<std::vector<double>>(4, std::vector<double>(5, 0.0))};
    for (std::size_t x = 0; x < 4; ++x) {
        if (x < 2) {
            ch1.matrix[x][x] = eps;
        } else {
            ch1.matrix[x][0] = eps / 2.0;
            ch1.matrix[x][1] = eps / 2.0;
        }
        ch1.matrix[x][4] = 1.0 - eps;
    }

    RawChannel ch2{"clean", 4, std::vector<std::vector<double>>(4, std::vector<double>(4, 0.0))};
    for (std::size_t x = 0; x < 4; ++x) {
        if (x >= 2) {
            ch2.matrix[x][x] = 1.0;
        } else {
            ch2.matrix[x][2] = 0.5;
            ch2.matrix[x][3] = 0.5;
        }
    }

    raw.channels.push_back(std::move(ch1));
    raw.channels.push_back(std::move(ch2));
    return raw;
}

}  // namespace

RawFamily builtin_family_raw(const std::string& name, const std::map<std::string, double>& params) {
    if (name == "zs") {
        return make_zs(open_unit_param(params, "z"), open_unit_param(params, "s"));
    }
    if (name == "bilingual") {
        const double w1 = require_param(params, "w1");
        const double w2 = require_param(params, "w2");
        if (w1 < 1.0 || w2 < 1.0 || w1 != std::floor(w1) || w2 != std::floor(w2))
            throw ParameterOutOfRange("bilingual block sizes must be positive integers");
        return make_bilingual(std::size_t(w1), std::size_t(w2));
    }
    if (name == "bilingual_erasure") {
        return make_bilingual_erasure(open_unit_param(params, "eps"));
    }
    if (name == "bsc_pair") {
        return make_bsc_pair(open_unit_param(params, "q1"), open_unit_param(params, "q2"));
    }
    throw UnknownFamily(name);
}

ChannelFamily builtin_family(const std::string& name, const std::map<std::string, double>& params) {
    return validate_family(builtin_family_raw(name, params));
}

ChannelFamily family_from_uri(const std::string& uri) {
    const std::string prefix = "builtin:";
    if (uri.rfind(prefix, 0) != 0) return load_family_file(uri);

    std::string rest = uri.substr(prefix.size());
    std::string name = rest;
    std::map<std::string, double> params;
    const auto qpos = rest.find('?');
    if (qpos != std::string::npos) {
        name = rest.substr(0, qpos);
        std::stringstream ss(rest.substr(qpos + 1));
        std::string kv;
        while (std::getline(ss, kv, '&')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ParseError("bad family parameter '" + kv + "'");
            try {
                params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw ParseError("bad numeric value in '" + kv + "'");
            }
        }
    }
    return builtin_family(name, params);
}

RawFamily parse_family_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("family JSON: ") + e.what());
    }
    RawFamily raw;
    try {
        raw.num_inputs = doc.at("input_alphabet").get<std::size_t>();
        for (const auto& jch : doc.at("channels")) {
            RawChannel rc;
            rc.name = jch.value("name", "channel" + std::to_string(raw.channels.size() + 1));
            rc.num_outputs = jch.at("outputs").get<std::size_t>();
            rc.matrix = jch.at("matrix").get<std::vector<std::vector<double>>>();
            raw.channels.push_back(std::move(rc));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("family JSON: ") + e.what());
    }
    return raw;
}

ChannelFamily load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open family file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return validate_family(parse_family_json(buf.str()));
}

std::string family_to_json(const ChannelFamily& fam) {
    nlohmann::json doc;
    doc["input_alphabet"] = fam.num_inputs();
    auto& jchannels = doc["channels"] = nlohmann::json::array();
    for (std::size_t s = 0; s < fam.size(); ++s) {
        const Channel& ch = fam.channels[s];
        nlohmann::json jch;
        jch["name"] = ch.name;
        jch["outputs"] = ch.num_outputs;
        jch["matrix"] = ch.matrix;
        jch["capacity_bits"] = fam.capacities[s];
        jchannels.push_back(std::move(jch));
    }
    return doc.dump(2);
}

double second_block_mass(const InputDist& p, std::size_t w1) {
    double m = 0.0;
    for (std::size_t x = w1; x < p.size(); ++x) m += p[x];
    return m;
}

}  // namespace ccap
