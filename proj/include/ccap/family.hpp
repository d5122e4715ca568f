#pragma once
#include <map>
#include <string>
#include <vector>

#include "ccap/channel.hpp"

namespace ccap {

// Families containing a channel with capacity at or below this floor are
// rejected: the clairvoyant time 1/C_s would blow up.
inline constexpr double kCapacityFloor = 1e-6;

// Unvalidated family description, as parsed from a file or a builder.
struct RawChannel {
    std::string name;
    std::size_t num_outputs = 0;
    std::vector<std::vector<double>> matrix;
};

struct RawFamily {
    std::size_t num_inputs = 0;
    std::vector<RawChannel> channels;
};

// Validated family: shared input alphabet, per-channel capacities C_s,
// clairvoyant times T*_s = 1/C_s and capacity-achieving inputs. Immutable
// after construction; all operations on it are pure.
struct ChannelFamily {
    std::vector<Channel> channels;
    std::vector<double> capacities;     // bits/symbol
    std::vector<double> t_star;         // 1/C_s
    std::vector<InputDist> cap_dists;   // capacity-achieving distributions

    std::size_t size() const { return channels.size(); }
    std::size_t num_inputs() const { return channels.empty() ? 0 : channels[0].num_inputs; }
    double max_capacity() const;
};

// Checks shapes and row sums, then fills capacities/t_star via capacity_ba.
// Throws NonStochasticRow, MismatchedInputAlphabet or DegenerateChannel.
ChannelFamily validate_family(const RawFamily& raw, double ba_tol = 1e-9, int ba_iters = 10000);

// Builtin families:
//   zs(z, s)                  Z- and S-channel pair, crossover z resp. s
//   bilingual(w1, w2)         two one-language-clean channels on w1+w2 symbols
//   bilingual_erasure(eps)    4-input variant; channel 1 output erased w.p. 1-eps
//   bsc_pair(q1, q2)          two binary symmetric channels
RawFamily builtin_family_raw(const std::string& name, const std::map<std::string, double>& params);
ChannelFamily builtin_family(const std::string& name, const std::map<std::string, double>& params);

// "builtin:<name>?k1=v1&k2=v2" or a path to a family JSON file.
ChannelFamily family_from_uri(const std::string& uri);

// Family JSON document:
//   {"input_alphabet": n, "channels": [{"name": str, "outputs": m, "matrix": [[..]..]}]}
RawFamily parse_family_json(const std::string& text);
ChannelFamily load_family_file(const std::string& path);
std::string family_to_json(const ChannelFamily& fam);

// Mass on the second-language block of a bilingual-style input distribution
// (the parameter the achievable-rate curves are plotted against).
double second_block_mass(const InputDist& p, std::size_t w1);

}  // namespace ccap
