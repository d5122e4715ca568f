#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccap {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A channel row does not sum to 1 within tolerance.
struct NonStochasticRow final : Error {
    NonStochasticRow(std::string channel_, std::size_t row_, double sum_)
        : Error("channel '" + channel_ + "' row " + std::to_string(row_) +
                " sums to " + std::to_string(sum_) + ", expected 1"),
          channel(std::move(channel_)), row(row_), sum(sum_) {}
    std::string channel;
    std::size_t row;
    double sum;
};

struct MismatchedInputAlphabet final : Error {
    explicit MismatchedInputAlphabet(const std::string& what) : Error(what) {}
};

// Capacity at or below the usable floor; 1/C would blow up.
struct DegenerateChannel final : Error {
    DegenerateChannel(std::size_t state_, double capacity_)
        : Error("channel " + std::to_string(state_ + 1) + " capacity " +
                std::to_string(capacity_) + " is below the usable floor"),
          state(state_), capacity(capacity_) {}
    std::size_t state;
    double capacity;
};

struct UnknownFamily final : Error {
    explicit UnknownFamily(const std::string& name)
        : Error("unknown builtin family '" + name + "'") {}
};

struct ParameterOutOfRange final : Error {
    explicit ParameterOutOfRange(const std::string& what) : Error(what) {}
};

struct NoConvergence final : Error {
    explicit NoConvergence(int iters)
        : Error("capacity iteration did not close its bracket within " +
                std::to_string(iters) + " iterations"),
          iterations(iters) {}
    int iterations;
};

struct LengthMismatch final : Error {
    explicit LengthMismatch(const std::string& what) : Error(what) {}
};

struct WrongFamilySize final : Error {
    explicit WrongFamilySize(const std::string& what) : Error(what) {}
};

struct NonpositiveRate final : Error {
    explicit NonpositiveRate(const std::string& what) : Error(what) {}
};

struct ResourceLimit final : Error {
    explicit ResourceLimit(const std::string& what) : Error(what) {}
};

struct BisectionFailed final : Error {
    explicit BisectionFailed(const std::string& what) : Error(what) {}
};

struct DegenerateRegret final : Error {
    explicit DegenerateRegret(const std::string& what) : Error(what) {}
};

struct ParseError final : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace ccap
