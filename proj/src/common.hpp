#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qc {

using cxd = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
    invalid_input,
    invalid_state,
    convergence,
    capacity,
    degenerate,
    io,
    config,
    internal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::invalid_input: return "invalid_input";
        case ErrorCode::invalid_state: return "invalid_state";
        case ErrorCode::convergence: return "convergence";
        case ErrorCode::capacity: return "capacity";
        case ErrorCode::degenerate: return "degenerate";
        case ErrorCode::io: return "io";
        case ErrorCode::config: return "config";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

// Shannon entropy in bits of a nonnegative weight list; zero weights contribute zero.
template <typename Seq>
double entropy_bits(const Seq& p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) h -= x * std::log2(x);
    }
    return h;
}

// Deterministic per-index seed stream (splitmix64).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Platform-independent uniform stream; avoids the unspecified algorithms
// behind the std distributions so seeded results never drift.
class SeedStream {
  public:
    explicit SeedStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() {  // in [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double symmetric() { return 2.0 * uniform() - 1.0; }  // in [-1, 1)

  private:
    std::uint64_t state_;
};

}  // namespace qc
