#pragma once

#include <stdexcept>
#include <string>

namespace mincw {

enum class Errc {
    not_a_prime_power,
    unsupported,
    division_by_zero,
    dimension_mismatch,
    zero_vector,
    overflow,
    rank_deficient,
    zero_column,
    not_a_codeword,
    too_large,
    guard_exceeded,
    out_of_range,
    degenerate_complement,
    invalid_input,
};

/// Library error with a machine-parseable code name (used by CLI exit mapping).
class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& msg) : std::runtime_error(msg), c_(c) {}
    Errc code() const noexcept { return c_; }

    const char* code_name() const noexcept {
        switch (c_) {
            case Errc::not_a_prime_power: return "NotAPrimePower";
            case Errc::unsupported: return "Unsupported";
            case Errc::division_by_zero: return "DivisionByZero";
            case Errc::dimension_mismatch: return "DimensionMismatch";
            case Errc::zero_vector: return "ZeroVector";
            case Errc::overflow: return "Overflow";
            case Errc::rank_deficient: return "RankDeficient";
            case Errc::zero_column: return "ZeroColumn";
            case Errc::not_a_codeword: return "NotACodeword";
            case Errc::too_large: return "TooLarge";
            case Errc::guard_exceeded: return "GuardExceeded";
            case Errc::out_of_range: return "OutOfRange";
            case Errc::degenerate_complement: return "DegenerateComplement";
            case Errc::invalid_input: return "InvalidInput";
        }
        return "Unknown";
    }

private:
    Errc c_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace mincw
