#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tokensim {

// Base of every error raised by the library. kind() is a stable identifier
// used for the CLI's machine-readable error output.
class SimError : public std::runtime_error {
public:
    SimError(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define TOKENSIM_DEFINE_ERROR(Name)                                         \
    class Name : public SimError {                                          \
    public:                                                                 \
        explicit Name(const std::string& message) : SimError(#Name, message) {} \
    }

TOKENSIM_DEFINE_ERROR(DegenerateState);
TOKENSIM_DEFINE_ERROR(NonFiniteValue);
TOKENSIM_DEFINE_ERROR(InvalidMean);
TOKENSIM_DEFINE_ERROR(NoTransactedService);
TOKENSIM_DEFINE_ERROR(DegenerateBaseline);
TOKENSIM_DEFINE_ERROR(InsufficientData);
TOKENSIM_DEFINE_ERROR(ShapeMismatch);
TOKENSIM_DEFINE_ERROR(InvalidArgument);
TOKENSIM_DEFINE_ERROR(ParseError);
TOKENSIM_DEFINE_ERROR(ValidationError);
TOKENSIM_DEFINE_ERROR(SchemaMismatch);
TOKENSIM_DEFINE_ERROR(IoError);

#undef TOKENSIM_DEFINE_ERROR

// A step failure inside an ensemble, annotated with where it happened.
class RunFailed : public SimError {
public:
    RunFailed(std::size_t run_index, std::int64_t t, const SimError& cause)
        : SimError("RunFailed", "run " + std::to_string(run_index) + ", t=" +
                                    std::to_string(t) + ": " + cause.kind() +
                                    ": " + cause.what()),
          run_index_(run_index),
          t_(t),
          cause_kind_(cause.kind()) {}

    std::size_t run_index() const noexcept { return run_index_; }
    std::int64_t t() const noexcept { return t_; }
    const std::string& cause_kind() const noexcept { return cause_kind_; }

private:
    std::size_t run_index_;
    std::int64_t t_;
    std::string cause_kind_;
};

}  // namespace tokensim
