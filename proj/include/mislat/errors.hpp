#pragma once

#include <stdexcept>
#include <string>

namespace mislat {

// Base for all toolchain errors. `code()` is the stable machine-readable
// name used by the CLI when reporting failures.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define MISLAT_DEFINE_ERROR(NAME)                                  \
    class NAME : public Error {                                    \
    public:                                                        \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
    }

MISLAT_DEFINE_ERROR(DegenerateDrawing);
MISLAT_DEFINE_ERROR(GadgetOverlap);
MISLAT_DEFINE_ERROR(ThresholdViolation);
MISLAT_DEFINE_ERROR(SignViolation);
MISLAT_DEFINE_ERROR(GaugeViolation);
MISLAT_DEFINE_ERROR(TreeViolation);
MISLAT_DEFINE_ERROR(InterClusterSignConflict);
MISLAT_DEFINE_ERROR(EmbeddingOverflow);
MISLAT_DEFINE_ERROR(AlreadyDeleted);
MISLAT_DEFINE_ERROR(PatternMismatch);
MISLAT_DEFINE_ERROR(PatchTooLarge);
MISLAT_DEFINE_ERROR(RoutingFailed);
MISLAT_DEFINE_ERROR(BudgetExceeded);
MISLAT_DEFINE_ERROR(ConvergenceFailure);
MISLAT_DEFINE_ERROR(StepTooLarge);
MISLAT_DEFINE_ERROR(MissingArtifact);
MISLAT_DEFINE_ERROR(ConfigError);
MISLAT_DEFINE_ERROR(InvalidGraph);

#undef MISLAT_DEFINE_ERROR

}  // namespace mislat
