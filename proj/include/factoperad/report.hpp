#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factoperad/error.hpp"

namespace factoperad {

/// One failed identity. `embedding` and `braid` are compact JSON texts.
struct Violation {
    Violation() = default;
    Violation(std::string axiom_, int degree_, std::string embedding_, std::string braid_, std::string message_)
        : axiom(std::move(axiom_)), degree(degree_), embedding(std::move(embedding_)), braid(std::move(braid_)),
          message(std::move(message_))
    {
    }

    std::string axiom;  // "a", "b", "c", "f0", "morphism", "cocycle", ...
    int degree = 0;
    std::string embedding;
    std::string braid;
    std::string message;
    std::size_t row = 0, col = 0;
    std::string lhs, rhs;
};

struct Verdict {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    explicit operator bool() const { return ok(); }

    const Violation* first() const { return violations.empty() ? nullptr : &violations.front(); }

    bool names(const std::string& axiom) const
    {
        for (const auto& v : violations)
            if (v.axiom == axiom)
                return true;
        return false;
    }

    void append(const Verdict& other)
    {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }
};

/// Thrown when input data fails an axiom that an operation requires.
class AxiomViolation : public Error {
public:
    explicit AxiomViolation(Violation v)
        : Error("axiom (" + v.axiom + ") violated: " + v.message), violation(std::move(v)) {}

    Violation violation;
};

}  // namespace factoperad
