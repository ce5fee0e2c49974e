#pragma once

// Error types shared across the library. Solver-level failures get their own
// classes so the CLI can map each to a distinct exit code.

#include <stdexcept>
#include <string>

namespace qpf {

/// Iterative solver exhausted its iteration budget.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// The requested targets cannot be met by any admissible parameter set.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

/// A root/feature search found nothing inside its scan window.
class search_error : public std::runtime_error {
public:
    explicit search_error(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration ingestion failure, tagged with the failing stage.
class config_error : public std::runtime_error {
public:
    enum class kind { missing_file, parse, validation, unknown_key };

    config_error(kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}

    [[nodiscard]] kind error_kind() const { return kind_; }

private:
    kind kind_;
};

}  // namespace qpf
