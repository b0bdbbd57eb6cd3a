#ifndef KEPOLY_REPORT_HPP
#define KEPOLY_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kepoly/config.hpp"
#include "kepoly/criterion.hpp"
#include "kepoly/dhmeasure.hpp"

namespace kepoly::cli {

/// One row of the verify table.
struct ResidualRow {
    std::string name;
    double value = 0;
    double tolerance = 0;
    bool converged = true;
    bool pass = false;
};

nlohmann::ordered_json rational_json(const Rat& q);
nlohmann::ordered_json vector_json(const QVec& v);

/// Full report for check/rlb/barycenter/verify. Timing is deliberately kept
/// out of the JSON so reports are byte-identical across runs; the
/// human-readable rendering prints it separately.
struct Report {
    std::string subcommand;
    nlohmann::ordered_json input;
    roots::RootSystem rs;
    dh::DHResult dh;
    std::optional<criterion::KEVerdict> ke;
    std::optional<criterion::RLBResult> rlb;
    std::vector<ResidualRow> residuals;

    nlohmann::ordered_json to_json() const;
    std::string to_text(double elapsed_ms) const;
};

std::vector<ResidualRow> run_verify_battery(const roots::RootSystem& rs,
                                            const geom::RationalPolytope& pplus,
                                            const geom::RationalPolytope& p_full,
                                            analytic::QuadratureSpec quad);

std::string figure_csv(const roots::RootSystem& rs, const geom::RationalPolytope& pplus,
                       const dh::DHResult& dhres, const std::optional<criterion::RLBResult>& rlb);
std::string figure_svg(const roots::RootSystem& rs, const geom::RationalPolytope& pplus,
                       const dh::DHResult& dhres, const std::optional<criterion::RLBResult>& rlb);

/// CLI entry point; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace kepoly::cli

#endif
