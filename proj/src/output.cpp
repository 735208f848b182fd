#include "mldiff/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace mldiff {

std::string format_number(double x) {
    char shortest[64];
    const auto result = std::to_chars(shortest, shortest + sizeof(shortest), x);
    *result.ptr = '\0';
    // count significant digits of the shortest representation
    int digits = 0;
    for (const char* c = shortest; *c && *c != 'e' && *c != 'E'; ++c)
        if (*c >= '0' && *c <= '9') ++digits;
    if (digits <= 12) return shortest;
    char capped[64];
    std::snprintf(capped, sizeof(capped), "%.12g", x);
    return capped;
}

void write_solution_csv(std::ostream& out, const Mesh& mesh, const std::vector<double>& full) {
    out << "layer,j,x,u\n";
    for (std::size_t i = 0; i < mesh.layer_count; ++i)
        for (std::size_t j = 0; j <= mesh.per_layer; ++j)
            out << i + 1 << ',' << j << ',' << format_number(mesh.x(i, j)) << ','
                << format_number(full[mesh.flat(i, j)]) << '\n';
}

nlohmann::json stability_report_json(const StabilityReport& report) {
    nlohmann::json bounds = nlohmann::json::array();
    for (const BoundEntry& entry : report.table.entries) {
        bounds.push_back({{"label", entry.label},
                          {"tau_max", entry.tau_max},
                          {"additional_restriction", entry.additional_restriction}});
    }
    nlohmann::json j{
        {"tau_max_table", report.table.tau_max},
        {"binding_constraint", report.table.entries[report.table.binding].label},
        {"tau_max_gershgorin", report.gershgorin.tau_max},
        {"gershgorin_binding_row", report.gershgorin.binding_row},
        {"tau_max_exact_forward_euler", report.tau_max_exact},
        {"bounds", bounds},
        {"lambda_min", report.spectrum.front()},
        {"lambda_max", report.spectrum.back()},
    };
    if (report.tau && report.verdict) {
        j["tau"] = *report.tau;
        j["rho"] = {{"forward-euler", report.verdict->rho_forward},
                    {"backward-euler", report.verdict->rho_backward},
                    {"crank-nicolson", report.verdict->rho_crank}};
        j["stable"] = {{"forward-euler", report.verdict->stable_forward},
                       {"backward-euler", report.verdict->stable_backward},
                       {"crank-nicolson", report.verdict->stable_crank}};
    }
    return j;
}

namespace {

std::string sig6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

} // namespace

std::string stability_table_text(const StabilityReport& report) {
    std::ostringstream out;
    out << "forward Euler step bounds\n";
    std::size_t width = 0;
    for (const BoundEntry& entry : report.table.entries)
        width = std::max(width, entry.label.size());
    for (std::size_t k = 0; k < report.table.entries.size(); ++k) {
        const BoundEntry& entry = report.table.entries[k];
        out << "  " << std::left << std::setw(static_cast<int>(width)) << entry.label
            << "  tau <= " << sig6(entry.tau_max);
        if (!entry.additional_restriction) out << "  (no additional restriction)";
        if (k == report.table.binding) out << "  [binding]";
        out << '\n';
    }
    out << "  tau_max (table)      = " << sig6(report.table.tau_max) << '\n';
    out << "  tau_max (Gershgorin) = " << sig6(report.gershgorin.tau_max) << '\n';
    out << "  tau_max (exact)      = " << sig6(report.tau_max_exact) << '\n';
    if (report.tau && report.verdict) {
        const SpectralVerdict& v = *report.verdict;
        out << "at tau = " << sig6(*report.tau) << ":\n";
        out << "  rho(forward Euler)  = " << sig6(v.rho_forward) << "  "
            << (v.stable_forward ? "stable" : "unstable") << '\n';
        out << "  rho(backward Euler) = " << sig6(v.rho_backward) << "  "
            << (v.stable_backward ? "stable" : "unstable") << '\n';
        out << "  rho(Crank-Nicolson) = " << sig6(v.rho_crank) << "  "
            << (v.stable_crank ? "stable" : "unstable") << '\n';
    }
    return out.str();
}

void write_convergence_csv(std::ostream& out, const StudyResults& results) {
    out << "h";
    for (const auto& [scheme, records] : results)
        out << ',' << scheme_name(scheme) << "_error," << scheme_name(scheme) << "_ratio";
    out << '\n';
    if (results.empty()) return;
    const std::size_t rows = results.front().second.size();
    for (std::size_t r = 0; r < rows; ++r) {
        out << format_number(results.front().second[r].h);
        for (const auto& [scheme, records] : results) {
            out << ',' << format_number(records[r].error) << ',';
            if (records[r].ratio) out << format_number(*records[r].ratio);
        }
        out << '\n';
    }
}

std::string convergence_table_text(const StudyResults& results) {
    std::ostringstream out;
    out << std::left << std::setw(14) << "h";
    for (const auto& [scheme, records] : results)
        out << std::setw(22) << (std::string(scheme_name(scheme)) + " error") << std::setw(8)
            << "ratio";
    out << '\n';
    if (results.empty()) return out.str();
    const std::size_t rows = results.front().second.size();
    for (std::size_t r = 0; r < rows; ++r) {
        char hbuf[32];
        std::snprintf(hbuf, sizeof(hbuf), "%-14g", results.front().second[r].h);
        out << hbuf;
        for (const auto& [scheme, records] : results) {
            char ebuf[32];
            std::snprintf(ebuf, sizeof(ebuf), "%-22.3e", records[r].error);
            out << ebuf;
            if (records[r].ratio) {
                char rbuf[16];
                std::snprintf(rbuf, sizeof(rbuf), "%-8.2f", *records[r].ratio);
                out << rbuf;
            } else {
                out << std::setw(8) << "-";
            }
        }
        out << '\n';
    }
    return out.str();
}

} // namespace mldiff
