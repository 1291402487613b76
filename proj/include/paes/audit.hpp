#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paes/published_tables.hpp"
#include "paes/rational.hpp"

// Regeneration of Tables 1-4 from the cost model and a cell-by-cell comparison
// with the printed values.
namespace paes::report {

enum class Status { exact, rounding, errata };

std::string_view to_string(Status status);

struct Coordinate {
    TableId table = TableId::t1a;
    std::string row;    // "L=25", "M_r=2"
    std::string column; // sequential, time, speedup, efficiency, improvement

    std::string str() const;
    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

struct ComparisonCell {
    Coordinate coord;
    Printed printed;
    // Same unit as the printed value: T_XOR, a plain ratio, or percent.
    Rational model;
    // Time cells only: completion time of the same run on the 11-stage line.
    std::optional<Rational> flowshop;
    // Tables 2 and 4 ratio cells only: the metric against the model's own
    // M_r = 1 time instead of the printed one.
    std::optional<Rational> model_baseline;
    Status status = Status::exact;
    std::string errata_id;
    std::string note;
};

// Regenerated for display next to the printed value but not classified.
struct RegeneratedCell {
    Coordinate coord;
    Printed printed;
    Rational model;
};

struct ErrataEntry {
    std::string id;
    Coordinate coord;
    std::string note;
};

// The cells that cannot be reproduced from the model's stage times.
const std::vector<ErrataEntry>& errata_catalog();

struct AuditReport {
    std::vector<ComparisonCell> cells;
    std::vector<RegeneratedCell> unaudited;
    std::vector<std::string> cross_table_notes;
    // ERRATA cells missing from the catalog.
    std::vector<Coordinate> undocumented;
    // Catalog entries whose cell now agrees.
    std::vector<Coordinate> vanished;

    bool clean() const { return undocumented.empty() && vanished.empty(); }
    std::size_t count(Status status) const;
    const ComparisonCell* find(const Coordinate& coord) const;
};

// Times compare exactly.
Status classify_time(const Printed& printed, const Rational& model);
// Speedup / efficiency: EXACT when the model rounds to the printed digits,
// ROUNDING within 5% of the model value.
Status classify_ratio(const Printed& printed, const Rational& model);
// Percentages: EXACT when the model rounds to the printed digits, ROUNDING
// within half a percentage point.
Status classify_percent(const Printed& printed, const Rational& model);

// Tables 1(a)/3(a) measure improvement against L times the single-block
// sequential time. Tables 2/4 measure against the table's printed M_r = 1 time,
// and the M_r = 1 row against itself.
AuditReport audit_tables();

void write_audit_markdown(std::ostream& os, const AuditReport& report);
void write_audit_csv(std::ostream& os, const AuditReport& report);
void write_audit_json(std::ostream& os, const AuditReport& report);

} // namespace paes::report
