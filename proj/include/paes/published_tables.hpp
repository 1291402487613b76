#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paes/cost_model.hpp"
#include "paes/rational.hpp"

// Tables 1-4 as printed, kept as text so the printed precision survives.
namespace paes::report {

enum class TableId { t1a, t1b, t2a, t2b, t2c, t3a, t3b, t4a, t4b, t4c };

// "1(a)", "2(c)", ...
std::string_view to_string(TableId id);

struct Printed {
    std::string text;

    Rational value() const { return Rational::parse(text); }
    // Digits after the decimal point.
    int decimals() const;
};

// Tables 1(a) and 3(a): one row per block count, no intra-stage split.
struct SequentialRow {
    int blocks = 0;
    Printed sequential;
    Printed pipeline;
    Printed improvement; // percent
};

struct SequentialTable {
    TableId id;
    cost::Mode mode;
    std::vector<SequentialRow> rows;
};

// Tables 1(b) and 3(b): improvement percent per (M_r, L).
struct GridRow {
    int pe = 0;
    std::array<Printed, 3> improvement;
};

struct GridTable {
    TableId id;
    cost::Mode mode;
    std::array<int, 3> blocks{10, 25, 40};
    std::vector<GridRow> rows;
};

// Tables 2 and 4: one block count, one row per M_r.
struct ParallelRow {
    int pe = 0;
    Printed time;
    Printed speedup;
    Printed efficiency;
    std::optional<Printed> improvement; // printed as "-" on the M_r = 1 row
};

struct ParallelTable {
    TableId id;
    cost::Mode mode;
    int blocks = 0;
    std::vector<ParallelRow> rows;
};

struct PublishedTables {
    SequentialTable t1a;
    GridTable t1b;
    std::array<ParallelTable, 3> t2;
    SequentialTable t3a;
    GridTable t3b;
    std::array<ParallelTable, 3> t4;
};

const PublishedTables& published_tables();

} // namespace paes::report
