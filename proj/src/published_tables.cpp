#include "paes/published_tables.hpp"

namespace paes::report {

std::string_view to_string(TableId id) {
    switch (id) {
    case TableId::t1a: return "1(a)";
    case TableId::t1b: return "1(b)";
    case TableId::t2a: return "2(a)";
    case TableId::t2b: return "2(b)";
    case TableId::t2c: return "2(c)";
    case TableId::t3a: return "3(a)";
    case TableId::t3b: return "3(b)";
    case TableId::t4a: return "4(a)";
    case TableId::t4b: return "4(b)";
    case TableId::t4c: return "4(c)";
    }
    return "?";
}

int Printed::decimals() const {
    const auto dot = text.find('.');
    return dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
}

namespace {

using cost::Mode;

PublishedTables build() {
    PublishedTables t;

    t.t1a = {TableId::t1a,
             Mode::encrypt,
             {
                 {10, {"8800"}, {"1024"}, {"88"}},
                 {25, {"22000"}, {"1262.5"}, {"94.2"}},
                 {40, {"35200"}, {"1556"}, {"95.5"}},
             }};

    t.t1b = {TableId::t1b,
             Mode::encrypt,
             {10, 25, 40},
             {
                 {2, {{{"92"}, {"96"}, {"97"}}}},
                 {4, {{{"95"}, {"97"}, {"98.5"}}}},
                 {8, {{{"97.3"}, {"98.8"}, {"98.9"}}}},
             }};

    t.t2[0] = {TableId::t2a,
               Mode::encrypt,
               10,
               {
                   {1, {"1022"}, {"1"}, {"1"}, std::nullopt},
                   {2, {"696"}, {"1.47"}, {"0.73"}, Printed{"32"}},
                   {4, {"388"}, {"2.63"}, {"0.65"}, Printed{"62"}},
                   {8, {"234"}, {"4.34"}, {"0.53"}, Printed{"77"}},
               }};
    t.t2[1] = {TableId::t2b,
               Mode::encrypt,
               25,
               {
                   {1, {"1264"}, {"1"}, {"1"}, std::nullopt},
                   {2, {"815"}, {"1.55"}, {"0.77"}, Printed{"35"}},
                   {4, {"447.5"}, {"2.88"}, {"0.705"}, Printed{"65"}},
                   {8, {"264"}, {"4.78"}, {"0.59"}, Printed{"79"}},
               }};
    t.t2[2] = {TableId::t2c,
               Mode::encrypt,
               40,
               {
                   {1, {"1556"}, {"1"}, {"1"}, std::nullopt},
                   {2, {"936"}, {"1.66"}, {"0.89"}, Printed{"39.8"}},
                   {4, {"508"}, {"3.06"}, {"0.76"}, Printed{"67.2"}},
                   {8, {"292"}, {"5.3"}, {"0.66"}, Printed{"81.2"}},
               }};

    t.t3a = {TableId::t3a,
             Mode::decrypt,
             {
                 {10, {"19840"}, {"1984"}, {"90"}},
                 {25, {"49600"}, {"2224"}, {"95.5"}},
                 {40, {"79360"}, {"2464"}, {"96.8"}},
             }};

    t.t3b = {TableId::t3b,
             Mode::decrypt,
             {10, 25, 40},
             {
                 {2, {{{"93.7"}, {"97.2"}, {"98"}}}},
                 {4, {{{"95.9"}, {"98.2"}, {"98.8"}}}},
                 {8, {{{"97.7"}, {"98.9"}, {"99"}}}},
             }};

    t.t4[0] = {TableId::t4a,
               Mode::decrypt,
               10,
               {
                   {1, {"1984"}, {"1"}, {"1"}, std::nullopt},
                   {2, {"1248"}, {"1.59"}, {"0.79"}, Printed{"37.1"}},
                   {4, {"804"}, {"2.46"}, {"0.61"}, Printed{"59.5"}},
                   {8, {"444"}, {"4.46"}, {"0.56"}, Printed{"77.6"}},
                   {16, {"262"}, {"7.57"}, {"0.47"}, Printed{"86.7"}},
               }};
    t.t4[1] = {TableId::t4b,
               Mode::decrypt,
               25,
               {
                   {1, {"2224"}, {"1"}, {"1"}, std::nullopt},
                   {2, {"1368"}, {"1.62"}, {"0.81"}, Printed{"38.5"}},
                   {4, {"864"}, {"2.57"}, {"0.64"}, Printed{"61.2"}},
                   {8, {"474"}, {"4.71"}, {"0.59"}, Printed{"78.7"}},
                   {16, {"277"}, {"8.02"}, {"0.50"}, Printed{"87.5"}},
               }};
    t.t4[2] = {TableId::t4c,
               Mode::decrypt,
               40,
               {
                   {1, {"2464"}, {"1"}, {"1"}, std::nullopt},
                   {2, {"1488"}, {"1.66"}, {"0.81"}, Printed{"39.6"}},
                   {4, {"924"}, {"2.67"}, {"0.67"}, Printed{"62.5"}},
                   {8, {"504"}, {"4.88"}, {"0.61"}, Printed{"79.5"}},
                   {16, {"292"}, {"8.43"}, {"0.51"}, Printed{"88.1"}},
               }};
    return t;
}

} // namespace

const PublishedTables& published_tables() {
    static const PublishedTables tables = build();
    return tables;
}

} // namespace paes::report
