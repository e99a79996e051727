#include "waring/reference_tables.hpp"

#include <algorithm>
#include <map>

namespace waring::tables {

namespace {

const std::map<u64, std::vector<u64>>& uncoverable_map() {
    static const std::map<u64, std::vector<u64>> m = {
        {3, {4}},
        {4, {9}},
        {5, {16}},
        {6, {4, 25}},
        {7, {8}},
        {8, {9, 49}},
        {9, {4, 64}},
        {10, {16, 81}},
        {11, {}},
        {12, {4, 9, 25, 121}},
        {13, {27}},
        {14, {8, 169}},
        {15, {4, 16}},
        {16, {9, 49}},
        {17, {256}},
        {18, {4, 25, 64, 289}},
        {19, {}},
        {20, {9, 16, 81, 361}},
        {21, {4, 8, 64}},
        {22, {}},
        {23, {}},
        {24, {4, 9, 25, 49, 121, 529}},
        {25, {16}},
        {26, {27, 625}},
        {27, {4, 64}},
        {28, {8, 9, 169, 729}},
        {29, {}},
        {30, {4, 16, 25, 81, 841}},
        {31, {32, 125}},
        {32, {9, 49, 961}},
        {33, {4, 1024}},
        {34, {256}},
        {35, {8, 16}},
        {36, {4, 9, 25, 64, 121, 289}},
        {37, {}},
    };
    return m;
}

struct GammaRow {
    std::vector<u64> g3, g4, g5, g6;
};

const std::map<u64, GammaRow>& gamma_class_map() {
    static const std::map<u64, GammaRow> m = {
        {4, {{13, 17, 25, 29}, {5}, {}, {}}},
        {5, {{31, 41, 61}, {}, {11}, {}}},
        {6, {{37, 43, 49, 61, 67, 73, 79, 109, 139, 223}, {19, 31}, {}, {7, 13}}},
        {7, {{64, 71, 113, 127}, {29, 43}, {}, {}}},
        {8,
         {{13, 29, 73, 81, 89, 97, 113, 121, 137, 233, 257, 289, 337, 761},
          {5, 25, 41},
          {},
          {}}},
        {9, {{7, 73, 109, 127, 163, 181, 199, 271, 307, 343}, {}, {37}, {}}},
        {10,
         {{71, 101, 121, 131, 151, 181, 191, 211, 241, 251, 271, 281, 311, 331,
           401, 421, 431, 461, 491, 641, 911},
          {41, 61},
          {31},
          {}}},
        {11, {{199, 331, 353, 419, 463, 617}, {89}, {67}, {}}},
        {12,
         {{17, 29, 43, 67, 79, 139, 157, 169, 181, 193, 223, 241, 277, 289, 313,
           337, 349, 361, 373, 397, 409, 421, 433, 457, 541, 577, 625, 661, 673,
           733, 841, 877, 1069, 1453, 1669, 1741},
          {5, 19, 31, 61, 97, 109, 229},
          {73},
          {7, 37, 49}}},
        {13,
         {{131, 157, 313, 443, 521, 547, 599, 677, 859, 911, 937, 1171},
          {},
          {79},
          {53}}},
        {14,
         {{64, 197, 211, 239, 281, 337, 379, 421, 449, 463, 491, 547, 617, 631,
           659, 673, 701, 743, 757, 827, 911, 953, 967, 1009, 1499, 2927},
          {71, 113, 127},
          {},
          {43}}},
        {15,
         {{7, 41, 151, 181, 211, 241, 256, 271, 331, 361, 421, 541, 571, 601,
           631, 661, 691, 751, 811, 961, 991, 1021, 1051, 1171, 1201, 3181},
          {121},
          {11, 61},
          {}}},
        {16,
         {{13, 29, 73, 89, 121, 137, 233, 241, 289, 337, 353, 401, 433, 449,
           529, 577, 593, 625, 641, 673, 761, 769, 881, 929, 977, 1009, 1201,
           1249, 1297, 1409, 1489, 1697, 2017, 2401, 2593},
          {5, 25, 41, 81, 113, 193, 257},
          {},
          {97}}},
        {17,
         {{239, 307, 409, 443, 613, 647, 919, 953, 1021, 1123, 1259, 1327, 1361,
           1531, 1667},
          {137},
          {},
          {103}}},
        {18,
         {{43, 49, 61, 67, 79, 139, 223, 307, 343, 361, 379, 433, 487, 523, 541,
           577, 613, 631, 739, 757, 811, 829, 883, 919, 937, 991, 1009, 1063,
           1117, 1153, 1171, 1279, 1369, 1423, 1459, 1693, 1747, 2089, 2197,
           2251, 2269, 2287, 2503, 2719, 3259, 4519},
          {31, 163, 181, 271, 397},
          {199},
          {7, 13, 109, 127}}},
        {19,
         {{343, 457, 571, 647, 761, 1103, 1217, 1483, 1559, 1597, 1787, 2053,
           2129, 2357, 2927},
          {191, 229, 419},
          {},
          {}}},
        {20,
         {{13, 17, 25, 29, 71, 131, 151, 191, 211, 251, 271, 281, 311, 331, 401,
           421, 431, 461, 491, 541, 601, 641, 661, 701, 761, 821, 841, 881, 911,
           941, 961, 1021, 1061, 1181, 1201, 1301, 1321, 1361, 1381, 1481, 1601,
           1621, 1681, 1721, 1741, 1861, 1901, 2221, 2281, 2381, 2621, 2861},
          {5, 181, 241, 521},
          {31, 101},
          {}}},
        {21,
         {{7, 71, 113, 379, 421, 463, 547, 631, 673, 757, 841, 883, 967, 1009,
           1051, 1093, 1303, 1429, 1471, 1597, 1723, 1849, 2143, 2437, 2521,
           2647, 2689, 2857, 3319, 5167},
          {29, 169, 211, 337},
          {},
          {127}}},
        {22,
         {{243, 353, 397, 529, 617, 661, 683, 727, 859, 881, 947, 991, 1013,
           1123, 1277, 1321, 1409, 1453, 1607, 1783, 1871, 2003, 2069, 2113,
           2179, 2267, 2333, 2377, 2399, 2531, 2663, 2729, 2927, 3037, 3719,
           3851, 3917},
          {199, 331, 419, 463},
          {},
          {}}},
        {23,
         {{461, 599, 691, 829, 967, 1013, 1151, 1289, 1381, 1427, 1657, 1933,
           1979, 2209, 2347, 2393, 2531, 3083, 3313, 4831, 4969, 5659, 8419},
          {277},
          {},
          {}}},
        {24,
         {{29, 43, 67, 79, 81, 89, 113, 137, 139, 157, 181, 223, 233, 257, 277,
           337, 349, 373, 397, 421, 433, 541, 601, 625, 661, 673, 733, 761, 769,
           841, 877, 937, 961, 1009, 1033, 1069, 1129, 1153, 1201, 1249, 1297,
           1321, 1369, 1453, 1489, 1609, 1657, 1669, 1681, 1741, 1753, 1777,
           1801, 1849, 1873, 1993, 2017, 2089, 2113, 2137, 2161, 2281, 2377,
           2401, 2473},
          {5, 19, 31, 41, 61, 109, 169, 229, 241, 313, 361, 409, 457, 577},
          {193, 289},
          {7, 37}}},
        {25,
         {{31, 41, 61, 401, 601, 701, 751, 1051, 1151, 1201, 1301, 1451, 1601,
           1801, 1901, 1951, 2251, 2351, 2551, 2801, 2851, 3001, 3251, 3301,
           3851, 5051, 5501},
          {251},
          {11},
          {}}},
        {26,
         {{521, 677, 729, 859, 911, 937, 1093, 1171, 1223, 1249, 1301, 1327,
           1483, 1613, 1847, 1873, 1951, 2003, 2029, 2081, 2237, 2341, 2393,
           2549, 2809, 2861, 2887, 2939, 3121, 3329, 3407, 3433, 3511, 3719,
           3797},
          {313, 443, 547, 599},
          {},
          {131}}},
        {27,
         {{7, 73, 127, 181, 199, 307, 343, 379, 757, 811, 919, 1297, 1459, 1567,
           1621, 1783, 1999, 2053, 2161, 2269, 2377, 2539, 2593, 2647, 2917,
           2971, 3079, 3187, 3457, 3727, 3889, 3943, 4051, 4159, 4483, 4591,
           4861, 4969, 5023, 6859, 7993, 9397, 9829},
          {271, 433, 487, 541},
          {37},
          {}}},
        {28,
         {{13, 17, 25, 64, 211, 239, 379, 463, 491, 547, 631, 659, 673, 701,
           743, 757, 827, 841, 911, 953, 967, 1009, 1093, 1289, 1373, 1429,
           1499, 1597, 1681, 1709, 1849, 1877, 1933, 2017, 2129, 2213, 2269,
           2297, 2381, 2437, 2521, 2549, 2633, 2689, 2801, 2857, 2927, 2969,
           3109, 3137, 3221, 3361, 3389, 3529, 3557, 3613, 3697, 4201, 4229,
           4397, 4481, 4621, 4649, 4733, 4789, 4817, 4957},
          {5, 71, 127, 337, 421, 449, 617},
          {197, 281},
          {43}}},
        {29,
         {{523, 929, 1103, 1277, 1451, 1567, 1741, 1973, 2089, 2437, 3191, 3307,
           3481, 3539, 4003, 4177, 4409, 4583, 4931, 5569, 5801, 6091, 8237},
          {349},
          {233},
          {}}},
        {30,
         {{37, 43, 49, 67, 71, 73, 79, 101, 109, 131, 139, 191, 223, 251, 256,
           281, 311, 401, 431, 461, 491, 601, 631, 641, 691, 751, 811, 911, 961,
           991, 1021, 1051, 1171, 1201, 1231, 1291, 1321, 1381, 1471, 1531,
           1621, 1681, 1741, 1801, 1831, 1861, 1951, 2011, 2131, 2161, 2221,
           2251, 2281, 2311, 2341, 2371, 2401, 2521, 2551, 2671, 2731, 2791,
           2851, 2971, 3001, 3061, 3121, 3181, 3271, 3301, 3331, 3361, 3391,
           3511, 3541, 3571, 3631, 3691, 3721, 3931, 4021, 4051, 4111, 4201,
           4261, 4441, 4561, 4831, 4861},
          {19, 41, 271, 331, 361, 421, 541, 571, 661},
          {211, 241},
          {7, 13, 151}}},
        {31,
         {{683, 1024, 1117, 1303, 1427, 1489, 1613, 1861, 2357, 2543, 2729,
           2791, 3163, 3659, 3907, 4093, 4217, 4651, 5023, 5147, 5209, 5519,
           5581, 5953, 7193},
          {311},
          {373},
          {}}},
        {32,
         {{13, 29, 73, 89, 121, 137, 233, 241, 337, 401, 433, 529, 593, 625,
           641, 673, 761, 881, 929, 977, 1009, 1153, 1201, 1217, 1249, 1297,
           1409, 1489, 1601, 1697, 1889, 2017, 2081, 2113, 2209, 2273, 2401,
           2593, 2657, 2689, 2753, 3041, 3137, 3169, 3329, 3361, 3457, 3617,
           4001, 4129, 4289, 4513, 4673, 4801, 4993},
          {5, 25, 41, 81, 113, 289, 353, 449, 577, 769},
          {},
          {257}}},
        {33,
         {{7, 353, 419, 617, 859, 991, 1123, 1321, 1453, 1783, 1849, 2113, 2179,
           2311, 2377, 2707, 2971, 3037, 3169, 3301, 3433, 3499, 3631, 3697,
           4027, 4093, 4159, 4357, 4423, 4489, 4621, 4951, 5281, 5347, 5413,
           5479, 5743, 6007, 6073, 6271, 6337, 6469, 6997, 7723, 7789, 7921,
           8317, 8647, 9439},
          {89, 397, 463, 529, 661, 727},
          {331},
          {}}},
        {34,
         {{919, 1021, 1123, 1259, 1327, 1361, 1429, 1531, 1667, 1871, 1973,
           2143, 2347, 2381, 2551, 2687, 2789, 2857, 3061, 3163, 3299, 3469,
           3571, 3673, 3877, 3911, 4013, 4217, 4421, 4523, 4591, 4931, 4999,
           5101, 5237, 5407, 5441, 5849},
          {443, 613, 647, 953},
          {307, 409},
          {239}}},
        {35,
         {{31, 41, 61, 64, 113, 127, 701, 841, 911, 1051, 1331, 1471, 1681,
           2311, 2381, 2521, 2591, 2731, 2801, 3011, 3221, 3361, 3571, 3851,
           4096, 4201, 4271, 4481, 4621, 4691, 4831, 5041, 5531, 5741, 5881,
           6301, 6581, 6791, 7001, 7351, 7561, 8191, 8681, 8821},
          {29, 43, 421, 491, 631},
          {11, 281},
          {}}},
        {36,
         {{17, 29, 43, 67, 79, 139, 157, 169, 193, 223, 241, 277, 307, 313, 337,
           343, 349, 373, 379, 409, 421, 457, 487, 523, 625, 631, 661, 673, 733,
           739, 811, 829, 841, 877, 883, 919, 937, 991, 1009, 1063, 1069, 1153,
           1171, 1279, 1297, 1369, 1423, 1453, 1459, 1549, 1621, 1657, 1669,
           1693, 1741, 1747, 1801, 1873, 2017, 2053, 2089, 2161, 2197, 2251,
           2269, 2287, 2341, 2377, 2503, 2521, 2557, 2593, 2719, 2809, 2917,
           2953, 3061, 3169, 3259, 3313, 3457, 3529, 3637, 3673, 3709, 3853,
           3889, 4177, 4357, 4519, 4789, 4861, 4933, 4969},
          {5, 31, 61, 97, 163, 229, 271, 433, 541, 577, 613, 757, 1117},
          {199, 361, 397},
          {7, 49, 127}}},
        {37,
         {{1259, 1481, 1777, 1999, 2221, 2591, 2887, 3109, 3257, 3331, 3701,
           3923, 4219, 4441, 4663, 5107, 5477, 6143, 6217, 6661, 7253, 7549,
           7919, 7993, 8363, 8807, 9103, 9473},
          {593},
          {},
          {}}},
    };
    return m;
}

}  // namespace

const std::vector<u64>& uncoverable_expected(u64 k) {
    const auto& m = uncoverable_map();
    auto it = m.find(k);
    if (it == m.end()) fail("OutOfRange", "no uncoverable-field data for k=" + std::to_string(k));
    return it->second;
}

const std::vector<u64>& gamma_class_expected(u64 k, u32 g) {
    const auto& m = gamma_class_map();
    auto it = m.find(k);
    if (it == m.end()) fail("OutOfRange", "no gamma classification data for k=" + std::to_string(k));
    switch (g) {
        case 3: return it->second.g3;
        case 4: return it->second.g4;
        case 5: return it->second.g5;
        case 6: return it->second.g6;
        default: fail("OutOfRange", "classification lists cover gamma in 3..6, got " + std::to_string(g));
    }
}

u64 gamma3_complete_bound(u64 k) {
    if (k < 20) return ~0ULL;
    return (k - 1) * (k - 1) * (k - 1);
}

const std::vector<HighGammaEntry>& high_gamma_entries() {
    static const std::vector<HighGammaEntry> entries = {
        {8, 17, 8},    {9, 19, 9},    {10, 11, 10},  {11, 23, 11},  {12, 13, 12},
        {14, 29, 14},  {15, 31, 15},  {16, 17, 16},  {18, 73, 7},   {18, 19, 18},
        {18, 37, 18},  {20, 121, 7},  {20, 61, 8},   {20, 11, 10},  {20, 41, 20},
        {21, 43, 21},  {22, 89, 7},   {22, 67, 8},   {22, 23, 22},  {23, 139, 7},
        {23, 47, 23},  {24, 17, 8},   {24, 73, 8},   {24, 97, 8},   {24, 13, 12},
        {25, 151, 7},  {25, 101, 9},  {26, 157, 8},  {26, 79, 9},   {26, 53, 26},
        {27, 163, 8},  {27, 19, 9},   {27, 109, 9},  {28, 113, 7},  {28, 29, 28},
        {29, 59, 29},  {30, 181, 8},  {30, 11, 10},  {30, 121, 10}, {30, 31, 30},
        {30, 61, 30},  {32, 193, 8},  {32, 97, 10},  {32, 17, 16},  {33, 199, 9},
        {33, 23, 11},  {33, 67, 33},  {34, 103, 10}, {34, 137, 10}, {35, 211, 9},
        {35, 71, 35},  {36, 181, 7},  {36, 109, 11}, {36, 13, 12},  {36, 19, 18},
        {36, 37, 36},  {36, 73, 36},  {37, 149, 9},  {37, 223, 9},
    };
    return entries;
}

u32 gamma_max_expected(u64 k) {
    if (k < 1 || k > 37) fail("OutOfRange", "worst-case gamma data covers 1 <= k <= 37");
    static const std::map<u64, u32> listed = {
        {7, 4},  {13, 6}, {17, 6}, {19, 4},  {24, 12}, {25, 9},
        {27, 9}, {31, 5}, {32, 16}, {34, 10}, {37, 9},
    };
    auto it = listed.find(k);
    if (it != listed.end()) return it->second;
    return u32(k);
}

const std::vector<CorrectionEntry>& corrected_values() {
    static const std::vector<CorrectionEntry> entries = {
        {4, 41, 2},
        {5, 71, 2},
        {5, 101, 2},
    };
    return entries;
}

const std::vector<MatrixRow>* matrix_rows(u64 k) {
    static const std::map<u64, std::vector<MatrixRow>> m = {
        {3,
         {{{2, 4}, {3}, 3},
          {{2, 4, 7}, {3}, 2}}},
        {4,
         {{{3, 9}, {2}, 5},
          {{3, 5, 9}, {2}, 4},
          {{3, 5, 9, 13, 17, 25, 29}, {2}, 3}}},
        {5,
         {{{2, 4, 16}, {5}, 5},
          {{2, 4, 11, 16}, {5}, 3},
          {{2, 4, 11, 16, 31, 41, 61}, {5}, 2}}},
        {6,
         {{{2, 4, 5, 25}, {2, 3}, 7},
          {{2, 4, 5, 7, 13, 25}, {2, 3}, 5},
          {{2, 4, 5, 7, 13, 19, 25, 31}, {2, 3}, 4},
          {{2, 4, 5, 7, 13, 19, 25, 31, 37, 43, 49, 61, 67, 73, 79, 109, 139, 223},
           {2, 3},
           3}}},
        {7,
         {{{2, 8}, {7}, 4},
          {{2, 8, 29, 43}, {7}, 3},
          {{2, 4, 8, 29, 43, 64, 71, 113, 127}, {7}, 2}}},
        {8,
         {{{3, 7, 9, 49}, {2}, 9},
          {{3, 7, 9, 17, 49}, {2}, 5},
          {{3, 5, 7, 9, 17, 25, 41, 49}, {2}, 4},
          {{3, 5, 7, 9, 11, 13, 17, 25, 29, 41, 49, 73, 81, 89, 97, 113, 121,
            137, 233, 257, 289, 337, 761},
           {2},
           3}}},
        {9,
         {{{2, 4, 8, 64}, {3}, 9},
          {{2, 4, 8, 19, 64}, {3}, 5},
          {{2, 4, 8, 19, 37, 64}, {3}, 3},
          {{2, 4, 7, 8, 19, 37, 64, 73, 109, 127, 163, 181, 199, 271, 307, 343},
           {3},
           2}}},
        {10,
         {{{2, 3, 4, 9, 16, 81}, {2, 5}, 11},
          {{2, 3, 4, 9, 11, 16, 81}, {2, 5}, 6},
          {{2, 3, 4, 9, 11, 16, 31, 81}, {2, 5}, 5},
          {{2, 3, 4, 9, 11, 16, 31, 41, 61, 81}, {2, 5}, 4},
          {{2, 3, 4, 9, 11, 16, 31, 41, 61, 71, 81, 101, 121, 131, 151, 181,
            191, 211, 241, 251, 271, 281, 311, 331, 401, 421, 431, 461, 491,
            641, 911},
           {2, 5},
           3}}},
        {11,
         {{{23}, {11}, 5},
          {{23, 67}, {11}, 4},
          {{23, 67, 89}, {11}, 3},
          {{23, 67, 89, 199, 331, 353, 419, 463, 617}, {11}, 2}}},
    };
    auto it = m.find(k);
    return it == m.end() ? nullptr : &it->second;
}

std::optional<u32> matrix_bound(u64 k, u64 q, u64 p) {
    const auto* rows = matrix_rows(k);
    if (rows == nullptr) return std::nullopt;
    std::optional<u32> best;
    for (const auto& row : *rows) {
        if (std::find(row.excluded_q.begin(), row.excluded_q.end(), q) != row.excluded_q.end())
            continue;
        if (std::find(row.excluded_char.begin(), row.excluded_char.end(), p) !=
            row.excluded_char.end())
            continue;
        if (!best || row.m < *best) best = row.m;
    }
    return best;
}

const std::vector<RingRow>* ring_rows(u64 k) {
    static const std::map<u64, std::vector<RingRow>> m = {
        {3,
         {{{3, 4}, 3},
          {{3, 4, 7}, 2}}},
        {4,
         {{{2, 9}, 5},
          {{2, 5, 9}, 4},
          {{2, 5, 9, 13, 17, 29}, 3}}},
        {5,
         {{{5, 16}, 5},
          {{5, 11, 16}, 3},
          {{5, 11, 16, 31, 41, 61}, 2}}},
        {6,
         {{{2, 3, 25}, 7},
          {{2, 3, 7, 13, 25}, 5},
          {{2, 3, 7, 13, 19, 25, 31}, 4},
          {{2, 3, 7, 13, 19, 25, 31, 37, 43, 61, 67, 73, 79, 109, 139, 223}, 3}}},
        {7,
         {{{7, 8}, 4},
          {{7, 8, 29, 43}, 3},
          {{7, 8, 29, 43, 71, 113, 127}, 2}}},
        {8,
         {{{2, 9, 49}, 9},
          {{2, 9, 17, 49}, 5},
          {{2, 5, 9, 17, 41, 49}, 4},
          {{2, 5, 9, 13, 17, 29, 41, 49, 73, 89, 97, 113, 121, 137, 233, 257,
            337, 761},
           3}}},
        {9,
         {{{3, 4}, 9},
          {{3, 4, 19}, 5},
          {{3, 4, 19, 37}, 3},
          {{3, 4, 7, 19, 37, 73, 109, 127, 163, 181, 199, 271, 307}, 2}}},
        {10,
         {{{2, 5, 81}, 11},
          {{2, 5, 11, 81}, 6},
          {{2, 5, 11, 31, 81}, 5},
          {{2, 5, 11, 31, 41, 61, 81}, 4},
          {{2, 5, 11, 31, 41, 61, 71, 81, 101, 131, 151, 181, 191, 211, 241,
            251, 271, 281, 311, 331, 401, 421, 431, 461, 491, 641, 911},
           3}}},
        {11,
         {{{11, 23}, 5},
          {{11, 23, 67}, 4},
          {{11, 23, 67, 89}, 3},
          {{11, 23, 67, 89, 199, 331, 353, 419, 463, 617}, 2}}},
    };
    auto it = m.find(k);
    return it == m.end() ? nullptr : &it->second;
}

std::optional<u32> ring_bound(u64 k, u64 order) {
    const auto* rows = ring_rows(k);
    if (rows == nullptr) return std::nullopt;
    std::optional<u32> best;
    for (const auto& row : *rows) {
        bool admitted = true;
        for (u64 d : row.divisors) {
            if (order % d == 0) {
                admitted = false;
                break;
            }
        }
        if (admitted && (!best || row.n < *best)) best = row.n;
    }
    return best;
}

}  // namespace waring::tables
