#pragma once

#include <array>

namespace lamcount::reference {

/// Published reference constants for the natural model (a=b=c=d=1), used by
/// the offline regression checks (`table1 --check` and the acceptance
/// suite).  One row per index bound h = H, values rounded to 7 digits:
/// constant and square-root coefficient of the lower excess surrogate,
/// then of the upper excess surrogate.
struct NaturalTableRow {
  unsigned h;
  double excess_lower_constant;
  double excess_lower_sqrt;
  double excess_upper_constant;
  double excess_upper_sqrt;
};

inline constexpr std::array<NaturalTableRow, 15> natural_table = {{
    {1, 0.855448, -1.153959, 1.086200, -3.803686},
    {2, 0.898032, -1.313246, 0.979519, -2.581823},
    {3, 0.917305, -1.397536, 0.958215, -2.324953},
    {4, 0.927248, -1.444672, 0.950295, -2.236290},
    {5, 0.932849, -1.472308, 0.946185, -2.192353},
    {6, 0.936128, -1.488826, 0.943824, -2.167379},
    {7, 0.938055, -1.498647, 0.942443, -2.152790},
    {8, 0.939174, -1.504385, 0.941643, -2.144335},
    {9, 0.939813, -1.507673, 0.941187, -2.139511},
    {10, 0.940172, -1.509525, 0.940931, -2.136799},
    {11, 0.940372, -1.510556, 0.940788, -2.135291},
    {12, 0.940482, -1.511125, 0.940710, -2.134460},
    {13, 0.940543, -1.511438, 0.940667, -2.134004},
    {14, 0.940576, -1.511608, 0.940643, -2.133755},
    {15, 0.940594, -1.511701, 0.940630, -2.133619},
}};

// Natural model: dominant singularity, series value and square-root
// coefficient magnitude at it, and the asymptotic constants published for
// h = H = 15 (plain bounds) and M = h = H = 13 (improved bounds).
inline constexpr double natural_rho = 0.295598;
inline constexpr double natural_all_constant = 1.19149;
inline constexpr double natural_all_sqrt_magnitude = 2.15093;
inline constexpr double natural_C_lower = 0.00404525;
inline constexpr double natural_C_upper = 0.18086721;
inline constexpr double natural_improved_C_lower = 0.07790995266;
inline constexpr double natural_improved_C_upper = 0.07790998229;

// Binary model (a=c=d=2, b=1): dominant singularity and the improved
// constants published for M = h = H = 13.
inline constexpr double binary_rho = 0.509308;
inline constexpr double binary_improved_C_lower = 0.01252417;
inline constexpr double binary_improved_C_upper = 0.01254593;

}  // namespace lamcount::reference
