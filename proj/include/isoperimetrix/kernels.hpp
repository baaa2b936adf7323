#pragma once

#include <cstddef>

// Data-parallel inner loops. Each entry point has a portable scalar reference
// and, where the CPU supports it, an AVX2 variant selected once at first use.

namespace isx::kernels {

enum class Isa { scalar, avx2 };

struct Table {
    double (*weighted_sum)(const double* w, const double* v, std::size_t n);
    std::size_t (*argmin)(const double* v, std::size_t n);
    double (*min_ratio)(const double* num, const double* den, std::size_t n);
    std::size_t (*count_descents)(const double* v, std::size_t n, double slack);
    Isa isa;
};

// Sum of w[i]*v[i].
double weighted_sum(const double* w, const double* v, std::size_t n);
// Index of the first smallest element; NaN entries are never selected. Returns n if none.
std::size_t argmin(const double* v, std::size_t n);
// Minimum of num[i]/den[i] over entries with den[i] > 0.
double min_ratio(const double* num, const double* den, std::size_t n);
// Number of i with v[i+1] < v[i] - slack*max(1,|v[i]|).
std::size_t count_descents(const double* v, std::size_t n, double slack);

const Table& active();
const Table& scalar_table();
// Null when the binary was built without AVX2 support or the CPU lacks it.
const Table* avx2_table();
const char* isa_name(Isa isa);

}  // namespace isx::kernels
