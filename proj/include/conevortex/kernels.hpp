#pragma once

// Hot loops of the partial-wave machinery in two builds: a plain serial loop
// kept as the reference, and an OpenMP loop used by the library. Both produce
// identical results; every output element depends on its own inputs only.

#include <complex>
#include <functional>
#include <vector>

namespace conevortex::kernels {

using cdouble = std::complex<double>;

/// Number of OpenMP threads used by the parallel kernels.
int workers();
void set_workers(int count);

/// out[j] = Σ_i coeff[i]·e^{i(m_lo+i)φ_j}
std::vector<cdouble> mode_series_serial(const std::vector<cdouble>& coeff, long m_lo,
                                        const std::vector<double>& phi);
std::vector<cdouble> mode_series_parallel(const std::vector<cdouble>& coeff, long m_lo,
                                          const std::vector<double>& phi);

/// out[i] = term(start + i·step), i < count. Exceptions thrown by `term` are
/// rethrown on the calling thread, the one with the smallest i first.
std::vector<cdouble> mode_block_serial(const std::function<cdouble(long)>& term, long start, long step,
                                       int count);
std::vector<cdouble> mode_block_parallel(const std::function<cdouble(long)>& term, long start, long step,
                                         int count);

}  // namespace conevortex::kernels
