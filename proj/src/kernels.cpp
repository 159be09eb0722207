#include "conevortex/kernels.hpp"

#include "conevortex/errors.hpp"

#include <exception>

#include <omp.h>

namespace conevortex::kernels {

namespace {

cdouble series_at(const std::vector<cdouble>& coeff, long m_lo, double phi) {
  cdouble acc = 0.0;
  const long n = static_cast<long>(coeff.size());
  for (long i = 0; i < n; ++i) {
    acc += coeff[i] * std::polar(1.0, static_cast<double>(m_lo + i) * phi);
  }
  return acc;
}

}  // namespace

int workers() { return omp_get_max_threads(); }

void set_workers(int count) {
  if (count < 1) throw DomainError("worker count must be positive");
  omp_set_num_threads(count);
}

std::vector<cdouble> mode_series_serial(const std::vector<cdouble>& coeff, long m_lo,
                                        const std::vector<double>& phi) {
  std::vector<cdouble> out(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) out[j] = series_at(coeff, m_lo, phi[j]);
  return out;
}

std::vector<cdouble> mode_series_parallel(const std::vector<cdouble>& coeff, long m_lo,
                                          const std::vector<double>& phi) {
  std::vector<cdouble> out(phi.size());
  const long np = static_cast<long>(phi.size());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < np; ++j) out[j] = series_at(coeff, m_lo, phi[j]);
  return out;
}

std::vector<cdouble> mode_block_serial(const std::function<cdouble(long)>& term, long start, long step,
                                       int count) {
  std::vector<cdouble> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = term(start + i * step);
  return out;
}

std::vector<cdouble> mode_block_parallel(const std::function<cdouble(long)>& term, long start, long step,
                                         int count) {
  std::vector<cdouble> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < count; ++i) {
    try {
      out[i] = term(start + i * step);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace conevortex::kernels
