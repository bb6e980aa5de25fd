#include "asqg/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace asqg::spectral {
namespace {

// Plans are created once per (size, direction) and executed through the
// new-array interface, which is safe to call concurrently.
fftw_plan plan_for(std::size_t n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  std::vector<cplx> in(n), out(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(key, p);
  return p;
}

std::vector<cplx> run(const std::vector<cplx>& x, int sign) {
  std::vector<cplx> in(x), out(x.size());
  if (x.empty()) return out;
  fftw_execute_dft(plan_for(x.size(), sign), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<cplx> forward(const std::vector<cplx>& samples) {
  auto c = run(samples, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(samples.size());
  for (auto& v : c) v *= scale;
  return c;
}

std::vector<cplx> inverse(const std::vector<cplx>& coeffs) { return run(coeffs, FFTW_BACKWARD); }

}  // namespace asqg::spectral
