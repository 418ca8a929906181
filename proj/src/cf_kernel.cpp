#include "cofrag/cf_kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cofrag {

std::vector<double> coag_flux(std::span<const double> f,
                              const KernelTables& tables,
                              const SizeGrid& grid) {
  const int n = grid.n_size;
  const double dy2 = grid.dy * grid.dy;
  std::vector<double> flux(static_cast<std::size_t>(n) + 1, 0.0);
  // flux[i+1] = sum_{j<=i} sum_{l>i} dy^2 edge(j) a(j,l-j) f_j f_{l-j};
  // the i = n-1 entry is an empty sum, so both ends stay zero.
  for (int i = 0; i + 1 < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) {
      const double wf = grid.edge(j) * f[static_cast<std::size_t>(j)];
      if (wf == 0.0) continue;
      const double* arow =
          tables.a.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(n);
      double inner = 0.0;
      for (int l = i + 1; l < n; ++l)
        inner += arow[l - j] * f[static_cast<std::size_t>(l - j)];
      acc += wf * inner;
    }
    flux[static_cast<std::size_t>(i) + 1] = dy2 * acc;
  }
  return flux;
}

std::vector<double> frag_flux(std::span<const double> f,
                              const KernelTables& tables,
                              const SizeGrid& grid) {
  const int n = grid.n_size;
  const double dy2 = grid.dy * grid.dy;
  std::vector<double> flux(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) {
      const double w = grid.edge(j);
      if (w == 0.0) continue;
      const double* brow =
          tables.b.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(n);
      double inner = 0.0;
      for (int l = i + 1; l < n; ++l)
        inner += brow[l - j] * f[static_cast<std::size_t>(l)];
      acc += w * inner;
    }
    flux[static_cast<std::size_t>(i) + 1] = dy2 * acc;
  }
  return flux;
}

void q_classical_add(std::span<const double> f, const KernelTables& tables,
                     const SizeGrid& grid, std::span<double> out) {
  const int n = grid.n_size;
  const double dy = grid.dy;
  const double* a = tables.a.data();
  const double* b = tables.b.data();
  for (int i = 0; i < n; ++i) {
    const double fi = f[static_cast<std::size_t>(i)];
    double gain = 0.0;
    for (int j = 0; j <= i; ++j) {
      const std::size_t idx =
          static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
          static_cast<std::size_t>(i - j);
      gain += a[idx] * f[static_cast<std::size_t>(j)] *
                  f[static_cast<std::size_t>(i - j)] -
              b[idx] * fi;
    }
    const double* arow =
        a + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
    const double* brow =
        b + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
    double loss = 0.0;
    for (int j = i; j < n; ++j) {
      loss += arow[j - i] * fi * f[static_cast<std::size_t>(j - i)] -
              brow[j - i] * f[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] += dy * (0.5 * gain - loss);
  }
}

std::vector<double> q_classical(std::span<const double> f,
                                const KernelTables& tables,
                                const SizeGrid& grid) {
  std::vector<double> q(static_cast<std::size_t>(grid.n_size), 0.0);
  q_classical_add(f, tables, grid, q);
  return q;
}

double q_from_fluxes_at(std::span<const double> coag,
                        std::span<const double> frag, const SizeGrid& grid,
                        int i) {
  if (i < 1 || i >= grid.n_size)
    throw std::logic_error(
        "q_from_fluxes: the divided form is undefined at i = " +
        std::to_string(i) + " (edge coordinate vanishes at 0)");
  const double denom = grid.edge(i) * grid.dy;
  const std::size_t k = static_cast<std::size_t>(i);
  return (-(coag[k + 1] - coag[k]) + (frag[k + 1] - frag[k])) / denom;
}

std::vector<double> q_from_fluxes(std::span<const double> coag,
                                  std::span<const double> frag,
                                  const SizeGrid& grid) {
  const int n = grid.n_size;
  std::vector<double> q(static_cast<std::size_t>(n),
                        std::numeric_limits<double>::quiet_NaN());
  for (int i = 1; i < n; ++i) q[static_cast<std::size_t>(i)] =
      q_from_fluxes_at(coag, frag, grid, i);
  return q;
}

double weak_form(std::span<const double> f, const KernelTables& tables,
                 const SizeGrid& grid, std::span<const double> phi) {
  const int n = grid.n_size;
  const double dy2 = grid.dy * grid.dy;
  const double* a = tables.a.data();
  const double* b = tables.b.data();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double fi = f[static_cast<std::size_t>(i)];
    const double phii = phi[static_cast<std::size_t>(i)];
    for (int l = 0; l <= i; ++l) {
      const std::size_t idx =
          static_cast<std::size_t>(l) * static_cast<std::size_t>(n) +
          static_cast<std::size_t>(i - l);
      const double net = a[idx] * f[static_cast<std::size_t>(l)] *
                             f[static_cast<std::size_t>(i - l)] -
                         b[idx] * fi;
      acc += net * (phi[static_cast<std::size_t>(l)] +
                    phi[static_cast<std::size_t>(i - l)] - phii);
    }
  }
  return -0.5 * dy2 * acc;
}

DissipationResult dissipation(std::span<const double> f,
                              const KernelTables& tables,
                              const SizeGrid& grid) {
  constexpr double kLogFloor = 1e-300;
  const int n = grid.n_size;
  const double dy2 = grid.dy * grid.dy;
  const double* a = tables.a.data();
  const double* b = tables.b.data();
  DissipationResult res;
  for (int i = 0; i < n; ++i) {
    const double fi = f[static_cast<std::size_t>(i)];
    for (int l = 0; l <= i; ++l) {
      const std::size_t idx =
          static_cast<std::size_t>(l) * static_cast<std::size_t>(n) +
          static_cast<std::size_t>(i - l);
      const double p = a[idx] * f[static_cast<std::size_t>(l)] *
                       f[static_cast<std::size_t>(i - l)];
      const double q = b[idx] * fi;
      if (p == q) continue;
      if (p == 0.0 || q == 0.0) {
        // One-sided vacuum: the exact term is infinite. Floor the log
        // argument so the sum stays finite, and count the clamp.
        ++res.clamped;
        res.value += dy2 * (p - q) *
                     std::log(std::max(p, kLogFloor) / std::max(q, kLogFloor));
        continue;
      }
      res.value += dy2 * (p - q) * std::log(p / q);
    }
  }
  return res;
}

}  // namespace cofrag
