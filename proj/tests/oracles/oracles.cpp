#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

namespace {
constexpr Complex kI{0.0, 1.0};
}

LinearForm op(int mode, bool dagger, Complex c) { return {{c, Ladder{mode, dagger}}}; }

LinearForm sum(LinearForm a, const LinearForm& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

LinearForm scaled(LinearForm a, Complex c) {
  for (auto& [coef, l] : a) coef *= c;
  return a;
}

std::vector<double> bogoliubov_frequencies(int n_modes, const std::vector<BilinearTerm>& terms) {
  // Psi = (a_1..a_n, a_1+..a_n+). Psi_i = (Psi+)_{s(i)} with s swapping the
  // halves, so L_i L_j = Psi+_{s(i)} Psi_j and H = Psi+ M Psi + const.
  const int n = n_modes;
  auto index = [n](const Ladder& l) { return l.dagger ? n + l.mode : l.mode; };
  auto swap = [n](int i) { return i < n ? i + n : i - n; };

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (const auto& t : terms) {
    for (const auto& [u, li] : t.lhs) {
      for (const auto& [v, lj] : t.rhs) {
        m(swap(index(li)), index(lj)) += t.coefficient * u * v;
      }
    }
  }
  // Psi+ M Psi = Psi+ (S M^T S) Psi + const, so H = 1/2 Psi+ (M + S M^T S) Psi.
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) s(swap(i), i) = 1.0;
  const Eigen::MatrixXcd hbdg = m + s * m.transpose() * s;

  Eigen::MatrixXcd eta_h = hbdg;
  eta_h.bottomRows(n) *= -1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(eta_h);
  std::vector<double> all;
  for (int i = 0; i < 2 * n; ++i) all.push_back(solver.eigenvalues()(i).real());
  std::sort(all.begin(), all.end());
  return {all.begin() + n, all.end()};
}

std::vector<double> dicke_thermo(DickeGauge gauge, double wc, double wx, double lambda,
                                 double alpha) {
  const int a = 0, b = 1;
  const LinearForm xa = sum(op(a, false), op(a, true));
  const LinearForm xb = sum(op(b, false), op(b, true));
  std::vector<BilinearTerm> terms{{wc, op(a, true), op(a, false)}, {wx, op(b, true), op(b, false)}};
  if (gauge == DickeGauge::dipole) {
    // i lambda wc (a+ - a)(b + b+) + wc lambda^2 (b + b+)^2
    terms.push_back({kI * lambda * wc, sum(op(a, true), op(a, false, -1.0)), xb});
    terms.push_back({wc * lambda * lambda, xb, xb});
  } else {
    // -i wx lambda (b+ - b)(a + a+) + D (a + a+)^2
    const double d = (gauge == DickeGauge::standard_coulomb ? alpha : 1.0) * wx * lambda * lambda;
    terms.push_back({-kI * wx * lambda, sum(op(b, true), op(b, false, -1.0)), xa});
    terms.push_back({d, xa, xa});
  }
  return bogoliubov_frequencies(2, terms);
}

std::vector<double> hopfield_pair(bool coulomb, double wk, double w0, double beta) {
  // modes: a_k, a_-k, b_k, b_-k
  const int ak = 0, amk = 1, bk = 2, bmk = 3;
  const double lam = std::sqrt(beta * w0 / (4.0 * wk));
  std::vector<BilinearTerm> terms;
  for (int mode = 0; mode < 2; ++mode) {
    terms.push_back({wk, op(mode, true), op(mode, false)});
    terms.push_back({w0, op(mode + 2, true), op(mode + 2, false)});
  }
  // Field amplitudes for +k and -k: A_k ~ a_k + a_-k+, P_k ~ b_k + b_-k+.
  for (int sign = 0; sign < 2; ++sign) {
    const int a_p = sign == 0 ? ak : amk, a_m = sign == 0 ? amk : ak;
    const int b_p = sign == 0 ? bk : bmk, b_m = sign == 0 ? bmk : bk;
    if (coulomb) {
      // i w0 L (a_k + a_-k+)(b_-k - b_k+) + w0 L^2 (a_k + a_-k+)(a_-k + a_k+)
      terms.push_back({kI * w0 * lam, sum(op(a_p, false), op(a_m, true)),
                       sum(op(b_m, false), op(b_p, true, -1.0))});
      terms.push_back({w0 * lam * lam, sum(op(a_p, false), op(a_m, true)),
                       sum(op(a_m, false), op(a_p, true))});
    } else {
      // -i wk L (a_k - a_-k+)(b_-k + b_k+) + wk L^2 (b_k + b_-k+)(b_-k + b_k+)
      terms.push_back({-kI * wk * lam, sum(op(a_p, false), op(a_m, true, -1.0)),
                       sum(op(b_m, false), op(b_p, true))});
      terms.push_back({wk * lam * lam, sum(op(b_p, false), op(b_m, true)),
                       sum(op(b_m, false), op(b_p, true))});
    }
  }
  return bogoliubov_frequencies(4, terms);
}

std::vector<double> char_poly(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[static_cast<std::size_t>(n)] = 1.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(n - k + 1)] * Eigen::MatrixXd::Identity(n, n);
    c[static_cast<std::size_t>(n - k)] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

double sturm_eigenvalue(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, std::size_t k) {
  const Eigen::Index n = diag.size();
  // Number of eigenvalues below x from the LDL^T pivots.
  auto count_below = [&](double x) {
    std::size_t count = 0;
    double q = diag(0) - x;
    if (q < 0) ++count;
    for (Eigen::Index i = 1; i < n; ++i) {
      const double denom = q != 0.0 ? q : 1e-300;
      q = diag(i) - x - off(i - 1) * off(i - 1) / denom;
      if (q < 0) ++count;
    }
    return count;
  };
  double radius = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = std::abs(diag(i));
    if (i > 0) r += std::abs(off(i - 1));
    if (i < n - 1) r += std::abs(off(i));
    radius = std::max(radius, r);
  }
  double lo = -radius, hi = radius;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) > k) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd inverse_iteration(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                                  double eigenvalue) {
  const Eigen::Index n = diag.size();
  // Shift slightly off the eigenvalue so the solve stays finite.
  const double shift = eigenvalue + 1e-10 * std::max(1.0, std::abs(eigenvalue));
  Eigen::VectorXd y = Eigen::VectorXd::Ones(n);
  for (int it = 0; it < 4; ++it) {
    Eigen::VectorXd c(n), d(n);
    double denom = diag(0) - shift;
    c(0) = n > 1 ? off(0) / denom : 0.0;
    d(0) = y(0) / denom;
    for (Eigen::Index i = 1; i < n; ++i) {
      denom = diag(i) - shift - off(i - 1) * c(i - 1);
      c(i) = i < n - 1 ? off(i) / denom : 0.0;
      d(i) = (y(i) - off(i - 1) * d(i - 1)) / denom;
    }
    for (Eigen::Index i = n - 1; i-- > 0;) d(i) -= c(i) * d(i + 1);
    y = d / d.norm();
  }
  return y;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) { return a.exp(); }

std::pair<Eigen::VectorXd, Eigen::VectorXd> fd_tridiagonal(const std::function<double(double)>& v,
                                                           double ek, double x_min, double x_max,
                                                           std::size_t n_points) {
  const double h = (x_max - x_min) / static_cast<double>(n_points - 1);
  const auto m = static_cast<Eigen::Index>(n_points - 2);
  Eigen::VectorXd diag(m), off(m - 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    diag(i) = ek / (h * h) + v(x_min + h * static_cast<double>(i + 1));
  }
  off.setConstant(-0.5 * ek / (h * h));
  return {diag, off};
}

NumerovState numerov_state(const std::function<double(double)>& v, double ek, double x_min,
                           double x_max, std::size_t n_points, std::size_t k) {
  const double h = (x_max - x_min) / static_cast<double>(n_points - 1);
  std::vector<double> x(n_points), pot(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    x[i] = x_min + h * static_cast<double>(i);
    pot[i] = v(x[i]);
  }
  // psi'' = f psi with f = 2 (V - E) / ek.
  auto shoot = [&](double e, std::vector<double>& psi) {
    psi.assign(n_points, 0.0);
    psi[1] = 1e-10;
    std::size_t nodes = 0;
    auto f = [&](std::size_t i) { return 2.0 * (pot[i] - e) / ek; };
    for (std::size_t i = 1; i + 1 < n_points; ++i) {
      const double w_prev = 1.0 - h * h * f(i - 1) / 12.0;
      const double w_cur = 2.0 + 10.0 * h * h * f(i) / 12.0;
      const double w_next = 1.0 - h * h * f(i + 1) / 12.0;
      psi[i + 1] = (w_cur * psi[i] - w_prev * psi[i - 1]) / w_next;
      if (i + 1 < n_points - 1 && psi[i + 1] * psi[i] < 0.0) ++nodes;
      if (std::abs(psi[i + 1]) > 1e100) {
        for (std::size_t j = 0; j <= i + 1; ++j) psi[j] *= 1e-100;
      }
    }
    return nodes;
  };
  std::vector<double> psi;
  const double vmin = *std::min_element(pot.begin(), pot.end());
  const double vmax = *std::max_element(pot.begin(), pot.end());
  double lo = vmin, hi = vmax;
  // Nodes of the outward solution count the states below e; the endpoint
  // value changes sign at each eigenvalue.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const std::size_t nodes = shoot(mid, psi);
    const bool above = nodes > k || (nodes == k && psi.back() * (k % 2 == 0 ? 1.0 : -1.0) < 0.0);
    if (above) hi = mid; else lo = mid;
    if (hi - lo < 1e-14 * std::max(1.0, std::abs(hi))) break;
  }
  NumerovState out;
  out.energy = 0.5 * (lo + hi);
  shoot(out.energy, psi);
  psi.back() = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    const double w = (i == 0 || i + 1 == n_points) ? 0.5 : 1.0;
    norm += w * h * psi[i] * psi[i];
  }
  for (double& p : psi) p /= std::sqrt(norm);
  out.x = std::move(x);
  out.psi = std::move(psi);
  return out;
}

Spin spin(int two_j) {
  const double j = 0.5 * two_j;
  const int dim = two_j + 1;
  Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    const double m = -j + s;
    z(s, s) = m;
    if (s + 1 < dim) plus(s + 1, s) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const Eigen::MatrixXcd minus = plus.adjoint();
  return {(plus + minus) / 2.0, (plus - minus) / (2.0 * kI), z};
}

namespace {

struct Layout {
  int n_max, spin_dim;
  int index(int n, int s) const { return n * spin_dim + s; }
  int dim() const { return (n_max + 1) * spin_dim; }
};

// Adds coefficient * F (x) S where F is given through its (row, col, value)
// action on Fock states and S is a spin matrix.
template <typename FockElement>
void add_product(Eigen::MatrixXcd& h, const Layout& l, Complex c, FockElement fock,
                 const Eigen::MatrixXcd& spin_part) {
  for (int n = 0; n <= l.n_max; ++n) {
    for (int n2 = 0; n2 <= l.n_max; ++n2) {
      const Complex f = fock(n2, n);
      if (f == 0.0) continue;
      for (int s = 0; s < l.spin_dim; ++s) {
        for (int s2 = 0; s2 < l.spin_dim; ++s2) {
          if (spin_part(s2, s) == 0.0) continue;
          h(l.index(n2, s2), l.index(n, s)) += c * f * spin_part(s2, s);
        }
      }
    }
  }
}

Complex create(int row, int col) { return row == col + 1 ? std::sqrt(double(row)) : 0.0; }
Complex annihilate(int row, int col) { return col == row + 1 ? std::sqrt(double(col)) : 0.0; }
Complex quadrature(int row, int col) { return create(row, col) + annihilate(row, col); }
Complex number(int row, int col) { return row == col ? double(row) : 0.0; }
Complex unit(int row, int col) { return row == col ? 1.0 : 0.0; }

Eigen::MatrixXcd bare(const DickeSetup& s, const Layout& l, const Spin& j) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(l.dim(), l.dim());
  const Eigen::MatrixXcd spin_id = Eigen::MatrixXcd::Identity(l.spin_dim, l.spin_dim);
  add_product(h, l, s.wc, number, spin_id);
  add_product(h, l, s.wx, unit, j.z + 0.5 * s.N * spin_id);
  return h;
}

}  // namespace

Eigen::MatrixXcd dicke_dipole(const DickeSetup& s) {
  const Layout l{s.n_max, s.N + 1};
  const Spin j = spin(s.N);
  Eigen::MatrixXcd h = bare(s, l, j);
  add_product(h, l, 2.0 * kI * s.eta * s.wc,
              [](int r, int c) { return create(r, c) - annihilate(r, c); }, j.x);
  add_product(h, l, 4.0 * s.eta * s.eta * s.wc, unit, j.x * j.x);
  return h;
}

Eigen::MatrixXcd dicke_standard_coulomb(const DickeSetup& s) {
  const Layout l{s.n_max, s.N + 1};
  const Spin j = spin(s.N);
  Eigen::MatrixXcd h = bare(s, l, j);
  add_product(h, l, 2.0 * s.wx * s.eta, quadrature, j.y);
  // (a + a+)^2 on the truncated space, as the product of truncated matrices.
  const Eigen::MatrixXcd spin_id = Eigen::MatrixXcd::Identity(l.spin_dim, l.spin_dim);
  add_product(
      h, l, s.D,
      [&](int r, int c) {
        Complex acc = 0.0;
        for (int k = 0; k <= s.n_max; ++k) acc += quadrature(r, k) * quadrature(k, c);
        return acc;
      },
      spin_id);
  return h;
}

Eigen::MatrixXcd dicke_gauge_unitary(const DickeSetup& s) {
  const Layout l{s.n_max, s.N + 1};
  const Spin j = spin(s.N);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(l.dim(), l.dim());
  add_product(g, l, 2.0 * kI * s.eta, quadrature, j.x);
  return expm(g);
}

Eigen::MatrixXcd dicke_gi_coulomb(const DickeSetup& s) {
  const Layout l{s.n_max, s.N + 1};
  const Spin j = spin(s.N);
  const Eigen::MatrixXcd spin_id = Eigen::MatrixXcd::Identity(l.spin_dim, l.spin_dim);
  Eigen::MatrixXcd matter = Eigen::MatrixXcd::Zero(l.dim(), l.dim());
  add_product(matter, l, s.wx, unit, j.z + 0.5 * s.N * spin_id);
  Eigen::MatrixXcd photon = Eigen::MatrixXcd::Zero(l.dim(), l.dim());
  add_product(photon, l, s.wc, number, spin_id);
  const Eigen::MatrixXcd u = dicke_gauge_unitary(s);
  return u * matter * u.adjoint() + photon;
}

}  // namespace oracle
