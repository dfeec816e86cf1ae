#include <kdvist/jost.hpp>

#include <cmath>
#include <stdexcept>

namespace kdvist {

namespace {

// c = cos(p h), s = sin(p h)/p with p^2 = k^2 - qc. Both are entire
// functions of w = p^2 h^2, so no branch of the square root matters.
void cs_pair(Complex w, Real h, Complex& c, Complex& s) {
  if (std::abs(w) < 1e-4) {
    Complex w2 = w * w;
    c = 1.0 - w / 2.0 + w2 / 24.0 - w * w2 / 720.0 + w2 * w2 / 40320.0;
    s = h * (1.0 - w / 6.0 + w2 / 120.0 - w * w2 / 5040.0 + w2 * w2 / 362880.0);
    return;
  }
  if (w.imag() == 0.0) {
    // real w: trig for positive, hyperbolic for negative
    Real wr = w.real();
    if (wr > 0.0) {
      Real z = std::sqrt(wr);
      c = std::cos(z);
      s = h * std::sin(z) / z;
    } else {
      Real z = std::sqrt(-wr);
      c = std::cosh(z);
      s = h * std::sinh(z) / z;
    }
    return;
  }
  Complex z = std::sqrt(w);
  c = std::cos(z);
  s = h * std::sin(z) / z;
}

struct CellStepper {
  Complex k;
  Real h;
  int sign; // +1 right equation, -1 left equation
  int dir;  // +1 forward in x, -1 backward
  Complex twiddle;
  Real sd; // sign*dir

  CellStepper(Complex k_, Real h_, int sign_, int dir_) : k(k_), h(h_), sign(sign_), dir(dir_) {
    sd = static_cast<Real>(sign * dir);
    twiddle = std::exp(-sd * iu * k * h);
  }

  void step(Real qc, Complex& m, Complex& mp) const {
    Complex c, s;
    cs_pair((k * k - qc) * (h * h), h, c, s);
    Complex iks = iu * k * s;
    Complex m_new = (c + sd * iks) * m + static_cast<Real>(dir) * s * mp;
    Complex mp_new = static_cast<Real>(dir) * qc * s * m + (c - sd * iks) * mp;
    m = twiddle * m_new;
    mp = twiddle * mp_new;
  }
};

void check_k(Complex k) {
  if (k.imag() < -1e-12)
    throw std::domain_error("jost_solve: k must lie in the closed upper half plane");
  if (k == Complex{0.0, 0.0})
    throw std::domain_error("jost_solve: k = 0 is excluded");
}

} // namespace

void cell_step(Complex k, Real qc, Real h, int sign, int dir, Complex& m, Complex& mp) {
  CellStepper st(k, h, sign, dir);
  st.step(qc, m, mp);
}

JostSolution jost_solve(const Potential& q, Complex k, Side side) {
  check_k(k);
  Index n = q.cells();
  JostSolution sol;
  sol.side = side;
  sol.k = k;
  sol.x = Vec::LinSpaced(n + 1, 0.0, q.b_max);
  sol.m.resize(n + 1);
  sol.mp.resize(n + 1);

  if (side == Side::right) {
    CellStepper st(k, q.grid_step, +1, -1);
    sol.m[n] = 1.0;
    sol.mp[n] = 0.0;
    for (Index j = n - 1; j >= 0; --j) {
      Complex m = sol.m[j + 1], mp = sol.mp[j + 1];
      st.step(q.samples[j], m, mp);
      sol.m[j] = m;
      sol.mp[j] = mp;
    }
  } else {
    CellStepper st(k, q.grid_step, -1, +1);
    sol.m[0] = 1.0;
    sol.mp[0] = 0.0;
    for (Index j = 0; j < n; ++j) {
      Complex m = sol.m[j], mp = sol.mp[j];
      st.step(q.samples[j], m, mp);
      sol.m[j + 1] = m;
      sol.mp[j + 1] = mp;
    }
  }
  sol.sup_m = sol.m.cwiseAbs().maxCoeff();
  return sol;
}

std::pair<Complex, Complex> jost_edge(const Potential& q, Complex k, Side side) {
  check_k(k);
  Index n = q.cells();
  Complex m = 1.0, mp = 0.0;
  if (side == Side::right) {
    CellStepper st(k, q.grid_step, +1, -1);
    for (Index j = n - 1; j >= 0; --j) st.step(q.samples[j], m, mp);
  } else {
    CellStepper st(k, q.grid_step, -1, +1);
    for (Index j = 0; j < n; ++j) st.step(q.samples[j], m, mp);
  }
  return {m, mp};
}

} // namespace kdvist
