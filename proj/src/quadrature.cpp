#include "dvl/quadrature.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace dvl::quad {
namespace {

// Kronrod-15 abscissae/weights and the embedded Gauss-7 weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Cell {
  double a, b;
  double value;
  double err;
  bool operator<(const Cell& o) const { return err < o.err; }
};

Cell gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  double fv[15];
  const double fc = f(c);
  fv[14] = fc;
  for (int i = 0; i < 7; ++i) {
    fv[2 * i] = f(c + h * kXgk[i]);
    fv[2 * i + 1] = f(c - h * kXgk[i]);
  }

  double resk = kWgk[7] * fc;
  double resabs = std::fabs(resk);
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[2 * i] + fv[2 * i + 1]);
    resabs += kWgk[i] * (std::fabs(fv[2 * i]) + std::fabs(fv[2 * i + 1]));
  }
  double resg = kWg[3] * fc;
  for (int i = 0; i < 3; ++i)
    resg += kWg[i] * (fv[2 * (2 * i + 1)] + fv[2 * (2 * i + 1) + 1]);

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::fabs(fv[2 * i] - reskh) +
                         std::fabs(fv[2 * i + 1] - reskh));

  Cell cell;
  cell.a = a;
  cell.b = b;
  cell.value = resk * h;
  resasc *= std::fabs(h);
  resabs *= std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  err = std::max(err, 50.0 * eps * resabs);
  if (!std::isfinite(cell.value) || !std::isfinite(err)) {
    cell.value = 0.0;
    err = std::numeric_limits<double>::infinity();
  }
  cell.err = err;
  return cell;
}

}  // namespace

Result integrate(const Integrand& f, double a, double b,
                 const QuadratureSpec& spec) {
  Result res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::priority_queue<Cell> heap;
  heap.push(gk15(f, a, b));
  double total_err = heap.top().err;
  int splits = 0;
  const double eps = std::numeric_limits<double>::epsilon();
  while (total_err > spec.absolute_tolerance && splits < spec.max_subdivisions) {
    Cell worst = heap.top();
    // stop only when the cell is no longer resolvable in its own scale
    const double min_width =
        4.0 * eps * std::max(std::fabs(worst.a), std::fabs(worst.b)) + 1e-305;
    if (worst.b - worst.a <= min_width && std::isfinite(worst.err)) break;
    heap.pop();
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    Cell left = gk15(f, worst.a, mid);
    Cell right = gk15(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    total_err += left.err + right.err;
    ++splits;
  }
  // Compensated sum of the surviving cells, drained in heap order.
  double s = 0.0, comp = 0.0, err = 0.0;
  while (!heap.empty()) {
    const Cell& cell = heap.top();
    double y = cell.value - comp;
    double t = s + y;
    comp = (t - s) - y;
    s = t;
    err += cell.err;
    heap.pop();
  }
  res.value = s;
  res.error_estimate = err;
  res.subdivisions = splits;
  res.converged = std::isfinite(err) && err <= spec.absolute_tolerance;
  return res;
}

Result integrate_semi_infinite(const Integrand& f, double a,
                               const QuadratureSpec& spec) {
  // x = a - log(1-u), dx = du/(1-u)
  auto g = [&](double u) {
    const double one_minus = 1.0 - u;
    return f(a - std::log(one_minus)) / one_minus;
  };
  return integrate(g, 0.0, 1.0, spec);
}

namespace {

double check(const Result& r, const QuadratureSpec& spec, const char* what) {
  if (!r.converged) {
    std::ostringstream os;
    os << what << " did not converge: value=" << r.value
       << " error_estimate=" << r.error_estimate
       << " subdivisions=" << r.subdivisions
       << " tolerance=" << spec.absolute_tolerance;
    throw NumericFailure(os.str());
  }
  return r.value;
}

}  // namespace

double integrate_or_throw(const Integrand& f, double a, double b,
                          const QuadratureSpec& spec) {
  return check(integrate(f, a, b, spec), spec, "quadrature");
}

double integrate_semi_infinite_or_throw(const Integrand& f, double a,
                                        const QuadratureSpec& spec) {
  return check(integrate_semi_infinite(f, a, spec), spec,
               "semi-infinite quadrature");
}

}  // namespace dvl::quad
