#include "schroedsym/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "schroedsym/errors.hpp"

namespace schroedsym {

namespace {

constexpr double kPruneTolerance = 1e-15;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

// ---------------------------------------------------------- LaurentPoly2

LaurentPoly2::LaurentPoly2(cplx c) {
  if (std::abs(c) >= kPruneTolerance) terms_[{0, 0}] = c;
}

LaurentPoly2 LaurentPoly2::monomial(cplx c, int i, int j) {
  if (j < 0) throw DomainError("x powers must be non-negative");
  LaurentPoly2 p;
  if (std::abs(c) >= kPruneTolerance) p.terms_[{i, j}] = c;
  return p;
}

cplx LaurentPoly2::coeff(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void LaurentPoly2::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPruneTolerance; });
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& o) {
  for (const auto& [key, c] : o.terms_) terms_[key] += c;
  prune();
  return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& o) {
  for (const auto& [key, c] : o.terms_) terms_[key] -= c;
  prune();
  return *this;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out.terms_[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    }
  }
  out.prune();
  return out;
}

LaurentPoly2 LaurentPoly2::derive(int var, int times) const {
  LaurentPoly2 out = *this;
  for (int n = 0; n < times; ++n) {
    LaurentPoly2 next;
    for (const auto& [key, c] : out.terms_) {
      const int power = var == 0 ? key.first : key.second;
      if (power == 0) continue;
      const Key k2 = var == 0 ? Key{key.first - 1, key.second} : Key{key.first, key.second - 1};
      next.terms_[k2] += c * static_cast<double>(power);
    }
    next.prune();
    out = std::move(next);
  }
  return out;
}

cplx LaurentPoly2::evaluate(cplx v1, cplx v2) const {
  cplx sum = 0.0;
  for (const auto& [key, c] : terms_) {
    sum += c * std::pow(v1, key.first) * std::pow(v2, key.second);
  }
  return sum;
}

double LaurentPoly2::max_abs_diff(const LaurentPoly2& o) const {
  double worst = 0.0;
  for (const auto& [key, c] : terms_) worst = std::max(worst, std::abs(c - o.coeff(key.first, key.second)));
  for (const auto& [key, c] : o.terms_) {
    if (!terms_.contains(key)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

std::string LaurentPoly2::to_string(const char* v1, const char* v2) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    os << ")";
    if (key.first != 0) os << "*" << v1 << "^" << key.first;
    if (key.second != 0) os << "*" << v2 << "^" << key.second;
  }
  return os.str();
}

// ---------------------------------------------------------------- DiffOp

DiffOp DiffOp::multiplication(Chart chart, const LaurentPoly2& p) { return term(chart, p, 0, 0); }

DiffOp DiffOp::term(Chart chart, const LaurentPoly2& p, int m, int n) {
  if (m < 0 || n < 0) throw DomainError("derivative orders must be non-negative");
  DiffOp op(chart);
  if (!p.is_zero()) op.terms_[{m, n}] = p;
  return op;
}

LaurentPoly2 DiffOp::coefficient(int m, int n) const {
  const auto it = terms_.find({m, n});
  return it == terms_.end() ? LaurentPoly2() : it->second;
}

int DiffOp::order() const {
  int o = 0;
  for (const auto& [key, p] : terms_) o = std::max(o, key.first + key.second);
  return o;
}

void DiffOp::prune() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

void DiffOp::require_same_chart(const DiffOp& o) const {
  if (!(chart_ == o.chart_)) throw FamilyMismatch("operators live on different charts");
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  require_same_chart(o);
  for (const auto& [key, p] : o.terms_) terms_[key] += p;
  prune();
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  require_same_chart(o);
  for (const auto& [key, p] : o.terms_) terms_[key] -= p;
  prune();
  return *this;
}

DiffOp operator*(cplx c, const DiffOp& a) { return LaurentPoly2(c) * a; }

DiffOp operator*(const LaurentPoly2& p, const DiffOp& a) {
  DiffOp out(a.chart_);
  for (const auto& [key, q] : a.terms_) out.terms_[key] = p * q;
  out.prune();
  return out;
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
  a.require_same_chart(b);
  DiffOp out(a.chart_);
  for (const auto& [ka, pa] : a.terms_) {
    const int m = ka.first, n = ka.second;
    for (const auto& [kb, pb] : b.terms_) {
      // d1^m dx^n (pb D) = sum C(m,i) C(n,j) (d1^i dx^j pb) d1^(m-i) dx^(n-j) D
      for (int i = 0; i <= m; ++i) {
        const LaurentPoly2 di = pb.derive(0, i);
        if (di.is_zero()) break;
        for (int j = 0; j <= n; ++j) {
          const LaurentPoly2 dij = di.derive(1, j);
          if (dij.is_zero()) break;
          const double w = binomial(m, i) * binomial(n, j);
          out.terms_[{m - i + kb.first, n - j + kb.second}] += pa * (LaurentPoly2(w) * dij);
        }
      }
    }
  }
  out.prune();
  return out;
}

double DiffOp::max_abs_diff(const DiffOp& o) const {
  require_same_chart(o);
  double worst = 0.0;
  for (const auto& [key, p] : terms_) {
    worst = std::max(worst, p.max_abs_diff(o.coefficient(key.first, key.second)));
  }
  for (const auto& [key, p] : o.terms_) {
    if (!terms_.contains(key)) worst = std::max(worst, p.max_abs_diff(LaurentPoly2()));
  }
  return worst;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  const char* v1 = chart_.kind == ChartKind::SX ? "s" : "t";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, p] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << p.to_string(v1, "x") << "]";
    if (key.first) os << " d" << v1 << "^" << key.first;
    if (key.second) os << " dx^" << key.second;
  }
  return os.str();
}

DiffOp op_compose(const DiffOp& a, const DiffOp& b) { return a * b; }
DiffOp op_commutator(const DiffOp& a, const DiffOp& b) { return a * b - b * a; }

// ------------------------------------------------------------ generators

namespace {

LaurentPoly2 mono(cplx c, int i, int j) { return LaurentPoly2::monomial(c, i, j); }

}  // namespace

GeneratorSet generators_linear(cplx k, double alpha, double beta) {
  if (k == cplx(0.0)) throw ZeroParameter("k must be non-zero");
  const Chart ch{ChartKind::TX, 0.0};
  const cplx k2b = k * k * beta, k3b2 = k * k * k * beta * beta;
  auto dt = [&](const LaurentPoly2& p) { return DiffOp::term(ch, p, 1, 0); };
  auto dx = [&](const LaurentPoly2& p) { return DiffOp::term(ch, p, 0, 1); };
  auto mul = [&](const LaurentPoly2& p) { return DiffOp::multiplication(ch, p); };

  GeneratorSet g;
  g.params = FamilySpec::linear(k, alpha, beta);
  g.chart = ch;
  g.unit = DiffOp::constant(ch, 1.0);
  g.L3 = dt(mono(-1.0, 1, 0)) + dx(mono(-0.5, 0, 1) + mono(-1.5 * k2b, 2, 0)) +
         mul(mono(-k * alpha, 1, 0) + mono(-1.5 * k * beta, 1, 1) + mono(-0.5 * k3b2, 3, 0) +
             LaurentPoly2(-0.25));
  g.Lplus = dt(1.0) + dx(mono(2.0 * k2b, 1, 0)) +
            mul(LaurentPoly2(k * alpha) + mono(k * beta, 0, 1) + mono(k3b2, 2, 0));
  g.Lminus = dt(mono(1.0, 2, 0)) + dx(mono(1.0, 1, 1) + mono(k2b, 3, 0)) +
             mul(mono(0.5, 1, 0) + mono(alpha * k, 2, 0) + mono(0.25 * k3b2, 4, 0) +
                 mono(1.5 * k * beta, 2, 1) + mono(1.0 / (4.0 * k), 0, 2));
  g.T1 = dx(1.0) + mul(mono(k * beta, 1, 0));
  g.T2 = dx(mono(1.0, 1, 0)) + mul(mono(1.0 / (2.0 * k), 0, 1) + mono(k * beta / 2.0, 2, 0));

  g.L3_tilde = g.L3 - g.unit;
  g.Lplus_tilde = g.Lplus;
  g.Lminus_tilde = g.Lminus + mul(mono(2.0, 1, 0));
  g.T1_tilde = g.T1;
  g.T2_tilde = g.T2;

  g.D = dt(1.0);
  g.K = g.D + DiffOp::term(ch, LaurentPoly2(-k), 0, 2) +
        mul(LaurentPoly2(k * alpha) + mono(k * beta, 0, 1));
  g.t_bracket = 1.0 / (2.0 * k);
  g.i3_weight = k;
  return g;
}

GeneratorSet generators_quadratic(cplx k, double alpha, cplx omega) {
  if (k == cplx(0.0)) throw ZeroParameter("k must be non-zero");
  if (omega == cplx(0.0)) throw ZeroParameter("omega must be non-zero");
  const cplx kw = k * omega;
  const Chart ch{ChartKind::SX, kw};
  auto ds = [&](const LaurentPoly2& p) { return DiffOp::term(ch, p, 1, 0); };
  auto dx = [&](const LaurentPoly2& p) { return DiffOp::term(ch, p, 0, 1); };
  auto mul = [&](const LaurentPoly2& p) { return DiffOp::multiplication(ch, p); };
  const cplx aw = alpha / (4.0 * omega);

  GeneratorSet g;
  g.params = FamilySpec::quadratic(k, alpha, omega);
  g.chart = ch;
  g.unit = DiffOp::constant(ch, 1.0);
  // u d/du = (s/2) d/ds with u = s^2.
  g.L3 = ds(mono(-0.5, 1, 0)) + mul(LaurentPoly2(-aw));
  g.Lplus = ds(mono(0.5, -1, 0)) + dx(mono(-0.5, -2, 1)) +
            mul(mono(aw - 0.25, -2, 0) + mono(omega / 2.0, -2, 2));
  g.Lminus = ds(mono(0.5, 3, 0)) + dx(mono(0.5, 2, 1)) +
             mul(mono(aw + 0.25, 2, 0) + mono(omega / 2.0, 2, 2));
  g.T1 = dx(mono(1.0, -1, 0)) + mul(mono(-omega, -1, 1));
  g.T2 = dx(mono(1.0, 1, 0)) + mul(mono(omega, 1, 1));

  g.L3_tilde = g.L3;
  g.Lplus_tilde = g.Lplus - mul(mono(1.0, -2, 0));
  g.Lminus_tilde = g.Lminus + mul(mono(1.0, 2, 0));
  g.T1_tilde = g.T1;
  g.T2_tilde = g.T2;

  g.D = ds(mono(2.0 * kw, 1, 0));
  g.K = g.D + DiffOp::term(ch, LaurentPoly2(-k), 0, 2) +
        mul(LaurentPoly2(k * alpha) + mono(k * omega * omega, 0, 2));
  g.t_bracket = 2.0 * omega;
  g.i3_weight = 1.0 / (4.0 * omega);
  return g;
}

DiffOp casimir_I2(const GeneratorSet& g) { return g.Lplus * g.Lminus - g.L3 * g.L3 + g.L3; }

DiffOp casimir_I3(const GeneratorSet& g) {
  const DiffOp sym = g.T1 * g.T2 + g.T2 * g.T1;
  const DiffOp bracket = g.L3 * sym + g.Lplus * (g.T2 * g.T2) + g.Lminus * (g.T1 * g.T1);
  return g.i3_weight * bracket - casimir_I2(g);
}

double intertwine_defect(const GeneratorSet& g, const DiffOp& kop) {
  if (!(kop.chart() == g.chart)) throw FamilyMismatch("K operator is on a different chart");
  const std::pair<const DiffOp*, const DiffOp*> pairs[] = {
      {&g.L3, &g.L3_tilde}, {&g.Lplus, &g.Lplus_tilde}, {&g.Lminus, &g.Lminus_tilde},
      {&g.T1, &g.T1_tilde}, {&g.T2, &g.T2_tilde}};
  double worst = 0.0;
  for (const auto& [plain, tilde] : pairs) {
    worst = std::max(worst, ((*tilde) * kop).max_abs_diff(kop * (*plain)));
  }
  return worst;
}

bool intertwine_check(const GeneratorSet& g, const DiffOp& kop, double tol) {
  return intertwine_defect(g, kop) <= tol;
}

// ------------------------------------------------------------------ apply

namespace {

// Signed Stirling numbers of the first kind: prod_{j<m} (y - j) = sum_r s(m, r) y^r.
std::vector<double> falling_factorial_coeffs(int m) {
  std::vector<double> c{1.0};
  for (int j = 0; j < m; ++j) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t r = 0; r < c.size(); ++r) {
      next[r + 1] += c[r];
      next[r] -= j * c[r];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

cplx apply(const DiffOp& op, const SmoothFn& fn, const Point& z) {
  if (z.dim() != 1) throw ShapeError("operators act on one-dimensional functions");
  if (op.order() > kJetOrder) throw OrderError("operator order exceeds the available partials");
  if (!fn.has_jets()) throw OrderError(fn.name() + " has no analytic partials");
  const Jet4 jet = fn.jet(z, 0);
  const cplx x = z.x[0];
  cplx sum = 0.0;
  if (op.chart().kind == ChartKind::TX) {
    for (const auto& [key, p] : op.terms()) {
      sum += p.evaluate(z.t, x) * jet.partial(key.first, key.second);
    }
    return sum;
  }
  const cplx kw = op.chart().kw;
  const cplx s = std::exp(2.0 * kw * z.t);
  for (const auto& [key, p] : op.terms()) {
    const int m = key.first, n = key.second;
    // d/ds^m = s^-m prod_{j<m} (theta - j), theta = s d/ds = (1/(2 k omega)) d/dt.
    const auto stirling = falling_factorial_coeffs(m);
    cplx inner = 0.0;
    for (int r = 0; r <= m; ++r) {
      if (stirling[r] == 0.0) continue;
      inner += stirling[r] * std::pow(2.0 * kw, -r) * jet.partial(r, n);
    }
    sum += p.evaluate(s, x) * std::pow(s, -m) * inner;
  }
  return sum;
}

}  // namespace schroedsym
