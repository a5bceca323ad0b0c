#include "gsts/bench.hpp"

#include <cmath>
#include <memory>

#include "gsts/errors.hpp"
#include "gsts/extra_preconditioners.hpp"

namespace gsts::bench {

std::optional<Method> parse_method(const std::string& tag) {
  if (tag == "gsts-i") return Method::gsts_i;
  if (tag == "gsts-ii") return Method::gsts_ii;
  if (tag == "gsts-iii") return Method::gsts_iii;
  if (tag == "gsor-i") return Method::gsor_i;
  if (tag == "gsor-ii") return Method::gsor_ii;
  return std::nullopt;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::gsts_i: return "gsts-i";
    case Method::gsts_ii: return "gsts-ii";
    case Method::gsts_iii: return "gsts-iii";
    case Method::gsor_i: return "gsor-i";
    case Method::gsor_ii: return "gsor-ii";
  }
  return "?";
}

std::optional<Precond> parse_precond(const std::string& tag) {
  if (tag == "gsts-i") return Precond::gsts_i;
  if (tag == "gsts-ii") return Precond::gsts_ii;
  if (tag == "gsts-iii") return Precond::gsts_iii;
  if (tag == "gsor-i") return Precond::gsor_i;
  if (tag == "gsor-ii") return Precond::gsor_ii;
  if (tag == "cp-i") return Precond::cp_i;
  if (tag == "cp-ii") return Precond::cp_ii;
  if (tag == "hss") return Precond::hss;
  return std::nullopt;
}

std::string precond_name(Precond p) {
  switch (p) {
    case Precond::gsts_i: return "gsts-i";
    case Precond::gsts_ii: return "gsts-ii";
    case Precond::gsts_iii: return "gsts-iii";
    case Precond::gsor_i: return "gsor-i";
    case Precond::gsor_ii: return "gsor-ii";
    case Precond::cp_i: return "cp-i";
    case Precond::cp_ii: return "cp-ii";
    case Precond::hss: return "hss";
  }
  return "?";
}

const std::vector<StationaryRef>& stationary_refs() {
  static const std::vector<StationaryRef> refs = {
      {Method::gsts_i, 1.0, 0.98, 1.01, 3},
      {Method::gsts_ii, 1.0, 0.99, 1.03, 12},
      {Method::gsts_iii, 1.0, 0.97, 1.02, 13},
      {Method::gsor_i, 1.0, 0.89, 2.07, 14},
      {Method::gsor_ii, 1.0, 0.89, 2.11, 14},
      {Method::gsts_i, 0.01, 0.99, 1.00, 3},
      {Method::gsts_ii, 0.01, 0.01, 0.30, 73},
      {Method::gsts_iii, 0.01, 0.02, 0.34, 63},
      {Method::gsor_i, 0.01, 0.38, 0.24, 68},
      {Method::gsor_ii, 0.01, 0.43, 0.28, 58},
      {Method::gsts_i, 0.0001, 0.98, 1.00, 3},
      {Method::gsts_ii, 0.0001, 0.01, 0.17, 115},
      {Method::gsts_iii, 0.0001, 0.01, 0.24, 110},
      {Method::gsor_i, 0.0001, 0.24, 0.14, 164},
      {Method::gsor_ii, 0.0001, 0.32, 0.20, 118},
  };
  return refs;
}

const std::vector<GmresRef>& gmres_refs() {
  static const std::vector<GmresRef> refs = {
      {1.0, 182},
      {0.01, 404},
      {0.0001, 637},
  };
  return refs;
}

const std::vector<PrecondRef>& precond_refs() {
  static const std::vector<PrecondRef> refs = {
      {Precond::gsts_i, 1.0, 14},    {Precond::gsts_i, 0.01, 11},
      {Precond::gsts_i, 0.0001, 3},  {Precond::gsts_ii, 1.0, 17},
      {Precond::gsts_ii, 0.01, 18},  {Precond::gsts_ii, 0.0001, 4},
      {Precond::gsts_iii, 1.0, 17},  {Precond::gsts_iii, 0.01, 16},
      {Precond::gsts_iii, 0.0001, 3},{Precond::gsor_i, 1.0, 26},
      {Precond::gsor_i, 0.01, 27},   {Precond::gsor_i, 0.0001, 8},
      {Precond::gsor_ii, 1.0, 26},   {Precond::gsor_ii, 0.01, 22},
      {Precond::gsor_ii, 0.0001, 6}, {Precond::cp_i, 1.0, 34},
      {Precond::cp_i, 0.01, 29},     {Precond::cp_i, 0.0001, 41},
      {Precond::cp_ii, 1.0, 34},     {Precond::cp_ii, 0.01, 28},
      {Precond::cp_ii, 0.0001, 41},  {Precond::hss, 1.0, 21},
      {Precond::hss, 0.01, 22},      {Precond::hss, 0.0001, 19},
  };
  return refs;
}

const StationaryRef* find_stationary_ref(Method m, double nu) {
  for (const auto& r : stationary_refs())
    if (r.method == m && r.nu == nu) return &r;
  return nullptr;
}

const PrecondRef* find_precond_ref(Precond p, double nu) {
  for (const auto& r : precond_refs())
    if (r.precond == p && r.nu == nu) return &r;
  return nullptr;
}

StationaryConfig stationary_config(Method m, double col1, double col2) {
  StationaryConfig c;
  switch (m) {
    case Method::gsts_i:
      c.choice.kind = BKind::schur_exact;
      c.params = {col2, col1, col2};
      break;
    case Method::gsts_ii:
      c.choice.kind = BKind::shifted_diag;
      c.params = {col2, col1, col2};
      break;
    case Method::gsts_iii:
      c.choice.kind = BKind::shifted_tridiag;
      c.params = {col2, col1, col2};
      break;
    case Method::gsor_i:
      c.choice.kind = BKind::gsor_diag;
      c.choice.scale = col1 / col2; // tau / nu_g
      c.params = {col1, 0.0, col1};
      break;
    case Method::gsor_ii:
      c.choice.kind = BKind::gsor_tridiag;
      c.choice.scale = col1 / col2;
      c.params = {col1, 0.0, col1};
      break;
  }
  c.params.validate();
  return c;
}

Band stationary_band(Method m, double nu) {
  const StationaryRef* ref = find_stationary_ref(m, nu);
  if (ref == nullptr) throw InvalidArgument("no reference row for this method");
  if (m == Method::gsts_i) return {1, 6};
  if (m == Method::gsts_ii) {
    const std::size_t margin = nu == 1.0 ? 4 : (nu == 0.01 ? 20 : 30);
    return {ref->it - margin, ref->it + margin};
  }
  const double it = static_cast<double>(ref->it);
  return {static_cast<std::size_t>(std::ceil(0.7 * it - 1e-9)),
          static_cast<std::size_t>(std::floor(1.3 * it + 1e-9))};
}

LinearOp make_preconditioner(const SaddleSystem& sys, Precond p, double /*nu*/,
                             double hss_alpha) {
  switch (p) {
    case Precond::gsts_i:
    case Precond::gsts_ii:
    case Precond::gsts_iii:
    case Precond::gsor_i:
    case Precond::gsor_ii: {
      BChoice choice;
      double omega1 = 1.0;
      double omega2 = 1.0;
      switch (p) {
        case Precond::gsts_i: choice.kind = BKind::schur_exact; break;
        case Precond::gsts_ii: choice.kind = BKind::shifted_diag; break;
        case Precond::gsts_iii: choice.kind = BKind::shifted_tridiag; break;
        case Precond::gsor_i:
          choice.kind = BKind::gsor_diag;
          omega2 = 0.0;
          break;
        case Precond::gsor_ii:
          choice.kind = BKind::gsor_tridiag;
          omega2 = 0.0;
          break;
        default: break;
      }
      auto b = std::make_shared<BOperator>(build_b(sys, choice));
      auto pre =
          std::make_shared<GstsPreconditioner>(sys, *b, omega1, omega2);
      return [b, pre](const Vector& r) { return pre->apply(r); };
    }
    case Precond::cp_i: {
      auto cp = std::make_shared<ConstraintPreconditioner>(
          sys, ConstraintPreconditioner::PKind::diag);
      return [cp](const Vector& r) { return cp->apply(r); };
    }
    case Precond::cp_ii: {
      auto cp = std::make_shared<ConstraintPreconditioner>(
          sys, ConstraintPreconditioner::PKind::tridiag);
      return [cp](const Vector& r) { return cp->apply(r); };
    }
    case Precond::hss: {
      auto h = std::make_shared<HssPreconditioner>(sys, hss_alpha);
      return [h](const Vector& r) { return h->apply(r); };
    }
  }
  throw InvalidArgument("unknown preconditioner tag");
}

double pick_hss_alpha(const SaddleSystem& sys, const SolverConfig& cfg) {
  static const double grid[] = {1e-3, 1e-2, 0.1, 0.5, 1.0,
                                2.0,  10.0, 20.0, 50.0, 100.0};
  const LinearOp a = saddle_operator(sys);
  double best_alpha = grid[0];
  std::size_t best_it = 0;
  bool have = false;
  for (double alpha : grid) {
    const LinearOp pre = make_preconditioner(sys, Precond::hss, 0.0, alpha);
    const IterationReport rep = gmres_solve(a, stacked_rhs(sys), pre, cfg);
    if (!rep.converged) continue;
    if (!have || rep.iterations < best_it) {
      have = true;
      best_it = rep.iterations;
      best_alpha = alpha;
    }
  }
  if (!have)
    throw NonConvergence("hss: no shift on the candidate grid converged");
  return best_alpha;
}

} // namespace gsts::bench
