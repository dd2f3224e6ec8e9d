#include "qprop/composition.hpp"

#include <algorithm>
#include <sstream>

namespace qprop {

CompositeSpace::CompositeSpace(std::vector<Index> factor_dims) : dims_(std::move(factor_dims)) {
  if (dims_.empty()) throw Error(ErrorCode::InvalidInput, "composite space needs a factor");
  for (Index d : dims_) {
    if (d <= 0) throw Error(ErrorCode::InvalidInput, "factor dimensions must be positive");
    total_ *= d;
  }
}

Subspace CompositeSpace::lift(std::size_t factor, const Subspace& s) const {
  if (factor >= dims_.size() || s.ambient_dim() != dims_[factor]) {
    throw Error(ErrorCode::DimensionMismatch, "lift: factor index or dimension mismatch");
  }
  Subspace out = factor == 0 ? s : Subspace::full(dims_[0]);
  for (std::size_t k = 1; k < dims_.size(); ++k) {
    out = tensor_subspace(out, k == factor ? s : Subspace::full(dims_[k]));
  }
  return out;
}

ComplexMatrix CompositeSpace::lift(std::size_t factor, const ComplexMatrix& m) const {
  if (factor >= dims_.size() || m.rows() != dims_[factor] || m.cols() != dims_[factor]) {
    throw Error(ErrorCode::DimensionMismatch, "lift: factor index or dimension mismatch");
  }
  ComplexMatrix out = factor == 0 ? m : identity_matrix(dims_[0]);
  for (std::size_t k = 1; k < dims_.size(); ++k) {
    out = kron(out, k == factor ? m : identity_matrix(dims_[k]));
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Subspace tensor_subspace(const Subspace& a, const Subspace& b) {
  return Subspace::from_orthonormal(kron(a.basis(), b.basis()));
}

StateVector tensor_state(const StateVector& a, const StateVector& b) {
  return StateVector(kron(a.amplitudes(), b.amplitudes()));
}

Projector tensor_projector(const Projector& p, const Projector& q) {
  return Projector::from_matrix(kron(p.matrix(), q.matrix()));
}

Context build_sigma_A() {
  const Projector sz_plus = spin_projector(Axis::Z, true);
  const Projector sz_minus = spin_projector(Axis::Z, false);
  const Projector sx_plus = spin_projector(Axis::X, true);
  const Projector sx_minus = spin_projector(Axis::X, false);
  const Projector env_plus = spin_projector(Axis::Z, true);
  const Projector env_minus = spin_projector(Axis::Z, false);
  return Context::create("Sigma_A",
                         {tensor_projector(sz_plus, env_minus), tensor_projector(sz_minus, env_minus),
                          tensor_projector(sx_plus, env_plus), tensor_projector(sx_minus, env_plus)},
                         {"P_Sz+∧P_1z-", "P_Sz-∧P_1z-", "P_Sx+∧P_1z+", "P_Sx-∧P_1z+"});
}

Scenario build_environment_scenario(Index n_env, Index splice_index,
                                    std::span<const Context> system_contexts, Axis env_axis,
                                    Index max_dim) {
  if (n_env < 1) throw Error(ErrorCode::InvalidInput, "need at least one environment qubit");
  if (splice_index < 1 || splice_index > n_env) {
    std::ostringstream os;
    os << "splice index " << splice_index << " outside 1.." << n_env;
    throw Error(ErrorCode::InvalidSplice, os.str());
  }
  if (system_contexts.size() < 2) {
    throw Error(ErrorCode::InvalidInput, "need two system contexts to splice");
  }
  const Index ds = system_contexts.front().dim();
  for (const auto& c : system_contexts) {
    if (c.dim() != ds) throw Error(ErrorCode::DimensionMismatch, "system contexts differ in dimension");
    if (c.label() == "Sigma_A") {
      throw Error(ErrorCode::InvalidInput, "system context label 'Sigma_A' is reserved");
    }
  }
  Index total = ds;
  for (Index k = 0; k < n_env; ++k) {
    if (total > max_dim / 2) {
      std::ostringstream os;
      os << "total dimension " << ds << "*2^" << n_env << " exceeds cap " << max_dim;
      throw Error(ErrorCode::TooLarge, os.str());
    }
    total *= 2;
  }

  std::vector<Index> factors{ds};
  factors.insert(factors.end(), static_cast<std::size_t>(n_env), 2);
  const CompositeSpace space(factors);
  const CompositeSpace env_space(std::vector<Index>(static_cast<std::size_t>(n_env), 2));
  const auto k = static_cast<std::size_t>(splice_index - 1);
  const std::string env_tag = "P_" + std::to_string(splice_index) + axis_char(env_axis);

  const ComplexMatrix env_plus = env_space.lift(k, spin_projector(env_axis, true).matrix());
  const ComplexMatrix env_minus = env_space.lift(k, spin_projector(env_axis, false).matrix());
  const ComplexMatrix env_identity = identity_matrix(env_space.total_dim());

  Scenario sc;
  sc.dimension = total;
  sc.factors = factors;

  const Context& home_ctx = system_contexts[0];
  const Context& q_ctx = system_contexts[1];

  for (const auto& c : system_contexts) {
    std::vector<Projector> lifted;
    for (const auto& p : c.projectors()) {
      lifted.push_back(Projector::from_matrix(kron(p.matrix(), env_identity)));
    }
    sc.contexts.push_back(Context::create(c.label(), std::move(lifted), c.member_names()));
  }

  std::vector<Projector> spliced;
  std::vector<std::string> spliced_names;
  for (std::size_t i = 0; i < home_ctx.size(); ++i) {
    spliced.push_back(Projector::from_matrix(kron(home_ctx.projectors()[i].matrix(), env_minus)));
    spliced_names.push_back(home_ctx.member_names()[i] + "∧" + env_tag + "-");
  }
  for (std::size_t i = 0; i < q_ctx.size(); ++i) {
    spliced.push_back(Projector::from_matrix(kron(q_ctx.projectors()[i].matrix(), env_plus)));
    spliced_names.push_back(q_ctx.member_names()[i] + "∧" + env_tag + "+");
  }
  sc.contexts.push_back(Context::create("Sigma_A", std::move(spliced), spliced_names));

  auto add_prop = [&](std::string name, Subspace s) {
    if (!sc.has_proposition(name)) sc.propositions.push_back({std::move(name), std::move(s)});
  };
  for (std::size_t c = 0; c < system_contexts.size(); ++c) {
    const Context& sys = system_contexts[c];
    for (std::size_t i = 0; i < sys.size(); ++i) {
      add_prop(sys.member_names()[i], sc.contexts[c].ranges()[i]);
    }
  }
  const Subspace env_plus_range = range_of(Projector::from_matrix(env_plus));
  const Subspace env_minus_range = range_of(Projector::from_matrix(env_minus));
  add_prop(env_tag + "+", tensor_subspace(Subspace::full(ds), env_plus_range));
  add_prop(env_tag + "-", tensor_subspace(Subspace::full(ds), env_minus_range));
  const Context& sigma_a = sc.contexts.back();
  for (std::size_t i = 0; i < sigma_a.size(); ++i) {
    add_prop(sigma_a.member_names()[i], sigma_a.ranges()[i]);
  }

  // System state: first basis vector of the first member's range; every
  // environment qubit in the preferred "-" state.
  const Subspace& home_range = home_ctx.ranges().front();
  ComplexVector env_state = spin_state(env_axis, false);
  for (Index j = 1; j < n_env; ++j) env_state = kron(env_state, spin_state(env_axis, false));
  const StateVector composite(kron(home_range.basis().col(0), env_state));

  sc.states.push_back({"Psi", composite, tensor_subspace(home_range, Subspace::full(env_space.total_dim()))});
  sc.states.push_back({"Psi_eps", composite, sigma_a.ranges().front()});

  sc.evaluation.state = "Psi_eps";
  sc.evaluation.context = "Sigma_A";
  sc.evaluation.collection = {"Sigma_A"};

  EnvironmentSpec env;
  env.n_env = n_env;
  env.splice_index = splice_index;
  env.axis = env_axis;
  env.isolated_state = "Psi";
  for (const auto& c : system_contexts) env.isolated_contexts.push_back(c.label());
  env.composite_state = "Psi_eps";
  env.composite_context = "Sigma_A";
  env.q = q_ctx.member_names().front();
  env.env_prop = env_tag + "+";
  sc.environment = std::move(env);
  return sc;
}

std::string_view to_string(PostStatus s) {
  return s == PostStatus::Bivalent ? "Bivalent" : "StillGap";
}

std::string_view to_string(BivalenceRoute r) {
  switch (r) {
    case BivalenceRoute::Inference: return "inference";
    case BivalenceRoute::Determinate: return "determinate";
    case BivalenceRoute::None: return "none";
  }
  return "none";
}

BivalenceReport induced_bivalence(const Scenario& scenario, const std::string& q,
                                  const std::string& env_prop) {
  if (!scenario.environment) {
    throw Error(ErrorCode::MissingContext, "scenario declares no environment setup");
  }
  const EnvironmentSpec& env = *scenario.environment;
  if (!scenario.has_context(env.composite_context)) {
    throw Error(ErrorCode::MissingContext,
                "composite context '" + env.composite_context + "' is not declared");
  }
  if (!scenario.has_proposition(env_prop)) {
    throw Error(ErrorCode::MissingEnvProp, "environment proposition '" + env_prop + "' is not declared");
  }
  const double tol = effective_tol(scenario.eps.value_or(kDefaultEps));
  const Proposition& prop = scenario.proposition(q);
  const Proposition& companion = scenario.proposition(env_prop);

  BivalenceReport report;
  report.proposition = prop.name;
  report.companion_env_prop = companion.name;

  const ValuationInput isolated = scenario.valuation_input(env.isolated_state, env.isolated_contexts, tol);
  report.pre_value = evaluate(isolated, prop);

  const ValuationInput coupled = scenario.valuation_input(env.composite_state, {}, tol);
  report.companion_value = evaluate(coupled, companion);

  // The system and environment factors commute, so the meet is the tensor
  // product of the system range with the environment range.
  const Proposition conjunction{prop.name + "∧" + companion.name, meet(prop.subspace, companion.subspace, tol)};
  report.conjunction = conjunction.name;
  report.conjunction_value = evaluate(coupled, conjunction);
  const auto witnesses = find_common_lattices(coupled.collection(), coupled.home(), conjunction.subspace, tol);
  if (!witnesses.empty()) report.witness_lattice = witnesses.front();

  if (report.pre_value != TruthValue::Gap) {
    report.post_status = PostStatus::Bivalent;
    report.route = BivalenceRoute::Determinate;
  } else if (report.companion_value == TruthValue::False && report.conjunction_value == TruthValue::False) {
    report.post_status = PostStatus::Bivalent;
    report.route = BivalenceRoute::Inference;
  } else {
    report.post_status = PostStatus::StillGap;
    report.route = BivalenceRoute::None;
  }
  return report;
}

StabilityVerdict stability_filter(const CompositeSpace& space, Axis env_axis,
                                  std::span<const Context> candidates, double tol) {
  tol = effective_tol(tol);
  std::vector<ComplexMatrix> preferred;
  for (std::size_t f = 1; f < space.factor_count(); ++f) {
    if (space.factor_dims()[f] != 2) {
      throw Error(ErrorCode::InvalidInput, "environment factors must be qubits");
    }
    preferred.push_back(space.lift(f, spin_projector(env_axis, true).matrix()));
  }

  StabilityVerdict verdict;
  for (const auto& ctx : candidates) {
    if (ctx.dim() != space.total_dim()) {
      verdict.rejected.emplace_back(ctx.label(), "dimension does not match the composite space");
      continue;
    }
    std::string reason;
    for (std::size_t i = 0; i < ctx.size() && reason.empty(); ++i) {
      for (std::size_t f = 0; f < preferred.size(); ++f) {
        const double norm = commutator(ctx.projectors()[i].matrix(), preferred[f]).norm();
        if (norm > tol) {
          std::ostringstream os;
          os << "member " << ctx.member_names()[i] << " is not diagonal in the " << axis_char(env_axis)
             << " basis of environment qubit " << (f + 1) << " (commutator norm " << norm << ")";
          reason = os.str();
          break;
        }
      }
    }
    if (reason.empty()) {
      verdict.retained.push_back(ctx);
    } else {
      verdict.rejected.emplace_back(ctx.label(), std::move(reason));
    }
  }
  return verdict;
}

}  // namespace qprop
