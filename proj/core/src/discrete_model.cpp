#include "wm/discrete_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wm {

std::vector<std::size_t> DiscreteLayerSpec::control_slots() const {
  std::vector<std::size_t> slots;
  for (std::size_t f = 0; f < factor_sizes.size(); ++f)
    if (factor_controllable(f)) slots.push_back(f);
  return slots;
}

std::vector<std::size_t> DiscreteLayerSpec::control_cardinalities() const {
  std::vector<std::size_t> cards;
  for (std::size_t f : control_slots()) cards.push_back(control_sizes[f]);
  return cards;
}

std::vector<std::string> validate(const DiscreteLayerSpec& spec) {
  std::vector<std::string> bad;
  if (spec.horizon < 1) bad.push_back("horizon must be >= 1");
  if (spec.factor_sizes.empty()) bad.push_back("at least one factor required");
  for (std::size_t f = 0; f < spec.factor_sizes.size(); ++f)
    if (spec.factor_sizes[f] < 2)
      bad.push_back("factor " + std::to_string(f) + " cardinality must be >= 2");
  for (std::size_t m = 0; m < spec.modality_sizes.size(); ++m)
    if (spec.modality_sizes[m] < 1)
      bad.push_back("modality " + std::to_string(m) + " cardinality must be >= 1");
  if (spec.generalised_depth > 3) bad.push_back("generalised_depth must be <= 3");
  if (spec.generalised_depth > 0 && spec.aux_sizes.size() != spec.generalised_depth)
    bad.push_back("aux_sizes must have one cardinality per generalised order");
  for (std::size_t s : spec.aux_sizes)
    if (s < 2) bad.push_back("auxiliary cardinalities must be >= 2");
  if (!spec.generalised.empty() && spec.generalised.size() != spec.factor_sizes.size())
    bad.push_back("generalised flags must match factor count");
  if (!spec.controllable.empty() && spec.controllable.size() != spec.factor_sizes.size())
    bad.push_back("controllable flags must match factor count");
  for (std::size_t f = 0; f < spec.factor_sizes.size(); ++f)
    if (spec.factor_controllable(f) &&
        (f >= spec.control_sizes.size() || spec.control_sizes[f] < 1))
      bad.push_back("controllable factor " + std::to_string(f) +
                    " needs a control cardinality >= 1");
  return bad;
}

std::vector<FactorDesc> apply_generalised_structure(const DiscreteLayerSpec& spec) {
  if (spec.generalised_depth > 3)
    throw DepthExceededError("generalised depth " +
                             std::to_string(spec.generalised_depth) + " exceeds 3");
  const std::size_t nb = spec.num_base_factors();
  const auto slots = spec.control_slots();
  auto slot_of = [&](std::size_t f) {
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (slots[s] == f) return s;
    return std::size_t(0);
  };

  std::vector<FactorDesc> out(nb);
  for (std::size_t f = 0; f < nb; ++f) {
    out[f].size = spec.factor_sizes[f];
    out[f].base = f;
    out[f].order = 0;
  }
  // Auxiliary orders appended after all base factors, chained bottom-up:
  // order k is modulated by order k+1; the top order by the action when the
  // base factor is controllable.
  std::vector<std::size_t> top(nb);
  for (std::size_t f = 0; f < nb; ++f) top[f] = f;
  for (std::size_t f = 0; f < nb; ++f) {
    if (!spec.factor_generalised(f)) continue;
    for (std::size_t k = 1; k <= spec.generalised_depth; ++k) {
      FactorDesc aux;
      aux.size = spec.aux_sizes[k - 1];
      aux.base = f;
      aux.order = k;
      const std::size_t idx = out.size();
      out.push_back(aux);
      out[top[f]].mod = ModKind::factor;
      out[top[f]].mod_index = idx;
      out[top[f]].mod_size = aux.size;
      top[f] = idx;
    }
  }
  for (std::size_t f = 0; f < nb; ++f) {
    if (!spec.factor_controllable(f)) continue;
    out[top[f]].mod = ModKind::action;
    out[top[f]].mod_index = slot_of(f);
    out[top[f]].mod_size = spec.control_sizes[f];
  }
  return out;
}

namespace {

std::vector<std::size_t> observed_factor_indices(const DiscreteLayerSpec& spec,
                                                 const std::vector<FactorDesc>& factors) {
  std::vector<std::size_t> obs;
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (spec.aux_observed || factors[i].order == 0) obs.push_back(i);
  return obs;
}

std::vector<std::size_t> a_shape(const DiscreteLayerModel& m, std::size_t modality) {
  std::vector<std::size_t> shape{m.spec.modality_sizes[modality]};
  for (std::size_t f : m.observed) shape.push_back(m.factors[f].size);
  return shape;
}

}  // namespace

DiscreteLayerModel make_uniform_model(DiscreteLayerSpec spec) {
  auto bad = validate(spec);
  if (!bad.empty()) throw DimensionError("invalid layer spec: " + bad.front());
  DiscreteLayerModel m;
  m.spec = std::move(spec);
  m.factors = apply_generalised_structure(m.spec);
  m.observed = observed_factor_indices(m.spec, m.factors);
  for (std::size_t mod = 0; mod < m.spec.num_modalities(); ++mod) {
    Tensor a(a_shape(m, mod), 1.0);
    a.normalise_slices();
    m.likelihood_a.push_back(std::move(a));
    m.preferences_c.emplace_back(
        std::vector<std::size_t>{m.spec.horizon, m.spec.modality_sizes[mod]}, 0.0);
  }
  for (const FactorDesc& f : m.factors) {
    Tensor b({f.size, f.size, f.mod_size}, 1.0);
    b.normalise_slices();
    m.transitions_b.push_back(std::move(b));
    m.prior_d.push_back(Categorical::uniform(f.size));
  }
  return m;
}

std::vector<std::string> validate(const DiscreteLayerModel& m) {
  std::vector<std::string> bad = validate(m.spec);
  auto check_tensor = [&bad](const Tensor& t, const std::string& name) {
    const std::size_t card = t.shape().empty() ? 0 : t.shape()[0];
    for (std::size_t s = 0; s < t.slice_count(); ++s) {
      double total = 0.0;
      for (std::size_t i = 0; i < card; ++i) {
        const double x = t.at_slice(i, s);
        if (x < 0.0 || !std::isfinite(x))
          bad.push_back(name + ": negative or non-finite entry at slice " +
                        std::to_string(s) + ", index " + std::to_string(i));
        total += x;
      }
      if (std::abs(total - 1.0) > kProbTol)
        bad.push_back(name + ": slice " + std::to_string(s) + " sums to " +
                      std::to_string(total));
    }
  };
  if (m.likelihood_a.size() != m.spec.num_modalities())
    bad.push_back("likelihood tensor count mismatch");
  if (m.transitions_b.size() != m.factors.size())
    bad.push_back("transition tensor count mismatch");
  if (m.prior_d.size() != m.factors.size()) bad.push_back("prior count mismatch");
  for (std::size_t mod = 0; mod < m.likelihood_a.size(); ++mod)
    check_tensor(m.likelihood_a[mod], "A[" + std::to_string(mod) + "]");
  for (std::size_t f = 0; f < m.transitions_b.size(); ++f) {
    check_tensor(m.transitions_b[f], "B[" + std::to_string(f) + "]");
    if (f < m.factors.size()) {
      const auto& shape = m.transitions_b[f].shape();
      if (shape.size() != 3 || shape[0] != m.factors[f].size ||
          shape[1] != m.factors[f].size || shape[2] != m.factors[f].mod_size)
        bad.push_back("B[" + std::to_string(f) + "]: shape mismatch");
    }
  }
  for (std::size_t f = 0; f < m.prior_d.size(); ++f) {
    if (!is_valid(m.prior_d[f]))
      bad.push_back("D[" + std::to_string(f) + "]: not a valid categorical");
    if (f < m.factors.size() && m.prior_d[f].size() != m.factors[f].size)
      bad.push_back("D[" + std::to_string(f) + "]: size mismatch");
  }
  return bad;
}

DirichletModel uniform_counts(const DiscreteLayerModel& m, double count) {
  DirichletModel dir;
  for (const Tensor& a : m.likelihood_a)
    dir.a.emplace_back(Tensor(a.shape(), count));
  for (const Tensor& b : m.transitions_b)
    dir.b.emplace_back(Tensor(b.shape(), count));
  for (const Categorical& d : m.prior_d)
    dir.d.emplace_back(Tensor({d.size()}, count));
  return dir;
}

DirichletModel counts_from_model(const DiscreteLayerModel& m, double weight) {
  DirichletModel dir;
  for (const Tensor& a : m.likelihood_a) {
    Tensor t = a;
    for (double& x : t.data()) x *= weight;
    dir.a.emplace_back(std::move(t));
  }
  for (const Tensor& b : m.transitions_b) {
    Tensor t = b;
    for (double& x : t.data()) x *= weight;
    dir.b.emplace_back(std::move(t));
  }
  for (const Categorical& d : m.prior_d) {
    Tensor t({d.size()});
    for (std::size_t i = 0; i < d.size(); ++i) t[i] = d[i] * weight;
    dir.d.emplace_back(std::move(t));
  }
  return dir;
}

DiscreteLayerModel mean_model(const DiscreteLayerModel& shell, const DirichletModel& dir) {
  DiscreteLayerModel m = shell;
  for (std::size_t mod = 0; mod < m.likelihood_a.size(); ++mod) {
    if (!m.likelihood_a[mod].same_shape(dir.a[mod].counts))
      throw ShapeMismatchError("mean_model: A shape mismatch");
    m.likelihood_a[mod] = dir.a[mod].counts;
    m.likelihood_a[mod].normalise_slices();
  }
  for (std::size_t f = 0; f < m.transitions_b.size(); ++f) {
    m.transitions_b[f] = dir.b[f].counts;
    m.transitions_b[f].normalise_slices();
  }
  for (std::size_t f = 0; f < m.prior_d.size(); ++f) {
    Tensor t = dir.d[f].counts;
    t.normalise_slices();
    m.prior_d[f] = Categorical(t.data());
  }
  return m;
}

std::size_t parameter_count(const DiscreteLayerModel& m) {
  std::size_t n = 0;
  for (const Tensor& a : m.likelihood_a)
    n += (a.shape()[0] - 1) * a.slice_count();
  for (const Tensor& b : m.transitions_b)
    n += (b.shape()[0] - 1) * b.slice_count();
  for (const Categorical& d : m.prior_d) n += d.size() - 1;
  return n;
}

namespace {

std::size_t modulator_value(const DiscreteLayerModel& m, std::size_t f,
                            const std::vector<std::size_t>& state, const ActionVec& action) {
  const FactorDesc& fd = m.factors[f];
  switch (fd.mod) {
    case ModKind::none: return 0;
    case ModKind::factor: return state[fd.mod_index];
    case ModKind::action: return action.at(fd.mod_index);
  }
  return 0;
}

}  // namespace

DiscreteTrajectory sample_trajectory(const DiscreteLayerModel& m,
                                     const std::vector<ActionVec>& actions,
                                     std::uint64_t seed) {
  const std::size_t T = m.horizon();
  if (actions.size() != T - 1)
    throw LengthMismatchError("sample_trajectory: need " + std::to_string(T - 1) +
                              " actions, got " + std::to_string(actions.size()));
  const auto slots = m.spec.control_slots();
  for (const ActionVec& a : actions)
    if (a.size() != slots.size())
      throw LengthMismatchError("sample_trajectory: action vector size mismatch");

  Rng rng(seed);
  DiscreteTrajectory traj;
  traj.states.resize(T);
  traj.outcomes.resize(T);

  std::vector<std::size_t> state(m.num_factors());
  for (std::size_t f = 0; f < m.num_factors(); ++f)
    state[f] = rng.categorical(m.prior_d[f].probs);

  std::vector<std::size_t> a_idx;
  for (std::size_t t = 0; t < T; ++t) {
    traj.states[t] = state;
    traj.outcomes[t].resize(m.num_modalities());
    for (std::size_t mod = 0; mod < m.num_modalities(); ++mod) {
      const Tensor& a = m.likelihood_a[mod];
      a_idx.assign(1, 0);
      for (std::size_t f : m.observed) a_idx.push_back(state[f]);
      std::vector<double> w(a.shape()[0]);
      for (std::size_t o = 0; o < w.size(); ++o) {
        a_idx[0] = o;
        w[o] = a.at(a_idx);
      }
      traj.outcomes[t][mod] = rng.categorical(w);
    }
    if (t + 1 == T) break;
    std::vector<std::size_t> next(m.num_factors());
    for (std::size_t f = 0; f < m.num_factors(); ++f) {
      const Tensor& b = m.transitions_b[f];
      const std::size_t mod_v = modulator_value(m, f, state, actions[t]);
      std::vector<double> w(b.shape()[0]);
      for (std::size_t s = 0; s < w.size(); ++s)
        w[s] = b.at(std::array<std::size_t, 3>{s, state[f], mod_v});
      next[f] = rng.categorical(w);
    }
    state = std::move(next);
  }
  return traj;
}

namespace {

using nlohmann::json;

json tensor_to_json(const Tensor& t) {
  return json{{"shape", t.shape()}, {"data", t.data()}};
}

Tensor tensor_from_json(const json& j) {
  Tensor t(j.at("shape").get<std::vector<std::size_t>>());
  t.data() = j.at("data").get<std::vector<double>>();
  std::size_t n = 1;
  for (std::size_t s : t.shape()) n *= s;
  if (t.data().size() != n) throw ShapeMismatchError("tensor data/shape mismatch");
  return t;
}

}  // namespace

std::string model_to_json(const DiscreteLayerModel& m) {
  json j;
  j["format_version"] = 1;
  json spec;
  spec["factor_sizes"] = m.spec.factor_sizes;
  spec["modality_sizes"] = m.spec.modality_sizes;
  spec["horizon"] = m.spec.horizon;
  spec["generalised_depth"] = m.spec.generalised_depth;
  spec["aux_sizes"] = m.spec.aux_sizes;
  spec["generalised"] = m.spec.generalised;
  spec["controllable"] = m.spec.controllable;
  spec["control_sizes"] = m.spec.control_sizes;
  spec["aux_observed"] = m.spec.aux_observed;
  j["spec"] = spec;
  j["A"] = json::array();
  for (const Tensor& a : m.likelihood_a) j["A"].push_back(tensor_to_json(a));
  j["B"] = json::array();
  for (const Tensor& b : m.transitions_b) j["B"].push_back(tensor_to_json(b));
  j["D"] = json::array();
  for (const Categorical& d : m.prior_d) j["D"].push_back(d.probs);
  j["C"] = json::array();
  for (const Tensor& c : m.preferences_c) j["C"].push_back(tensor_to_json(c));
  return j.dump(2);
}

DiscreteLayerModel model_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("format_version", 0) != 1)
    throw ConfigError("model document: unsupported format_version");
  const json& spec = j.at("spec");
  DiscreteLayerSpec s;
  s.factor_sizes = spec.at("factor_sizes").get<std::vector<std::size_t>>();
  s.modality_sizes = spec.at("modality_sizes").get<std::vector<std::size_t>>();
  s.horizon = spec.at("horizon").get<std::size_t>();
  s.generalised_depth = spec.value("generalised_depth", std::size_t{0});
  s.aux_sizes = spec.value("aux_sizes", std::vector<std::size_t>{});
  s.generalised = spec.value("generalised", std::vector<bool>{});
  s.controllable = spec.value("controllable", std::vector<bool>{});
  s.control_sizes = spec.value("control_sizes", std::vector<std::size_t>{});
  s.aux_observed = spec.value("aux_observed", false);

  DiscreteLayerModel m = make_uniform_model(std::move(s));
  const json& ja = j.at("A");
  for (std::size_t i = 0; i < m.likelihood_a.size(); ++i)
    m.likelihood_a[i] = tensor_from_json(ja.at(i));
  const json& jb = j.at("B");
  for (std::size_t i = 0; i < m.transitions_b.size(); ++i)
    m.transitions_b[i] = tensor_from_json(jb.at(i));
  const json& jd = j.at("D");
  for (std::size_t i = 0; i < m.prior_d.size(); ++i)
    m.prior_d[i] = Categorical(jd.at(i).get<std::vector<double>>());
  const json& jc = j.at("C");
  for (std::size_t i = 0; i < m.preferences_c.size(); ++i)
    m.preferences_c[i] = tensor_from_json(jc.at(i));
  return m;
}

void save_model(const std::filesystem::path& path, const DiscreteLayerModel& m) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << model_to_json(m) << "\n";
}

DiscreteLayerModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace wm
