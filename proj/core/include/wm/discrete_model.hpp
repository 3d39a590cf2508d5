#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wm/beliefs.hpp"
#include "wm/tensor.hpp"

namespace wm {

// One discrete POMDP layer: latent factors with per-factor cardinalities,
// outcome modalities, a finite horizon, and optional generalised chains
// (auxiliary order-k states whose value modulates the order below). The
// highest order of a controllable factor is driven by the action.
struct DiscreteLayerSpec {
  std::vector<std::size_t> factor_sizes;   // base factor cardinalities (>= 2)
  std::vector<std::size_t> modality_sizes; // outcome cardinalities (>= 1)
  std::size_t horizon = 1;                 // T
  std::size_t generalised_depth = 0;       // g, auxiliary orders per flagged factor
  std::vector<std::size_t> aux_sizes;      // cardinality of each auxiliary order (length g)
  std::vector<bool> generalised;           // base factors that get the chain (empty + g>0 = all)
  std::vector<bool> controllable;          // per base factor
  std::vector<std::size_t> control_sizes;  // action cardinality per base factor (0 if not controllable)
  bool aux_observed = false;               // whether auxiliary states condition the likelihood

  std::size_t num_base_factors() const { return factor_sizes.size(); }
  std::size_t num_modalities() const { return modality_sizes.size(); }
  bool factor_generalised(std::size_t f) const {
    if (generalised_depth == 0) return false;
    return generalised.empty() ? true : generalised[f];
  }
  bool factor_controllable(std::size_t f) const {
    return f < controllable.size() && controllable[f];
  }
  // Controllable base factors in order; one action slot each.
  std::vector<std::size_t> control_slots() const;
  std::vector<std::size_t> control_cardinalities() const;
};

std::vector<std::string> validate(const DiscreteLayerSpec& spec);

enum class ModKind { none, factor, action };

// One factor of the expanded (generalised) factor list.
struct FactorDesc {
  std::size_t size = 0;
  std::size_t base = 0;       // base-factor index this order belongs to
  std::size_t order = 0;      // 0 = the base factor itself
  ModKind mod = ModKind::none;
  std::size_t mod_index = 0;  // expanded-factor index (factor) or control slot (action)
  std::size_t mod_size = 1;
};

// Expands base factors into generalised chains: order k+1 modulates the
// transition of order k; the highest order of a controllable factor is
// modulated by the action. Base factors come first, auxiliary orders are
// appended per flagged factor.
std::vector<FactorDesc> apply_generalised_structure(const DiscreteLayerSpec& spec);

struct DiscreteLayerModel {
  DiscreteLayerSpec spec;
  std::vector<FactorDesc> factors;       // expanded list
  std::vector<std::size_t> observed;     // expanded-factor indices the likelihood conditions on
  std::vector<Tensor> likelihood_a;      // per modality: [card, observed factor sizes...]
  std::vector<Tensor> transitions_b;     // per expanded factor: [next, current, modulator]
  std::vector<Categorical> prior_d;      // per expanded factor
  std::vector<Tensor> preferences_c;     // per modality: [horizon, card] log preferences

  std::size_t num_factors() const { return factors.size(); }
  std::size_t num_modalities() const { return spec.num_modalities(); }
  std::size_t horizon() const { return spec.horizon; }
};

// Builds the expanded model shell with uniform tensors and zero preferences.
DiscreteLayerModel make_uniform_model(DiscreteLayerSpec spec);

// Returns every invariant violation (empty = ok). Diagnoses rather than throws.
std::vector<std::string> validate(const DiscreteLayerModel& m);

// Dirichlet pseudo-counts over the model's A/B/D tensors.
struct DirichletModel {
  std::vector<DirichletCounts> a;
  std::vector<DirichletCounts> b;
  std::vector<DirichletCounts> d;
};

DirichletModel uniform_counts(const DiscreteLayerModel& m, double count = 1.0);
// Counts from the model's own tensors scaled by `weight` (an informed prior).
DirichletModel counts_from_model(const DiscreteLayerModel& m, double weight);
// Normalised counts written back into a copy of the shell.
DiscreteLayerModel mean_model(const DiscreteLayerModel& shell, const DirichletModel& dir);
std::size_t parameter_count(const DiscreteLayerModel& m);

// One action per controllable base factor, in control-slot order.
using ActionVec = std::vector<std::size_t>;

struct DiscreteTrajectory {
  std::vector<std::vector<std::size_t>> states;    // [t][expanded factor]
  std::vector<std::vector<std::size_t>> outcomes;  // [t][modality]
};

// Ancestral sampling, deterministic given the seed. `actions` has length T-1.
DiscreteTrajectory sample_trajectory(const DiscreteLayerModel& m,
                                     const std::vector<ActionVec>& actions,
                                     std::uint64_t seed);

// JSON round trip; tensor entries survive bit-exactly (format_version 1).
std::string model_to_json(const DiscreteLayerModel& m);
DiscreteLayerModel model_from_json(const std::string& text);
void save_model(const std::filesystem::path& path, const DiscreteLayerModel& m);
DiscreteLayerModel load_model(const std::filesystem::path& path);

}  // namespace wm
