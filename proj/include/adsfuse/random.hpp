#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "adsfuse/assertion.hpp"
#include "adsfuse/frontend.hpp"
#include "adsfuse/fusion.hpp"
#include "adsfuse/model.hpp"
#include "adsfuse/oracle.hpp"

// Seeded generators for terms, assertion sets, models and DL documents.
namespace adsfuse::gen {

using Rng = std::mt19937_64;

unsigned uniform(Rng& rng, unsigned lo, unsigned hi);  // inclusive
bool coin(Rng& rng, double p);

// A fusion of two small components plus the set variables to draw from.
struct Profile {
  std::string name;
  ComponentSpec first;
  ComponentSpec second;
  std::vector<std::string> vars;
  unsigned max_count = 2;  // largest n in number restrictions
};

// ALC{R1,S1} ⊗ ALCN{R2,S2}
Profile alc_alcn();
// ALC_f{F1 feature, G1} ⊗ ALC_R+{Q1 transitive, Q2}
Profile alcf_alcr();

// Role constructors of the component: ∃R, ∀R, and (ALCN) ≥nR, ≤nR for n ≤ max_count.
std::vector<Symbol> symbols_of(const ComponentSpec& c, unsigned max_count);
std::vector<Symbol> symbols_of(const Profile& p);
// The fused signature with every generated symbol declared.
FusionSignature signature_of(const Profile& p);
ModelClass model_class_of(const Profile& p);

// Function nesting ≤ depth; `size` bounds the number of connective and
// application nodes.
Term random_term(Rng& rng, std::span<const std::string> vars, std::span<const Symbol> syms,
                 unsigned depth, unsigned size = 5);

struct GammaShape {
  unsigned max_size = 4;
  unsigned depth = 2;
  unsigned term_size = 4;
  bool term_assertions = false;
  bool role_assertions = true;
  std::vector<std::string> objects = {"a", "b", "c"};
};
// Non-empty; at least one membership.
AssertionSet random_gamma(Rng& rng, const Profile& p, const GammaShape& shape);

// Edges drawn with probability edge_p; transitive roles closed, features kept
// functional. Objects are assigned to distinct points when there is room.
FiniteInterpretation random_model(Rng& rng, unsigned domain, const ModelClass& cls,
                                  std::span<const std::string> vars,
                                  std::span<const std::string> objects = {}, double edge_p = 0.35);

// A random concept over the profile's names; number restrictions only on
// roles of an ALCN component.
dl::Concept random_concept(Rng& rng, const Profile& p, unsigned depth, unsigned size = 5);
// A complete, valid document for the profile.
dl::Document random_document(Rng& rng, const Profile& p, unsigned depth = 2);

}  // namespace adsfuse::gen
