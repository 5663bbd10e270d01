#pragma once

#include <map>
#include <string>
#include <utility>

#include "fspan/fermion.hpp"
#include "fspan/span.hpp"
#include "fspan/two_morphism.hpp"

namespace fspan {

// Word-indexed composites of the model's elementary spans together with
// cell-level combinators that keep every boundary on a canonical chain.
//
// A word is a string over '-' (annihilation) and '+' (creation), read left
// to right with the leftmost letter outermost, so chain("-+") applies the
// creation span first. chain and join are memoized; join(d1, d2) is the
// canonical rebracketing transport from compose(chain(d1), chain(d2)) onto
// chain(d1 + d2), assembled from unitors, associators and left whiskering.
//
// All combinators return cells whose from/to spans are structurally equal
// to chains, which is what lets vertical composition and direct sums match
// up without further bookkeeping. With compression enabled (the default)
// every produced cell gets a skeletal inner groupoid; composites otherwise
// grow multiplicatively and blow the morphism budget after a few steps.
class SpanCalculus {
 public:
  explicit SpanCalculus(FermionModel model, Limits lim = {}, bool compress = true);

  const FermionModel& model() const { return model_; }
  const Limits& limits() const { return lim_; }

  const Span& chain(const std::string& word);
  const Transport& join(const std::string& d1, const std::string& d2);

  struct WordPair {
    std::string dom;
    std::string cod;
  };

  // name is one of eta, eps, etadag, epsdag.
  TwoMorphism generator_cell(const std::string& name);
  TwoMorphism identity_cell(const std::string& word);
  TwoMorphism zero_cell(const std::string& dom, const std::string& cod);
  TwoMorphism vert(const TwoMorphism& after, const TwoMorphism& first);
  TwoMorphism tensor(const TwoMorphism& left_cell, const WordPair& left_type,
                     const TwoMorphism& right_cell, const WordPair& right_type);
  TwoMorphism sum(const TwoMorphism& a, const TwoMorphism& b);

 private:
  const Span& elementary(char s) const;
  TwoMorphism squeeze(TwoMorphism c) const;

  FermionModel model_;
  Limits lim_;
  bool compress_;
  std::map<std::string, Span> chains_;
  std::map<std::pair<std::string, std::string>, Transport> joins_;
};

}  // namespace fspan
