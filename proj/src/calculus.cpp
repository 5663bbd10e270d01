#include "fspan/calculus.hpp"

namespace fspan {

SpanCalculus::SpanCalculus(FermionModel model, Limits lim, bool compress)
    : model_(std::move(model)), lim_(lim), compress_(compress) {}

const Span& SpanCalculus::elementary(char s) const {
  if (s == '-') return model_.f;
  if (s == '+') return model_.f_dag;
  throw StructuralError(std::string("sign word may only contain '+' and '-', got '") + s +
                        "'");
}

const Span& SpanCalculus::chain(const std::string& word) {
  auto it = chains_.find(word);
  if (it != chains_.end()) return it->second;
  Span built;
  if (word.empty()) {
    built = identity_span(model_.psi);
  } else if (word.size() == 1) {
    built = elementary(word[0]);
  } else {
    const Span& rest = chain(word.substr(1));
    built = compose_spans(elementary(word[0]), rest, lim_);
  }
  return chains_.emplace(word, std::move(built)).first->second;
}

const Transport& SpanCalculus::join(const std::string& d1, const std::string& d2) {
  auto key = std::make_pair(d1, d2);
  auto it = joins_.find(key);
  if (it != joins_.end()) return it->second;
  Transport t;
  if (d1.empty()) {
    t = left_unitor(chain(d2), lim_);
  } else if (d2.empty()) {
    t = right_unitor(chain(d1), lim_);
  } else if (d1.size() == 1) {
    // compose(chain(s), chain(d2)) is chain(s + d2) by construction.
    t = identity_transport(chain(d1 + d2));
  } else {
    std::string head(1, d1[0]);
    std::string tail = d1.substr(1);
    Transport assoc = associator(elementary(d1[0]), chain(tail), chain(d2), lim_);
    Transport lifted = lift_left(elementary(d1[0]), join(tail, d2), lim_);
    t = compose_transports(assoc, lifted);
  }
  return joins_.emplace(std::move(key), std::move(t)).first->second;
}

TwoMorphism SpanCalculus::squeeze(TwoMorphism c) const {
  if (!compress_) return c;
  return compress_2(c, lim_);
}

TwoMorphism SpanCalculus::generator_cell(const std::string& name) {
  // The model builds eta and eps directly over chain("+-") and chain("-+"),
  // so their boundaries are already canonical.
  if (name == "eta") return squeeze(model_.eta);
  if (name == "eps") return squeeze(model_.eps);
  if (name == "etadag") return squeeze(model_.eta_dag);
  if (name == "epsdag") return squeeze(model_.eps_dag);
  throw StructuralError("unknown generator cell: " + name);
}

TwoMorphism SpanCalculus::identity_cell(const std::string& word) {
  return squeeze(identity_2(chain(word)));
}

TwoMorphism SpanCalculus::zero_cell(const std::string& dom, const std::string& cod) {
  TwoMorphism c;
  c.from = chain(dom);
  c.to = chain(cod);
  c.inner = GroupoidBuilder(lim_).build();
  c.S.source = c.inner;
  c.S.target = c.from.apex;
  c.R.source = c.inner;
  c.R.target = c.to.apex;
  return c;
}

TwoMorphism SpanCalculus::vert(const TwoMorphism& after, const TwoMorphism& first) {
  return squeeze(vert_compose_2(after, first, lim_));
}

TwoMorphism SpanCalculus::tensor(const TwoMorphism& left_cell, const WordPair& left_type,
                                 const TwoMorphism& right_cell, const WordPair& right_type) {
  // The left factor of a word is the outer factor of the composite span.
  TwoMorphism h = horiz_compose_2(left_cell, right_cell, lim_);
  h = retarget_from(h, join(left_type.dom, right_type.dom));
  h = retarget_to(h, join(left_type.cod, right_type.cod));
  return squeeze(std::move(h));
}

TwoMorphism SpanCalculus::sum(const TwoMorphism& a, const TwoMorphism& b) {
  return squeeze(direct_sum_2(a, b, lim_));
}

}  // namespace fspan
