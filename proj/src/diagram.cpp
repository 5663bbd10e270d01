#include "fspan/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace fspan {

namespace {

[[noreturn]] void fail_at(int pos, const std::string& msg) {
  throw StructuralError("position " + std::to_string(pos) + ": " + msg);
}

// ---------------------------------------------------------------- parsing

struct Parser {
  const std::string& text;
  std::size_t i = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r')) {
      ++i;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (i < text.size() && text[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return i < text.size() ? text[i] : '\0';
  }

  DiagPtr make(DiagKind k, int pos) {
    auto e = std::make_shared<DiagramExpr>();
    e->kind = k;
    e->pos = pos;
    return e;
  }

  // expr := scaled ('+' scaled)*
  DiagPtr parse_expr() {
    DiagPtr left = parse_scaled();
    while (peek() == '+') {
      int pos = static_cast<int>(i);
      eat('+');
      auto node = std::make_shared<DiagramExpr>();
      node->kind = DiagKind::sum;
      node->pos = pos;
      node->a = left;
      node->b = parse_scaled();
      left = node;
    }
    return left;
  }

  // scaled := INT scaled | seqterm
  DiagPtr parse_scaled() {
    skip_ws();
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      int pos = static_cast<int>(i);
      long long k = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        k = k * 10 + (text[i] - '0');
        if (k > 1000000) fail_at(pos, "scalar too large");
        ++i;
      }
      auto node = std::make_shared<DiagramExpr>();
      node->kind = DiagKind::scale;
      node->pos = pos;
      node->factor = k;
      node->a = parse_scaled();
      return node;
    }
    return parse_seq();
  }

  // seqterm := tensterm (';' tensterm)*
  DiagPtr parse_seq() {
    DiagPtr left = parse_tensor();
    while (peek() == ';') {
      int pos = static_cast<int>(i);
      eat(';');
      auto node = std::make_shared<DiagramExpr>();
      node->kind = DiagKind::seq;
      node->pos = pos;
      node->a = left;
      node->b = parse_tensor();
      left = node;
    }
    return left;
  }

  // tensterm := atom ('*' atom)*
  DiagPtr parse_tensor() {
    DiagPtr left = parse_atom();
    while (peek() == '*') {
      int pos = static_cast<int>(i);
      eat('*');
      auto node = std::make_shared<DiagramExpr>();
      node->kind = DiagKind::tensor;
      node->pos = pos;
      node->a = left;
      node->b = parse_atom();
      left = node;
    }
    return left;
  }

  std::string read_ident() {
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    return text.substr(start, i - start);
  }

  // The sign word inside id(...): ('+'|'-')* or the unit marker '1'.
  std::string read_sign_word(int pos) {
    skip_ws();
    if (i < text.size() && text[i] == '1') {
      ++i;
      return "";
    }
    std::string w;
    while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      w += text[i];
      ++i;
    }
    (void)pos;
    return w;
  }

  char read_sign() {
    skip_ws();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) return text[i++];
    fail_at(static_cast<int>(i), "expected '+' or '-'");
  }

  DiagPtr parse_atom() {
    skip_ws();
    int pos = static_cast<int>(i);
    if (peek() == '(') {
      eat('(');
      DiagPtr inner = parse_expr();
      if (!eat(')')) fail_at(static_cast<int>(i), "expected ')'");
      return inner;
    }
    std::string name = read_ident();
    if (name == "eta") return make(DiagKind::eta, pos);
    if (name == "eps") return make(DiagKind::eps, pos);
    if (name == "etadag") return make(DiagKind::etadag, pos);
    if (name == "epsdag") return make(DiagKind::epsdag, pos);
    if (name == "id") {
      if (!eat('(')) fail_at(static_cast<int>(i), "expected '(' after id");
      auto node = make(DiagKind::identity, pos);
      const_cast<DiagramExpr&>(*node).word = read_sign_word(pos);
      if (!eat(')')) fail_at(static_cast<int>(i), "expected ')' after the sign word");
      return node;
    }
    if (name == "x") {
      if (!eat('(')) fail_at(static_cast<int>(i), "expected '(' after x");
      auto node = make(DiagKind::cross, pos);
      auto& n = const_cast<DiagramExpr&>(*node);
      n.sign1 = read_sign();
      if (!eat(',')) fail_at(static_cast<int>(i), "expected ',' between crossing signs");
      n.sign2 = read_sign();
      if (!eat(')')) fail_at(static_cast<int>(i), "expected ')' after crossing signs");
      return node;
    }
    if (name.empty()) fail_at(pos, "expected a diagram atom");
    fail_at(pos, "unknown atom '" + name + "'");
  }
};

// ----------------------------------------------------------- type checking

DiagramType type_node(const DiagramExpr& e);

bool adjacent_equal(const std::string& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1]) return true;
  }
  return false;
}

DiagramType type_node(const DiagramExpr& e) {
  DiagramType t;
  switch (e.kind) {
    case DiagKind::eta:
      t = {"", "+-", false};
      break;
    case DiagKind::eps:
      t = {"-+", "", false};
      break;
    case DiagKind::etadag:
      t = {"+-", "", false};
      break;
    case DiagKind::epsdag:
      t = {"", "-+", false};
      break;
    case DiagKind::identity:
      t = {e.word, e.word, false};
      break;
    case DiagKind::cross:
      t.dom = std::string(1, e.sign1) + e.sign2;
      t.cod = std::string(1, e.sign2) + e.sign1;
      break;
    case DiagKind::tensor: {
      DiagramType ta = type_node(*e.a);
      DiagramType tb = type_node(*e.b);
      t.dom = ta.dom + tb.dom;
      t.cod = ta.cod + tb.cod;
      t.zero_object = ta.zero_object || tb.zero_object;
      break;
    }
    case DiagKind::seq: {
      DiagramType ta = type_node(*e.a);
      DiagramType tb = type_node(*e.b);
      if (ta.cod != tb.dom) {
        fail_at(e.pos, "';' needs matching boundaries: lower factor ends on \"" +
                           (ta.cod.empty() ? std::string("1") : ta.cod) +
                           "\" but upper factor starts on \"" +
                           (tb.dom.empty() ? std::string("1") : tb.dom) + "\"");
      }
      t.dom = ta.dom;
      t.cod = tb.cod;
      t.zero_object = ta.zero_object || tb.zero_object;
      break;
    }
    case DiagKind::sum: {
      DiagramType ta = type_node(*e.a);
      DiagramType tb = type_node(*e.b);
      if (ta.dom != tb.dom || ta.cod != tb.cod) {
        fail_at(e.pos, "'+' needs equal boundaries on both sides");
      }
      t = ta;
      t.zero_object = ta.zero_object || tb.zero_object;
      break;
    }
    case DiagKind::scale:
      t = type_node(*e.a);
      break;
  }
  if (adjacent_equal(t.dom) || adjacent_equal(t.cod)) t.zero_object = true;
  return t;
}

// ------------------------------------------------------------ coefficients

// Free mode keeps an integer polynomial in the circle value c. Span mode
// works in Z[c]/(c^2 - c), stored by its evaluations (u, v) at c = 0 and
// c = 1; multiplication is componentwise and resolving a floating loop
// pool against a region color projects onto one component.
struct Coeff {
  bool span = false;
  std::vector<long long> poly;  // free mode
  long long u = 0, v = 0;       // span mode

  static Coeff one(bool span_mode) {
    Coeff c;
    c.span = span_mode;
    if (span_mode) {
      c.u = c.v = 1;
    } else {
      c.poly = {1};
    }
    return c;
  }

  bool is_zero() const {
    if (span) return u == 0 && v == 0;
    for (long long k : poly) {
      if (k != 0) return false;
    }
    return true;
  }

  void scale(long long k) {
    if (span) {
      u *= k;
      v *= k;
    } else {
      for (long long& c : poly) c *= k;
    }
  }

  void mul(const Coeff& o) {
    if (span) {
      u *= o.u;
      v *= o.v;
      return;
    }
    std::vector<long long> out(poly.size() + o.poly.size(), 0);
    for (std::size_t a = 0; a < poly.size(); ++a) {
      for (std::size_t b = 0; b < o.poly.size(); ++b) out[a + b] += poly[a] * o.poly[b];
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    poly = std::move(out);
  }

  void add(const Coeff& o) {
    if (span) {
      u += o.u;
      v += o.v;
      return;
    }
    if (o.poly.size() > poly.size()) poly.resize(o.poly.size(), 0);
    for (std::size_t k = 0; k < o.poly.size(); ++k) poly[k] += o.poly[k];
    while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
  }

  // Multiply by c (clockwise circle) or 1 - c (counterclockwise).
  void times_circle(bool clockwise) {
    if (span) {
      if (clockwise) {
        u = 0;  // c evaluates to (0, 1)
      } else {
        v = 0;  // 1 - c evaluates to (1, 0)
      }
      return;
    }
    if (clockwise) {
      poly.insert(poly.begin(), 0);
    } else {
      std::vector<long long> out(poly.size() + 1, 0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        out[k] += poly[k];
        out[k + 1] -= poly[k];
      }
      while (out.size() > 1 && out.back() == 0) out.pop_back();
      poly = std::move(out);
    }
  }

  // Span mode only: pin every floating loop to the given region color
  // (0 = vacuum side, 1 = occupied side).
  void resolve(int color) {
    if (!span) return;
    if (color == 0) {
      v = u;
    } else {
      u = v;
    }
  }

  std::vector<long long> as_poly() const {
    if (!span) return poly.empty() ? std::vector<long long>{0} : poly;
    if (v == u) return {u};
    return {u, v - u};
  }
};

// Region colors: 0 is the vacuum side, 1 the occupied side. An upward '-'
// strand has the vacuum on its left; '+' is its reverse.
int left_of(char sign) { return sign == '-' ? 0 : 1; }
int right_of(char sign) { return sign == '-' ? 1 : 0; }

constexpr int kNoColor = -1;

// Color of the region touching the node's left edge, or kNoColor when the
// node is closed. The left strip is unobstructed, so the bottom-left and
// top-left corners agree whenever both exist (enforced separately).
int left_color(const std::string& dom, const std::string& cod) {
  if (!dom.empty()) return left_of(dom[0]);
  if (!cod.empty()) return left_of(cod[0]);
  return kNoColor;
}

int right_color(const std::string& dom, const std::string& cod) {
  if (!dom.empty()) return right_of(dom.back());
  if (!cod.empty()) return right_of(cod.back());
  return kNoColor;
}

// --------------------------------------------------------- normalization

struct Term {
  Pairing pairing;
  Coeff coeff;
};

struct Node {
  std::string dom;
  std::string cod;
  std::vector<Term> terms;
};

Pairing sorted_pairing(Pairing p) {
  for (auto& [a, b] : p) {
    if (a > b) std::swap(a, b);
  }
  std::sort(p.begin(), p.end());
  return p;
}

void merge_terms(std::vector<Term>& terms) {
  std::map<Pairing, Coeff> merged;
  for (Term& t : terms) {
    auto it = merged.find(t.pairing);
    if (it == merged.end()) {
      merged.emplace(std::move(t.pairing), std::move(t.coeff));
    } else {
      it->second.add(t.coeff);
    }
  }
  terms.clear();
  for (auto& [p, c] : merged) {
    if (!c.is_zero()) terms.push_back({p, std::move(c)});
  }
}

// The span model sends a diagram to zero whenever its left or right edge
// touches differently colored regions at the bottom and the top; those
// diagrams connect the vacuum and occupied sides of the state groupoid,
// between which there are no morphisms.
bool span_edge_clash(const std::string& dom, const std::string& cod) {
  if (dom.empty() || cod.empty()) return false;
  return left_of(dom[0]) != left_of(cod[0]) || right_of(dom.back()) != right_of(cod.back());
}

void apply_node_checks(Node& n, DiagMode mode) {
  if (adjacent_equal(n.dom) || adjacent_equal(n.cod)) {
    n.terms.clear();
    return;
  }
  if (mode == DiagMode::span && span_edge_clash(n.dom, n.cod)) n.terms.clear();
}

Node tensor_nodes(const Node& s, const Node& t, DiagMode mode) {
  Node out;
  out.dom = s.dom + t.dom;
  out.cod = s.cod + t.cod;
  int ms = static_cast<int>(s.dom.size());
  int mt = static_cast<int>(t.dom.size());
  int ks = static_cast<int>(s.cod.size());
  bool s_closed = s.dom.empty() && s.cod.empty();
  bool t_closed = t.dom.empty() && t.cod.empty();
  int m = ms + mt;
  for (const Term& a : s.terms) {
    for (const Term& b : t.terms) {
      Term nt;
      nt.coeff = a.coeff;
      Coeff cb = b.coeff;
      if (mode == DiagMode::span) {
        // A closed factor floats in the region along its neighbor's facing
        // edge; its loop pool resolves against that color. Two closed
        // factors share one ambient region, so their pools just multiply.
        if (s_closed && !t_closed) nt.coeff.resolve(left_color(t.dom, t.cod));
        if (t_closed && !s_closed) cb.resolve(right_color(s.dom, s.cod));
      }
      nt.coeff.mul(cb);
      if (nt.coeff.is_zero()) continue;
      for (auto [p, q] : a.pairing) {
        auto shift = [&](int x) { return x < ms ? x : m + (x - ms); };
        nt.pairing.emplace_back(shift(p), shift(q));
      }
      for (auto [p, q] : b.pairing) {
        auto shift = [&](int x) { return x < mt ? ms + x : m + ks + (x - mt); };
        nt.pairing.emplace_back(shift(p), shift(q));
      }
      nt.pairing = sorted_pairing(std::move(nt.pairing));
      out.terms.push_back(std::move(nt));
    }
  }
  merge_terms(out.terms);
  apply_node_checks(out, mode);
  return out;
}

Node seq_nodes(const Node& s, const Node& t, DiagMode mode) {
  // s runs dom -> mid, t runs mid -> cod; arcs are traced through the
  // middle boundary and closed cycles become circles.
  Node out;
  out.dom = s.dom;
  out.cod = t.cod;
  const std::string& mid = s.cod;
  int ma = static_cast<int>(s.dom.size());
  int mb = static_cast<int>(mid.size());
  int mc = static_cast<int>(t.cod.size());
  bool s_closed = s.dom.empty() && mid.empty();
  bool t_closed = mid.empty() && t.cod.empty();

  for (const Term& a : s.terms) {
    for (const Term& b : t.terms) {
      std::vector<int> ps(ma + mb, -1), pt(mb + mc, -1);
      for (auto [x, y] : a.pairing) {
        ps[x] = y;
        ps[y] = x;
      }
      for (auto [x, y] : b.pairing) {
        pt[x] = y;
        pt[y] = x;
      }

      Term nt;
      nt.coeff = a.coeff;
      Coeff cb = b.coeff;
      if (mode == DiagMode::span) {
        // Same floating-pool rule as for tensors: a closed factor of the
        // stack sits in the open factor's outer region, reachable along
        // the unobstructed left edge.
        if (s_closed && !t_closed) nt.coeff.resolve(left_color(t.dom, t.cod));
        if (t_closed && !s_closed) cb.resolve(left_color(s.dom, s.cod));
      }
      nt.coeff.mul(cb);

      std::vector<char> seen(mb, 0);
      // Open traces from the composite bottom, alternating s and t arcs
      // across the middle.
      for (int j = 0; j < ma; ++j) {
        int cur = ps[j];
        while (cur >= ma) {
          int midp = cur - ma;
          seen[midp] = 1;
          int hop = pt[midp];
          if (hop >= mb) {
            cur = -(hop - mb) - 1;  // landed on the composite top
            break;
          }
          seen[hop] = 1;
          cur = ps[ma + hop];
        }
        if (cur >= 0) {
          if (cur > j) nt.pairing.emplace_back(j, cur);
        } else {
          nt.pairing.emplace_back(j, ma + (-cur - 1));
        }
      }
      // Traces between top points that never reach the bottom.
      std::vector<char> top_done(mc, 0);
      for (int j = 0; j < mc; ++j) {
        if (top_done[j]) continue;
        int cur = pt[mb + j];
        if (cur >= mb) {
          top_done[cur - mb] = 1;
          nt.pairing.emplace_back(ma + j, ma + (cur - mb));
          continue;
        }
        if (seen[cur]) continue;  // reached from the bottom already
        while (true) {
          seen[cur] = 1;
          int hop = ps[ma + cur];
          if (hop < ma) break;  // bottom landing was recorded above
          seen[hop - ma] = 1;
          int nxt = pt[hop - ma];
          if (nxt >= mb) {
            top_done[nxt - mb] = 1;
            nt.pairing.emplace_back(ma + j, ma + (nxt - mb));
            break;
          }
          cur = nxt;
        }
      }
      // Remaining middle points lie on closed cycles.
      for (int j = 0; j < mb; ++j) {
        if (seen[j]) continue;
        int leftmost = j;
        int cur = j;
        bool from_s = true;
        do {
          seen[cur] = 1;
          leftmost = std::min(leftmost, cur);
          int hop = from_s ? ps[ma + cur] - ma : pt[cur];
          cur = hop;
          from_s = !from_s;
        } while (cur != j || !from_s);
        bool clockwise = mid[leftmost] == '+';
        if (mode == DiagMode::free) {
          nt.coeff.times_circle(clockwise);
        } else if (leftmost > 0) {
          // The region just left of the loop is fixed by the neighboring
          // strand; the loop contributes 1 there when the colors line up
          // and kills the term otherwise.
          int ambient = right_of(mid[leftmost - 1]);
          int outside = clockwise ? 1 : 0;
          if (ambient != outside) nt.coeff.scale(0);
        } else {
          int ambient = left_color(out.dom, out.cod);
          if (ambient == kNoColor) {
            nt.coeff.times_circle(clockwise);  // floats until resolved
          } else {
            int outside = clockwise ? 1 : 0;
            if (ambient != outside) nt.coeff.scale(0);
          }
        }
      }
      if (nt.coeff.is_zero()) continue;
      nt.pairing = sorted_pairing(std::move(nt.pairing));
      out.terms.push_back(std::move(nt));
    }
  }
  merge_terms(out.terms);
  apply_node_checks(out, mode);
  return out;
}

Node atom_node(const DiagramExpr& e, DiagMode mode) {
  Node n;
  DiagramType t = type_node(e);
  n.dom = t.dom;
  n.cod = t.cod;
  int m = static_cast<int>(n.dom.size());
  Term one;
  one.coeff = Coeff::one(mode == DiagMode::span);
  switch (e.kind) {
    case DiagKind::eta:
    case DiagKind::epsdag:
      one.pairing = {{m + 0, m + 1}};
      break;
    case DiagKind::eps:
    case DiagKind::etadag:
      one.pairing = {{0, 1}};
      break;
    case DiagKind::identity:
      for (int j = 0; j < m; ++j) one.pairing.emplace_back(j, m + j);
      break;
    case DiagKind::cross:
      // Crossings are zero in both readings.
      apply_node_checks(n, mode);
      return n;
    default:
      break;
  }
  n.terms.push_back(std::move(one));
  apply_node_checks(n, mode);
  return n;
}

Node eval_node(const DiagramExpr& e, DiagMode mode) {
  switch (e.kind) {
    case DiagKind::tensor:
      return tensor_nodes(eval_node(*e.a, mode), eval_node(*e.b, mode), mode);
    case DiagKind::seq:
      return seq_nodes(eval_node(*e.a, mode), eval_node(*e.b, mode), mode);
    case DiagKind::sum: {
      Node na = eval_node(*e.a, mode);
      Node nb = eval_node(*e.b, mode);
      for (Term& t : nb.terms) na.terms.push_back(std::move(t));
      merge_terms(na.terms);
      return na;
    }
    case DiagKind::scale: {
      Node n = eval_node(*e.a, mode);
      if (e.factor == 0) {
        n.terms.clear();
        return n;
      }
      for (Term& t : n.terms) t.coeff.scale(e.factor);
      return n;
    }
    default:
      return atom_node(e, mode);
  }
}

// ------------------------------------------------- pairing canonicalization

// Disk order of the boundary points: bottom left to right, then top right
// to left. Two chords cross exactly when their endpoints interleave.
bool pairing_crossed(const Pairing& p, int m, int k) {
  auto disk = [&](int x) { return x < m ? x : m + (k - 1 - (x - m)); };
  for (std::size_t a = 0; a < p.size(); ++a) {
    int a1 = disk(p[a].first), a2 = disk(p[a].second);
    if (a1 > a2) std::swap(a1, a2);
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      bool in1 = disk(p[b].first) > a1 && disk(p[b].first) < a2;
      bool in2 = disk(p[b].second) > a1 && disk(p[b].second) < a2;
      if (in1 != in2) return true;
    }
  }
  return false;
}

// Strands are oriented: a bottom '+' or top '-' point starts an arc, a
// bottom '-' or top '+' point ends one. Two arcs may swap their ending
// points when the rewired pairing is again planar; the canonical
// representative is the lexicographic minimum of the orbit.
Pairing canonical_pairing(const Pairing& start, const std::string& dom,
                          const std::string& cod) {
  int m = static_cast<int>(dom.size());
  int k = static_cast<int>(cod.size());
  auto starts = [&](int x) { return x < m ? dom[x] == '+' : cod[x - m] == '-'; };
  for (auto [a, b] : start) {
    if (starts(a) == starts(b)) return start;  // unoriented arc, leave it alone
  }

  std::set<Pairing> seen;
  std::vector<Pairing> queue;
  seen.insert(start);
  queue.push_back(start);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Pairing cur = queue[head];
    // View each pair as (start, end).
    std::vector<std::pair<int, int>> arcs;
    for (auto [a, b] : cur) {
      arcs.emplace_back(starts(a) ? a : b, starts(a) ? b : a);
    }
    for (std::size_t x = 0; x < arcs.size(); ++x) {
      for (std::size_t y = x + 1; y < arcs.size(); ++y) {
        Pairing next;
        for (std::size_t z = 0; z < arcs.size(); ++z) {
          if (z == x) {
            next.emplace_back(arcs[x].first, arcs[y].second);
          } else if (z == y) {
            next.emplace_back(arcs[y].first, arcs[x].second);
          } else {
            next.emplace_back(arcs[z].first, arcs[z].second);
          }
        }
        next = sorted_pairing(std::move(next));
        if (pairing_crossed(next, m, k)) continue;
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    if (seen.size() > 10000) {
      throw BudgetExceeded("surgery orbit outgrew 10000 pairings");
    }
  }
  return *seen.begin();
}

NormalForm finish(Node n, DiagMode mode) {
  std::vector<Term> canon;
  for (Term& t : n.terms) {
    t.pairing = canonical_pairing(t.pairing, n.dom, n.cod);
    canon.push_back(std::move(t));
  }
  merge_terms(canon);
  NormalForm nf;
  nf.dom = n.dom;
  nf.cod = n.cod;
  nf.mode = mode;
  for (Term& t : canon) nf.terms.push_back({std::move(t.pairing), t.coeff.as_poly()});
  std::sort(nf.terms.begin(), nf.terms.end(),
            [](const DiagTerm& a, const DiagTerm& b) { return a.pairing < b.pairing; });
  return nf;
}

std::string poly_to_text(const std::vector<long long>& poly) {
  std::string out;
  for (std::size_t deg = 0; deg < poly.size(); ++deg) {
    long long c = poly[deg];
    if (c == 0) continue;
    std::string body;
    long long mag = c < 0 ? -c : c;
    if (deg == 0) {
      body = std::to_string(mag);
    } else {
      if (mag != 1) body = std::to_string(mag);
      body += "c";
      if (deg > 1) body += "^" + std::to_string(deg);
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + body;
    } else {
      out += (c < 0 ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

// ------------------------------------------------------------- public API

DiagPtr parse_diagram(const std::string& text) {
  Parser p(text);
  DiagPtr e = p.parse_expr();
  p.skip_ws();
  if (p.i != text.size()) fail_at(static_cast<int>(p.i), "trailing input");
  return e;
}

std::string diagram_to_text(const DiagramExpr& e) {
  switch (e.kind) {
    case DiagKind::eta:
      return "eta";
    case DiagKind::eps:
      return "eps";
    case DiagKind::etadag:
      return "etadag";
    case DiagKind::epsdag:
      return "epsdag";
    case DiagKind::identity:
      return "id(" + (e.word.empty() ? std::string("1") : e.word) + ")";
    case DiagKind::cross:
      return std::string("x(") + e.sign1 + "," + e.sign2 + ")";
    case DiagKind::tensor:
      return "(" + diagram_to_text(*e.a) + " * " + diagram_to_text(*e.b) + ")";
    case DiagKind::seq:
      return "(" + diagram_to_text(*e.a) + " ; " + diagram_to_text(*e.b) + ")";
    case DiagKind::sum:
      return "(" + diagram_to_text(*e.a) + " + " + diagram_to_text(*e.b) + ")";
    case DiagKind::scale:
      return "(" + std::to_string(e.factor) + " " + diagram_to_text(*e.a) + ")";
  }
  return "";
}

DiagramType type_of(const DiagramExpr& e) { return type_node(e); }

NormalForm normalize_diagram(const DiagramExpr& e, DiagMode mode) {
  type_node(e);  // surface boundary errors first
  return finish(eval_node(e, mode), mode);
}

NormalForm normalize_diagram(const std::string& text, DiagMode mode) {
  return normalize_diagram(*parse_diagram(text), mode);
}

std::string normal_form_to_text(const NormalForm& nf) {
  auto word = [](const std::string& w) { return w.empty() ? std::string("1") : w; };
  std::string out = word(nf.dom) + " -> " + word(nf.cod) + "  [" +
                    (nf.mode == DiagMode::span ? "span" : "free") + "]\n";
  if (nf.terms.empty()) {
    out += "  0\n";
    return out;
  }
  int m = static_cast<int>(nf.dom.size());
  for (const DiagTerm& t : nf.terms) {
    std::string pairs;
    for (auto [a, b] : t.pairing) {
      if (!pairs.empty()) pairs += ", ";
      auto name = [&](int x) {
        return x < m ? "b" + std::to_string(x) : "t" + std::to_string(x - m);
      };
      pairs += name(a) + "-" + name(b);
    }
    out += "  {" + pairs + "}  " + poly_to_text(t.coeff) + "\n";
  }
  return out;
}

bool diagram_eq(const DiagramExpr& a, const DiagramExpr& b, DiagMode mode) {
  return normalize_diagram(a, mode) == normalize_diagram(b, mode);
}

// ------------------------------------------------------------------- k0

namespace {

struct ObjectParser {
  const std::string& text;
  std::size_t i = 0;
  QMatrix ann, cre, id2;

  explicit ObjectParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  }

  char peek() {
    skip_ws();
    return i < text.size() ? text[i] : '\0';
  }

  QMatrix parse_sum() {
    QMatrix m = parse_product();
    while (peek() == '+') {
      ++i;
      m = matrix_add(m, parse_product());
    }
    return m;
  }

  QMatrix parse_product() {
    QMatrix m = parse_factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++i;
        m = matrix_mul(m, parse_factor());
      } else if (c == '[' || c == '1' || c == '(' ||
                 std::isdigit(static_cast<unsigned char>(c))) {
        m = matrix_mul(m, parse_factor());
      } else {
        break;
      }
    }
    return m;
  }

  QMatrix parse_factor() {
    skip_ws();
    if (i >= text.size()) fail_at(static_cast<int>(i), "expected an object atom");
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c)) && c != '1') {
      return parse_scalar();
    }
    if (c == '1') {
      // Lone '1' is the unit object; a longer digit run is a scalar.
      std::size_t j = i + 1;
      if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        return parse_scalar();
      }
      ++i;
      return id2;
    }
    if (c == '(') {
      ++i;
      QMatrix m = parse_sum();
      if (peek() != ')') fail_at(static_cast<int>(i), "expected ')'");
      ++i;
      return m;
    }
    if (c == '[') {
      ++i;
      QMatrix m = id2;
      while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        m = matrix_mul(m, text[i] == '+' ? cre : ann);
        ++i;
      }
      if (i >= text.size() || text[i] != ']') {
        fail_at(static_cast<int>(i), "expected ']' after the sign word");
      }
      ++i;
      return m;
    }
    fail_at(static_cast<int>(i), std::string("unexpected character '") + c + "'");
  }

  QMatrix parse_scalar() {
    long long k = 0;
    int pos = static_cast<int>(i);
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      k = k * 10 + (text[i] - '0');
      if (k > 1000000) fail_at(pos, "scalar too large");
      ++i;
    }
    return matrix_scale(Rational(k), parse_factor());
  }
};

}  // namespace

QMatrix k0_matrix(const std::string& object_expr) {
  // The class matrices do not depend on the loop group, so the smallest
  // model provides them.
  FermionModel m = build_fermion_model("Z1");
  ObjectParser p(object_expr);
  p.ann = span_matrix(m.f);
  p.cre = span_matrix(m.f_dag);
  p.id2 = identity_matrix(class_labels(*m.psi));
  QMatrix out = p.parse_sum();
  p.skip_ws();
  if (p.i != object_expr.size()) fail_at(static_cast<int>(p.i), "trailing input");
  return out;
}

// ------------------------------------------------------------- evaluation

namespace {

void reject_unevaluable(const DiagramExpr& e) {
  if (e.kind == DiagKind::cross) {
    fail_at(e.pos, "crossings have no span interpretation (they normalize to zero)");
  }
  if (e.a) reject_unevaluable(*e.a);
  if (e.b) reject_unevaluable(*e.b);
}

TwoMorphism eval_cell(const DiagramExpr& e, SpanCalculus& calc) {
  switch (e.kind) {
    case DiagKind::eta:
      return calc.generator_cell("eta");
    case DiagKind::eps:
      return calc.generator_cell("eps");
    case DiagKind::etadag:
      return calc.generator_cell("etadag");
    case DiagKind::epsdag:
      return calc.generator_cell("epsdag");
    case DiagKind::identity:
      return calc.identity_cell(e.word);
    case DiagKind::seq:
      return calc.vert(eval_cell(*e.b, calc), eval_cell(*e.a, calc));
    case DiagKind::tensor: {
      DiagramType ta = type_node(*e.a);
      DiagramType tb = type_node(*e.b);
      return calc.tensor(eval_cell(*e.a, calc), {ta.dom, ta.cod}, eval_cell(*e.b, calc),
                         {tb.dom, tb.cod});
    }
    case DiagKind::sum:
      return calc.sum(eval_cell(*e.a, calc), eval_cell(*e.b, calc));
    case DiagKind::scale: {
      DiagramType t = type_node(*e.a);
      if (e.factor == 0) return calc.zero_cell(t.dom, t.cod);
      TwoMorphism acc = eval_cell(*e.a, calc);
      for (long long k = 1; k < e.factor; ++k) acc = calc.sum(acc, eval_cell(*e.a, calc));
      return acc;
    }
    case DiagKind::cross:
      break;
  }
  fail_at(e.pos, "cannot evaluate this node");
}

}  // namespace

TwoMorphism evaluate_diagram(const DiagramExpr& e, SpanCalculus& calc) {
  reject_unevaluable(e);
  DiagramType t = type_of(e);
  if (t.zero_object) {
    throw StructuralError(
        "a boundary with adjacent equal signs is a zero object; the diagram has no "
        "nonzero span interpretation");
  }
  return eval_cell(e, calc);
}

}  // namespace fspan
