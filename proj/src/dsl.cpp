// Copyright 2026 The caustyk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "caustyk/dsl.hpp"

#include <optional>
#include <sstream>

namespace caustyk {

namespace {

using Kind = TypeExpr::Kind;

Expr make(Kind k, Index n, Expr l = nullptr, Expr r = nullptr) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = k;
  e->n = n;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

int precedence(Kind k) {
  switch (k) {
    case Kind::Par: return 1;
    case Kind::Seq: return 2;
    case Kind::Tensor: return 3;
    case Kind::Dual: return 4;
    default: return 5;
  }
}

const char* op_text(Kind k) {
  switch (k) {
    case Kind::Tensor: return " * ";
    case Kind::Par: return " @ ";
    case Kind::Seq: return " < ";
    default: return "";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = expr(1);
    skip();
    if (pos_ != s_.size()) fail("operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::ostringstream os;
    os << "syntax error at byte " << pos_ << ": expected " << expected << ", found ";
    if (pos_ >= s_.size()) {
      os << "end of input";
    } else {
      os << '\'' << s_[pos_] << '\'';
    }
    throw Error(ErrorKind::Syntax, os.str());
  }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
  }

  bool starts(std::string_view t) const { return s_.substr(pos_, t.size()) == t; }

  // Returns the infix operator at the cursor without consuming it.
  std::optional<std::pair<Kind, std::size_t>> peek_op() {
    skip();
    if (pos_ >= s_.size()) return std::nullopt;
    switch (s_[pos_]) {
      case '*': return std::pair{Kind::Tensor, std::size_t{1}};
      case '@': return std::pair{Kind::Par, std::size_t{1}};
      case '<': return std::pair{Kind::Seq, std::size_t{1}};
      default: break;
    }
    if (starts("\xE2\x8A\x97")) return std::pair{Kind::Tensor, std::size_t{3}};
    if (starts("\xE2\x85\x8B")) return std::pair{Kind::Par, std::size_t{3}};
    if (starts("\xE2\x97\x81")) return std::pair{Kind::Seq, std::size_t{3}};
    return std::nullopt;
  }

  Expr expr(int min_prec) {
    Expr lhs = postfix();
    while (true) {
      const auto op = peek_op();
      if (!op || precedence(op->first) < min_prec) return lhs;
      pos_ += op->second;
      Expr rhs = expr(precedence(op->first) + 1);
      lhs = make(op->first, 1, lhs, rhs);
    }
  }

  Expr postfix() {
    Expr e = primary();
    while (true) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        e = make(Kind::Dual, 1, e);
      } else if (starts("\xE2\x88\x97") || starts("\xE2\x8B\x86")) {
        throw Error(ErrorKind::Syntax, "syntax error at byte " + std::to_string(pos_) +
                                           ": star superscript is not a dual; write '^'");
      } else {
        return e;
      }
    }
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  Index number() {
    skip();
    const std::size_t start = pos_;
    Index v = 0;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000) throw Error(ErrorKind::Semantic, "semantic error at byte " + std::to_string(start) + ": dimension too large");
      ++pos_;
    }
    if (pos_ == start) fail("dimension literal");
    if (v < 1) throw Error(ErrorKind::Semantic, "semantic error at byte " + std::to_string(start) + ": dimension must be >= 1");
    return v;
  }

  Expr atom_with_arg(Kind k, std::size_t len) {
    pos_ += len;
    expect('(');
    const Index n = number();
    expect(')');
    return make(k, n);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("type");
    if (starts("FO")) return atom_with_arg(Kind::FO, 2);
    if (starts("ANY")) return atom_with_arg(Kind::Any, 3);
    if (starts("CLA")) return atom_with_arg(Kind::Cla, 3);
    if (s_[pos_] == 'I') {
      ++pos_;
      return make(Kind::Unit, 1);
    }
    if (s_[pos_] == '[') {
      ++pos_;
      Expr a = expr(1);
      expect(',');
      Expr b = expr(1);
      expect(']');
      return make(Kind::Hom, 1, a, b);
    }
    if (s_[pos_] == '(') {
      ++pos_;
      Expr a = expr(1);
      expect(')');
      return a;
    }
    fail("type");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr fo_expr(Index d) { return make(Kind::FO, d); }
Expr any_expr(Index d) { return make(Kind::Any, d); }
Expr cla_expr(Index n) { return make(Kind::Cla, n); }
Expr unit_expr() { return make(Kind::Unit, 1); }
Expr dual_expr(Expr e) { return make(Kind::Dual, 1, std::move(e)); }
Expr binary_expr(Kind kind, Expr lhs, Expr rhs) { return make(kind, 1, std::move(lhs), std::move(rhs)); }

Expr parse_type(std::string_view text) { return Parser(text).parse(); }

std::string print_type(const Expr& e) {
  auto wrap = [](const Expr& c, bool paren) {
    return paren ? "(" + print_type(c) + ")" : print_type(c);
  };
  switch (e->kind) {
    case Kind::FO: return "FO(" + std::to_string(e->n) + ")";
    case Kind::Any: return "ANY(" + std::to_string(e->n) + ")";
    case Kind::Cla: return "CLA(" + std::to_string(e->n) + ")";
    case Kind::Unit: return "I";
    case Kind::Dual: return wrap(e->lhs, precedence(e->lhs->kind) < 4) + "^";
    case Kind::Hom: return "[" + print_type(e->lhs) + "," + print_type(e->rhs) + "]";
    default: {
      const int p = precedence(e->kind);
      return wrap(e->lhs, precedence(e->lhs->kind) < p) + op_text(e->kind) +
             wrap(e->rhs, precedence(e->rhs->kind) <= p);
    }
  }
}

std::string tree_string(const Expr& e) {
  switch (e->kind) {
    case Kind::FO: return "FO " + std::to_string(e->n);
    case Kind::Any: return "ANY " + std::to_string(e->n);
    case Kind::Cla: return "CLA " + std::to_string(e->n);
    case Kind::Unit: return "UNIT";
    case Kind::Dual: return "Dual(" + tree_string(e->lhs) + ")";
    case Kind::Tensor: return "Tensor(" + tree_string(e->lhs) + ", " + tree_string(e->rhs) + ")";
    case Kind::Par: return "Par(" + tree_string(e->lhs) + ", " + tree_string(e->rhs) + ")";
    case Kind::Seq: return "Seq(" + tree_string(e->lhs) + ", " + tree_string(e->rhs) + ")";
    case Kind::Hom: return "Hom(" + tree_string(e->lhs) + ", " + tree_string(e->rhs) + ")";
  }
  return "?";
}

bool same_tree(const Expr& a, const Expr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->n != b->n) return false;
  return same_tree(a->lhs, b->lhs) && same_tree(a->rhs, b->rhs);
}

Index expr_dim(const Expr& e) {
  switch (e->kind) {
    case Kind::FO:
    case Kind::Any:
    case Kind::Cla: return e->n;
    case Kind::Unit: return 1;
    case Kind::Dual: return expr_dim(e->lhs);
    default: return expr_dim(e->lhs) * expr_dim(e->rhs);
  }
}

CausObject Elaborator::elaborate(const Expr& e) {
  const std::string key = print_type(e);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto build = [&]() -> CausObject {
    switch (e->kind) {
      case Kind::FO:
      case Kind::Any: return first_order(e->n);
      case Kind::Cla: return classical(e->n);
      case Kind::Unit: return unit();
      case Kind::Dual: return dual(elaborate(e->lhs));
      case Kind::Tensor: return tensor(elaborate(e->lhs), elaborate(e->rhs));
      case Kind::Par: return par(elaborate(e->lhs), elaborate(e->rhs));
      case Kind::Seq: return seq(elaborate(e->lhs), elaborate(e->rhs));
      case Kind::Hom: return hom(elaborate(e->lhs), elaborate(e->rhs));
    }
    throw Error(ErrorKind::Semantic, "elaborate: unknown node");
  };
  CausObject o = build();
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(key, std::move(o)).first->second;
}

std::size_t Elaborator::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

CausObject elaborate(const Expr& e) {
  static Elaborator shared;
  return shared.elaborate(e);
}

Expr random_type(Rng& rng, int depth, Index max_dim) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto gen = [&](auto&& self, int d) -> Expr {
      const Index pick = rng.integer(0, d <= 0 ? 3 : 9);
      switch (pick) {
        case 0: return fo_expr(rng.integer(1, 3));
        case 1: return any_expr(rng.integer(1, 3));
        case 2: return cla_expr(rng.integer(1, 3));
        case 3: return rng.integer(0, 3) == 0 ? unit_expr() : fo_expr(rng.integer(2, 3));
        case 4: return dual_expr(self(self, d - 1));
        case 5: return binary_expr(Kind::Tensor, self(self, d - 1), self(self, d - 1));
        case 6: return binary_expr(Kind::Par, self(self, d - 1), self(self, d - 1));
        case 7: return binary_expr(Kind::Seq, self(self, d - 1), self(self, d - 1));
        default: return binary_expr(Kind::Hom, self(self, d - 1), self(self, d - 1));
      }
    };
    Expr e = gen(gen, depth);
    if (max_dim <= 0 || expr_dim(e) <= max_dim) return e;
  }
  return fo_expr(2);
}

}  // namespace caustyk
