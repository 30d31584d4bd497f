#include <map>

#include "dm/hilbert.hpp"
#include "dm/syntax.hpp"

namespace dm {

namespace {

struct LineFail {
  std::string msg;
};

void need_ref(int ref, int k) {
  if (ref < 1 || ref >= k)
    throw LineFail{"reference " + std::to_string(ref) + " does not point to an earlier line"};
}

void same(const Expr& got, const Expr& want, const char* what) {
  if (!alpha_equal(got, want)) throw LineFail{std::string(what) + ": stated " + print(got) + ", expected " + print(want)};
}

}  // namespace

HVerdict check_hilbert(const HilbertProof& p) {
  HVerdict v;
  v.length = p.lines.size();
  if (p.lines.empty()) {
    v.error = "empty proof";
    return v;
  }
  Signature sig = zi_signature(p.cfg.order);
  std::map<std::string, Expr> ax;
  for (const auto& a : p.axioms) ax[a.name] = a.prop;
  for (std::size_t idx = 0; idx < p.lines.size(); ++idx) {
    int k = static_cast<int>(idx) + 1;
    const HLine& l = p.lines[idx];
    try {
      if (!l.prop) throw LineFail{"missing proposition"};
      try {
        sig.check(l.prop);
      } catch (const KernelError& e) {
        throw LineFail{std::string("ill-sorted: ") + e.what()};
      }
      switch (l.kind) {
        case HKind::Schema: {
          Expr want;
          try {
            want = instantiate_schema(l.inst, p.cfg);
          } catch (const KernelError& e) {
            throw LineFail{e.what()};
          }
          same(l.prop, want, l.inst.schema.c_str());
          break;
        }
        case HKind::Axiom: {
          auto it = ax.find(l.axiom);
          if (it == ax.end()) throw LineFail{"unknown axiom " + l.axiom};
          same(l.prop, it->second, "axiom");
          break;
        }
        case HKind::MP: {
          need_ref(l.ref1, k);
          need_ref(l.ref2, k);
          const Expr& a = p.lines[l.ref1 - 1].prop;
          const Expr& ab = p.lines[l.ref2 - 1].prop;
          if (ab->kind != Kind::Imp) throw LineFail{"MP: line " + std::to_string(l.ref2) + " is not an implication"};
          same(a, ab->args[0], "MP minor premise");
          same(l.prop, ab->args[1], "MP conclusion");
          break;
        }
        case HKind::Gen:
        case HKind::Part: {
          bool gen = l.kind == HKind::Gen;
          const char* rn = gen ? "Gen" : "Part";
          need_ref(l.ref1, k);
          if (l.j < 0 || l.j >= p.cfg.order) throw LineFail{std::string(rn) + ": sort index out of range"};
          if (l.eigen.sort != Sort::arith(l.j)) throw LineFail{std::string(rn) + ": eigenvariable of the wrong sort"};
          const Expr& prem = p.lines[l.ref1 - 1].prop;
          if (prem->kind != Kind::Imp || l.prop->kind != Kind::Imp)
            throw LineFail{std::string(rn) + ": premise and conclusion must be implications"};
          const Expr& q = gen ? l.prop->args[1] : l.prop->args[0];
          Kind want = gen ? Kind::Forall : Kind::Exists;
          if (q->kind != want || q->sort != Sort::arith(l.j))
            throw LineFail{std::string(rn) + ": conclusion lacks the quantifier of sort " + std::to_string(l.j)};
          if (gen) {
            same(l.prop->args[0], prem->args[0], "Gen antecedent");
            same(open_with(q, l.eigen), prem->args[1], "Gen body");
          } else {
            same(l.prop->args[1], prem->args[1], "Part consequent");
            same(open_with(q, l.eigen), prem->args[0], "Part body");
          }
          if (occurs_free(l.eigen, l.prop))
            throw LineFail{std::string(rn) + ": " + show(l.eigen) + " is free in " + print(l.prop)};
          break;
        }
      }
    } catch (const LineFail& f) {
      v.error = f.msg;
      v.line = k;
      return v;
    }
  }
  v.ok = true;
  return v;
}

int HilbertBuilder::push(HLine l) {
  proof_.lines.push_back(std::move(l));
  return last();
}

int HilbertBuilder::schema(SchemaInstance inst) {
  HLine l;
  l.kind = HKind::Schema;
  l.prop = instantiate_schema(inst, proof_.cfg);
  l.inst = std::move(inst);
  return push(std::move(l));
}

int HilbertBuilder::mp(int minor, int major) {
  const Expr& ab = prop(major);
  if (ab->kind != Kind::Imp) throw KernelError("mp: major premise is not an implication");
  if (!alpha_equal(ab->args[0], prop(minor)))
    throw KernelError("mp: " + print(prop(minor)) + " does not match " + print(ab->args[0]));
  HLine l;
  l.kind = HKind::MP;
  l.ref1 = minor;
  l.ref2 = major;
  l.prop = ab->args[1];
  return push(std::move(l));
}

int HilbertBuilder::gen(int premise, Var beta) {
  const Expr& p = prop(premise);
  if (p->kind != Kind::Imp) throw KernelError("gen: premise is not an implication");
  HLine l;
  l.kind = HKind::Gen;
  l.ref1 = premise;
  l.j = beta.sort.level();
  l.eigen = beta;
  l.prop = mk_imp(p->args[0], forall_(beta, p->args[1]));
  return push(std::move(l));
}

int HilbertBuilder::part(int premise, Var beta) {
  const Expr& p = prop(premise);
  if (p->kind != Kind::Imp) throw KernelError("part: premise is not an implication");
  HLine l;
  l.kind = HKind::Part;
  l.ref1 = premise;
  l.j = beta.sort.level();
  l.eigen = beta;
  l.prop = mk_imp(exists_(beta, p->args[0]), p->args[1]);
  return push(std::move(l));
}

int HilbertBuilder::axiom(const std::string& name, const Expr& prop) {
  bool known = false;
  for (const auto& a : proof_.axioms)
    if (a.name == name) known = true;
  if (!known) proof_.axioms.push_back(Axiom{name, prop});
  HLine l;
  l.kind = HKind::Axiom;
  l.axiom = name;
  l.prop = prop;
  return push(std::move(l));
}

}  // namespace dm
