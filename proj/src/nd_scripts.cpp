#include <map>
#include <string>

#include "corpus_texts.hpp"
#include "revline/parse.hpp"

namespace revline {

namespace {

// Lemma 1: w2 from I.5, I.6 and SYM, mirroring the paper's two-case split on
// the co-transitivity disjunction.
const char* kS1 = R"(script S1
problem G3
goal forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,rev(n)))
1. Undir(l,m) & Undir(l,rev(m)) ; hyp
2. Undir(l,rev(m)) ; and_elim_right premises=[1]
3. Undir(l,rev(m)) -> Undir(l,n) | Undir(rev(m),n) ; axiom(I.6) inst={l:=l, m:=rev(m), n:=n}
4. Undir(l,n) | Undir(rev(m),n) ; imp_elim premises=[3,2]
5. Undir(l,n) ; hyp
6. Undir(l,n) | Undir(m,rev(n)) ; or_intro_left premises=[5]
7. Undir(rev(m),n) ; hyp
8. Undir(rev(m),n) -> Undir(rev(m),rev(m)) | Undir(n,rev(m)) ; axiom(I.6) inst={l:=rev(m), m:=n, n:=rev(m)}
9. Undir(rev(m),rev(m)) | Undir(n,rev(m)) ; imp_elim premises=[8,7]
10. ~Undir(rev(m),rev(m)) ; axiom(I.5) inst={l:=rev(m)}
11. Undir(rev(m),rev(m)) ; hyp
12. false ; neg_elim premises=[11,10]
13. Undir(n,rev(m)) ; ex_falso premises=[12]
14. Undir(n,rev(m)) ; hyp
15. Undir(n,rev(m)) ; or_elim premises=[9,13,14] discharge=[11,14]
16. Undir(n,rev(m)) -> Undir(m,rev(n)) ; axiom(SYM) inst={l:=n, m:=m}
17. Undir(m,rev(n)) ; imp_elim premises=[16,15]
18. Undir(l,n) | Undir(m,rev(n)) ; or_intro_right premises=[17]
19. Undir(l,n) | Undir(m,rev(n)) ; or_elim premises=[4,6,18] discharge=[5,7]
20. Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,rev(n)) ; imp_intro premises=[19] discharge=[1]
21. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,rev(n))) ; forall_intro premises=[20]
22. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,rev(n))) ; forall_intro premises=[21]
23. forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,rev(n))) ; forall_intro premises=[22]
)";

// Lemma 2: w3 from I.5, I.6 and SYM.
const char* kS2 = R"(script S2
problem G4
goal forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,n))
1. Undir(l,m) & Undir(l,rev(m)) ; hyp
2. Undir(l,rev(m)) ; and_elim_right premises=[1]
3. Undir(l,rev(m)) -> Undir(m,rev(l)) ; axiom(SYM) inst={l:=l, m:=m}
4. Undir(m,rev(l)) ; imp_elim premises=[3,2]
5. Undir(m,rev(l)) -> Undir(m,n) | Undir(rev(l),n) ; axiom(I.6) inst={l:=m, m:=rev(l), n:=n}
6. Undir(m,n) | Undir(rev(l),n) ; imp_elim premises=[5,4]
7. Undir(m,n) ; hyp
8. Undir(l,rev(n)) | Undir(m,n) ; or_intro_right premises=[7]
9. Undir(rev(l),n) ; hyp
10. Undir(rev(l),n) -> Undir(rev(l),rev(l)) | Undir(n,rev(l)) ; axiom(I.6) inst={l:=rev(l), m:=n, n:=rev(l)}
11. Undir(rev(l),rev(l)) | Undir(n,rev(l)) ; imp_elim premises=[10,9]
12. ~Undir(rev(l),rev(l)) ; axiom(I.5) inst={l:=rev(l)}
13. Undir(rev(l),rev(l)) ; hyp
14. false ; neg_elim premises=[13,12]
15. Undir(n,rev(l)) ; ex_falso premises=[14]
16. Undir(n,rev(l)) ; hyp
17. Undir(n,rev(l)) ; or_elim premises=[11,15,16] discharge=[13,16]
18. Undir(n,rev(l)) -> Undir(l,rev(n)) ; axiom(SYM) inst={l:=n, m:=l}
19. Undir(l,rev(n)) ; imp_elim premises=[18,17]
20. Undir(l,rev(n)) | Undir(m,n) ; or_intro_left premises=[19]
21. Undir(l,rev(n)) | Undir(m,n) ; or_elim premises=[6,8,20] discharge=[7,9]
22. Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,n) ; imp_intro premises=[21] discharge=[1]
23. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,n)) ; forall_intro premises=[22]
24. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,n)) ; forall_intro premises=[23]
25. forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,n)) ; forall_intro premises=[24]
)";

// Lemma 3: the reverse-line symmetry from I.5, I.6, I.8 and w2.
const char* kS3 = R"(script S3
problem G6
goal forall l. forall m. (Undir(l,rev(m)) -> Undir(m,rev(l)))
1. Undir(l,rev(m)) ; hyp
2. Undir(m,l) | Undir(m,rev(l)) ; axiom(I.8) inst={l:=m, m:=l}
3. Undir(m,l) ; hyp
4. Undir(m,l) -> Undir(m,m) | Undir(l,m) ; axiom(I.6) inst={l:=m, m:=l, n:=m}
5. Undir(m,m) | Undir(l,m) ; imp_elim premises=[4,3]
6. ~Undir(m,m) ; axiom(I.5) inst={l:=m}
7. Undir(m,m) ; hyp
8. false ; neg_elim premises=[7,6]
9. Undir(l,m) ; ex_falso premises=[8]
10. Undir(l,m) ; hyp
11. Undir(l,m) ; or_elim premises=[5,9,10] discharge=[7,10]
12. Undir(l,m) & Undir(l,rev(m)) -> Undir(l,l) | Undir(m,rev(l)) ; axiom(w2) inst={l:=l, m:=m, n:=l}
13. Undir(l,m) & Undir(l,rev(m)) ; and_intro premises=[11,1]
14. Undir(l,l) | Undir(m,rev(l)) ; imp_elim premises=[12,13]
15. ~Undir(l,l) ; axiom(I.5) inst={l:=l}
16. Undir(l,l) ; hyp
17. false ; neg_elim premises=[16,15]
18. Undir(m,rev(l)) ; ex_falso premises=[17]
19. Undir(m,rev(l)) ; hyp
20. Undir(m,rev(l)) ; or_elim premises=[14,18,19] discharge=[16,19]
21. Undir(m,rev(l)) ; hyp
22. Undir(m,rev(l)) ; or_elim premises=[2,20,21] discharge=[3,21]
23. Undir(l,rev(m)) -> Undir(m,rev(l)) ; imp_intro premises=[22] discharge=[1]
24. forall m. (Undir(l,rev(m)) -> Undir(m,rev(l))) ; forall_intro premises=[23]
25. forall l. forall m. (Undir(l,rev(m)) -> Undir(m,rev(l))) ; forall_intro premises=[24]
)";

// w1 is a weakening of co-transitivity.
const char* kS4 = R"(script S4
problem G1
goal forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,n))
1. Undir(l,m) & Undir(l,rev(m)) ; hyp
2. Undir(l,m) ; and_elim_left premises=[1]
3. Undir(l,m) -> Undir(l,n) | Undir(m,n) ; axiom(I.6) inst={l:=l, m:=m, n:=n}
4. Undir(l,n) | Undir(m,n) ; imp_elim premises=[3,2]
5. Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,n) ; imp_intro premises=[4] discharge=[1]
6. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,n)) ; forall_intro premises=[5]
7. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,n)) ; forall_intro premises=[6]
8. forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,n) | Undir(m,n)) ; forall_intro premises=[7]
)";

// So is w4, instantiating the third line at a reversed line.
const char* kS5 = R"(script S5
problem G2
goal forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,rev(n)))
1. Undir(l,m) & Undir(l,rev(m)) ; hyp
2. Undir(l,m) ; and_elim_left premises=[1]
3. Undir(l,m) -> Undir(l,rev(n)) | Undir(m,rev(n)) ; axiom(I.6) inst={l:=l, m:=m, n:=rev(n)}
4. Undir(l,rev(n)) | Undir(m,rev(n)) ; imp_elim premises=[3,2]
5. Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,rev(n)) ; imp_intro premises=[4] discharge=[1]
6. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,rev(n))) ; forall_intro premises=[5]
7. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,rev(n))) ; forall_intro premises=[6]
8. forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> Undir(l,rev(n)) | Undir(m,rev(n))) ; forall_intro premises=[7]
)";

// Plain symmetry of Undir from I.5 and I.6.
const char* kS7 = R"(script S7
problem G0
goal forall l. forall m. (Undir(l,m) -> Undir(m,l))
1. Undir(l,m) ; hyp
2. Undir(l,m) -> Undir(l,l) | Undir(m,l) ; axiom(I.6) inst={l:=l, m:=m, n:=l}
3. Undir(l,l) | Undir(m,l) ; imp_elim premises=[2,1]
4. ~Undir(l,l) ; axiom(I.5) inst={l:=l}
5. Undir(l,l) ; hyp
6. false ; neg_elim premises=[5,4]
7. Undir(m,l) ; ex_falso premises=[6]
8. Undir(m,l) ; hyp
9. Undir(m,l) ; or_elim premises=[3,7,8] discharge=[5,8]
10. Undir(l,m) -> Undir(m,l) ; imp_intro premises=[9] discharge=[1]
11. forall m. (Undir(l,m) -> Undir(m,l)) ; forall_intro premises=[10]
12. forall l. forall m. (Undir(l,m) -> Undir(m,l)) ; forall_intro premises=[11]
)";

// ---------------------------------------------------------------------------
// S6: (w1 & w2 & w3 & w4) -> convergence axiom, by nested case analysis over
// the four disjunctions.  Mechanical, so generated rather than transcribed.

struct S6Builder {
  const Signature& sig;
  const std::vector<DefinedPredicate>& defs;
  NDScript script;
  int next = 1;

  Formula target = Formula::falsum();
  std::map<std::string, int> have;  // printed atom -> step id that proved it

  S6Builder(const Signature& s, const std::vector<DefinedPredicate>& d)
      : sig(s), defs(d) {}

  int emit(NDStep step) {
    step.id = next++;
    script.steps.push_back(step);
    return step.id;
  }

  int hyp(const Formula& f) {
    NDStep s;
    s.formula = f;
    s.rule = NDRuleKind::Hypothesis;
    return emit(std::move(s));
  }

  int apply(NDRuleKind rule, const Formula& f, std::vector<int> premises,
            std::vector<int> discharge = {}, Substitution inst = {},
            std::string ref = "") {
    NDStep s;
    s.formula = f;
    s.rule = rule;
    s.premises = std::move(premises);
    s.discharge = std::move(discharge);
    s.inst = std::move(inst);
    s.ref = std::move(ref);
    return emit(std::move(s));
  }

  // Derives the target from the remaining disjunction steps; `have` carries
  // the atoms established by enclosing case hypotheses.
  int cases(const std::vector<std::pair<Formula, int>>& disjs, size_t idx) {
    if (idx == disjs.size()) {
      // a pair Undir(l,n) & Undir(l,rev(n)) or Undir(m,n) & Undir(m,rev(n))
      // is always available once all four disjunctions are split
      const Formula& left_conj = target.left();
      const Formula& right_conj = target.right();
      for (bool use_left : {true, false}) {
        const Formula& conj = use_left ? left_conj : right_conj;
        auto a = have.find(to_string(conj.left()));
        auto b = have.find(to_string(conj.right()));
        if (a == have.end() || b == have.end()) continue;
        int pair_id = apply(NDRuleKind::AndIntro, conj, {a->second, b->second});
        return apply(use_left ? NDRuleKind::OrIntroLeft : NDRuleKind::OrIntroRight,
                     target, {pair_id});
      }
      throw Error("S6 generator: no closing pair in a leaf case");
    }
    const auto& [disj, disj_id] = disjs[idx];
    // an atom already granted by an enclosing case keeps its original step
    int h1 = hyp(disj.left());
    bool fresh1 = have.emplace(to_string(disj.left()), h1).second;
    int r1 = cases(disjs, idx + 1);
    if (fresh1) have.erase(to_string(disj.left()));
    int h2 = hyp(disj.right());
    bool fresh2 = have.emplace(to_string(disj.right()), h2).second;
    int r2 = cases(disjs, idx + 1);
    if (fresh2) have.erase(to_string(disj.right()));
    return apply(NDRuleKind::OrElim, target, {disj_id, r1, r2}, {h1, h2});
  }

  NDScript build() {
    Formula w[4] = {parse_formula(corpus_texts::kW1, sig, defs),
                    parse_formula(corpus_texts::kW2, sig, defs),
                    parse_formula(corpus_texts::kW3, sig, defs),
                    parse_formula(corpus_texts::kW4, sig, defs)};
    Formula i7 = parse_formula(corpus_texts::kI7, sig, defs);
    Formula wconj = Formula::conj(Formula::conj(Formula::conj(w[0], w[1]), w[2]), w[3]);

    script.name = "S6";
    script.problem = "G8";
    script.goal = Formula::implies(wconj, i7);

    int hw = hyp(wconj);
    int c12_3 = apply(NDRuleKind::AndElimLeft, wconj.left(), {hw});
    int c12 = apply(NDRuleKind::AndElimLeft, wconj.left().left(), {c12_3});
    int ws[4];
    ws[0] = apply(NDRuleKind::AndElimLeft, w[0], {c12});
    ws[1] = apply(NDRuleKind::AndElimRight, w[1], {c12});
    ws[2] = apply(NDRuleKind::AndElimRight, w[2], {c12_3});
    ws[3] = apply(NDRuleKind::AndElimRight, w[3], {hw});

    // open each w at the fixed lines l, m, n
    Formula matrices[4] = {Formula::falsum(), Formula::falsum(),
                           Formula::falsum(), Formula::falsum()};
    int opened[4] = {0, 0, 0, 0};
    for (int k = 0; k < 4; ++k) {
      const Formula* cur = &w[k];
      int prev = ws[k];
      while (cur->kind() == Formula::Kind::Forall) {
        Substitution inst{{cur->var(), Term::variable(cur->var())}};
        Formula next_f = apply_subst(inst, cur->body());
        prev = apply(NDRuleKind::ForallElim, next_f, {prev}, {}, inst);
        cur = &cur->body();
      }
      matrices[k] = *cur;
      opened[k] = prev;
    }

    // the convergence premise Undir(l,m) & Undir(l,rev(m))
    Formula prem = matrices[0].left();
    int hp = hyp(prem);
    std::vector<std::pair<Formula, int>> disjs;
    for (int k = 0; k < 4; ++k) {
      int d = apply(NDRuleKind::ImpElim, matrices[k].right(), {opened[k], hp});
      disjs.emplace_back(matrices[k].right(), d);
    }

    // target: Undir(l,n) & Undir(l,rev(n)) | Undir(m,n) & Undir(m,rev(n))
    const Formula* i7cur = &i7;
    while (i7cur->kind() == Formula::Kind::Forall) i7cur = &i7cur->body();
    target = i7cur->right();

    int r = cases(disjs, 0);
    int matrix = apply(NDRuleKind::ImpIntro, Formula::implies(prem, target), {r}, {hp});

    // close the universal prefix n, m, l
    std::vector<std::string> prefix;
    for (const Formula* c = &i7; c->kind() == Formula::Kind::Forall; c = &c->body())
      prefix.push_back(c->var());
    Formula closed = *i7cur;
    int prev = matrix;
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
      closed = Formula::forall(*it, closed);
      prev = apply(NDRuleKind::ForallIntro, closed, {prev});
    }

    apply(NDRuleKind::ImpIntro, script.goal, {prev}, {hw});
    return script;
  }
};

// Theorem 1 as a composition: w1-w4 via the lemma scripts, then S6.
NDScript build_s8(const Signature& sig, const std::vector<DefinedPredicate>& defs) {
  Formula w1 = parse_formula(corpus_texts::kW1, sig, defs);
  Formula w2 = parse_formula(corpus_texts::kW2, sig, defs);
  Formula w3 = parse_formula(corpus_texts::kW3, sig, defs);
  Formula w4 = parse_formula(corpus_texts::kW4, sig, defs);
  Formula i7 = parse_formula(corpus_texts::kI7, sig, defs);
  Formula wconj = Formula::conj(Formula::conj(Formula::conj(w1, w2), w3), w4);

  NDScript s;
  s.name = "S8";
  s.problem = "G5";
  s.uses = {"S1", "S2", "S4", "S5", "S6"};
  s.goal = i7;

  auto step = [&](int id, Formula f, NDRuleKind rule, std::string ref,
                  std::vector<int> prem) {
    NDStep st;
    st.id = id;
    st.formula = std::move(f);
    st.rule = rule;
    st.ref = std::move(ref);
    st.premises = std::move(prem);
    s.steps.push_back(std::move(st));
  };

  step(1, w1, NDRuleKind::AxiomInstance, "S4", {});
  step(2, w2, NDRuleKind::AxiomInstance, "S1", {});
  step(3, w3, NDRuleKind::AxiomInstance, "S2", {});
  step(4, w4, NDRuleKind::AxiomInstance, "S5", {});
  step(5, Formula::conj(w1, w2), NDRuleKind::AndIntro, "", {1, 2});
  step(6, Formula::conj(Formula::conj(w1, w2), w3), NDRuleKind::AndIntro, "", {5, 3});
  step(7, wconj, NDRuleKind::AndIntro, "", {6, 4});
  step(8, Formula::implies(wconj, i7), NDRuleKind::AxiomInstance, "S6", {});
  step(9, i7, NDRuleKind::ImpElim, "", {8, 7});
  return s;
}

}  // namespace

std::vector<NDScript> bundled_scripts(const Signature& sig,
                                      const std::vector<DefinedPredicate>& defs) {
  std::vector<NDScript> out;
  for (const char* text : {kS1, kS2, kS3, kS4, kS5, kS7})
    out.push_back(parse_script(text, sig, defs));
  out.push_back(S6Builder(sig, defs).build());
  out.push_back(build_s8(sig, defs));
  return out;
}

}  // namespace revline
