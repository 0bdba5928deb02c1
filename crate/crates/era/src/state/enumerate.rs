//! Bounded enumeration of the equalities a state knows, used by tests, the
//! soundness oracle, and the query interface.

use super::{EqState, Graph, Rhs};
use crate::term::Term;
use std::collections::{BTreeMap, BTreeSet};

const PER_CLASS_CAP: usize = 4096;

/// All pairs (t1, t2) of distinct terms of height ≤ `depth` derivable from a
/// common class. Finite even for cyclic grammars thanks to the bound.
pub fn enumerate_known_equalities(s: &EqState, depth: usize) -> BTreeSet<(Term, Term)> {
    let g = match s {
        EqState::Graph(g) => g,
        _ => return BTreeSet::new(),
    };
    let mut out = BTreeSet::new();
    for &id in g.classes.keys() {
        let terms = class_terms(g, id, depth);
        let terms: Vec<&Term> = terms.iter().collect();
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                out.insert((terms[i].clone(), terms[j].clone()));
            }
        }
    }
    out
}

/// Terms of height ≤ depth derivable from one class.
pub fn class_terms(g: &Graph, class: u32, depth: usize) -> BTreeSet<Term> {
    let mut memo: BTreeMap<(u32, usize), BTreeSet<Term>> = BTreeMap::new();
    terms_rec(g, class, depth, &mut memo)
}

fn terms_rec(
    g: &Graph,
    class: u32,
    depth: usize,
    memo: &mut BTreeMap<(u32, usize), BTreeSet<Term>>,
) -> BTreeSet<Term> {
    if depth == 0 {
        return BTreeSet::new();
    }
    if let Some(hit) = memo.get(&(class, depth)) {
        return hit.clone();
    }
    // Seed the memo to cut cycles at this depth.
    memo.insert((class, depth), BTreeSet::new());
    let mut out = BTreeSet::new();
    let Some(set) = g.classes.get(&class) else {
        return out;
    };
    'rules: for rhs in set {
        match rhs {
            Rhs::Leaf(sym) => {
                out.insert(Term::Leaf(sym.clone()));
            }
            Rhs::App(op, args) => {
                let mut arg_terms: Vec<Vec<Term>> = Vec::with_capacity(args.len());
                for &a in args {
                    let ts = terms_rec(g, a, depth - 1, memo);
                    if ts.is_empty() {
                        continue 'rules;
                    }
                    arg_terms.push(ts.into_iter().collect());
                }
                let mut combos: Vec<Vec<Term>> = vec![Vec::new()];
                for ts in &arg_terms {
                    let mut next = Vec::new();
                    for c in &combos {
                        for t in ts {
                            let mut c = c.clone();
                            c.push(t.clone());
                            next.push(c);
                        }
                    }
                    combos = next;
                    if combos.len() > PER_CLASS_CAP {
                        combos.truncate(PER_CLASS_CAP);
                    }
                }
                for c in combos {
                    out.insert(Term::App(*op, c));
                    if out.len() > PER_CLASS_CAP {
                        break;
                    }
                }
            }
        }
    }
    memo.insert((class, depth), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{evaluate, identify, resolve, EqState};
    use crate::term::{Op, Term};

    #[test]
    fn two_leaves_one_pair() {
        let (s, a) = evaluate(EqState::empty(), &Term::var("x"));
        let (s, b) = evaluate(s, &Term::var("y"));
        let (s, _) = identify(s, a, b);
        let eqs = enumerate_known_equalities(&s, 1);
        assert_eq!(eqs.len(), 1);
        assert!(eqs.contains(&(Term::var("x"), Term::var("y"))));
    }

    #[test]
    fn cyclic_unfolds_to_depth() {
        // A: {x, f(A)} over f := odd.
        let f = |t: Term| Term::app(Op::Odd, vec![t]);
        let (s, cx) = evaluate(EqState::empty(), &Term::var("x"));
        let (s, cf) = evaluate(s, &f(Term::var("x")));
        let (s, _) = identify(s, cx, cf);
        let eqs = enumerate_known_equalities(&s, 3);
        let x = Term::var("x");
        assert!(eqs.contains(&(f(x.clone()), x.clone())) || eqs.contains(&(x.clone(), f(x.clone()))));
        let pair = |a: Term, b: Term| if a <= b { (a, b) } else { (b, a) };
        assert!(eqs.contains(&pair(x.clone(), f(f(x.clone())))));
        assert!(eqs.contains(&pair(f(x.clone()), f(f(x.clone())))));
    }

    #[test]
    fn fig1_contains_listed_equalities() {
        // x = f(a,y), a = h(y): at depth 2 the set contains (x, f(a,y))
        // and (a, h(y)).
        let f = |a: Term, b: Term| Term::app(Op::Sub, vec![a, b]);
        let h = |t: Term| Term::app(Op::Odd, vec![t]);
        let (s, c1) = evaluate(EqState::empty(), &f(Term::var("a"), Term::var("y")));
        let (s, cx) = evaluate(s, &Term::var("x"));
        let (s, _) = identify(s, c1, cx);
        let (s, c2) = evaluate(s, &h(Term::var("y")));
        let ca = resolve(s.as_graph().unwrap(), &Term::var("a")).unwrap();
        let (s, _) = identify(s, c2, ca);
        let eqs = enumerate_known_equalities(&s, 2);
        let pair = |a: Term, b: Term| if a <= b { (a, b) } else { (b, a) };
        assert!(eqs.contains(&pair(Term::var("x"), f(Term::var("a"), Term::var("y")))));
        assert!(eqs.contains(&pair(Term::var("a"), h(Term::var("y")))));
    }
}
