//! Intersection of two languages of term equalities: a product construction
//! over class pairs, seeded from common 0-ary symbols and closed over
//! matching applications, then reduced.

use super::{EqState, Graph, Rhs};
use std::collections::{BTreeMap, BTreeSet};

/// Top is the neutral element, Bottom absorbing. For graphs, a pair class
/// ⟨N1,N2⟩ holds a leaf iff both factors hold it, and an application iff
/// both factors hold the same head over pairwise-paired arguments.
/// Generation visits leaf pairs first and iterates applications to closure,
/// so acyclic parts finish in one pass and cycles converge.
pub fn intersect(a: EqState, b: EqState) -> EqState {
    let (ga, gb) = match (a, b) {
        (EqState::Top, other) | (other, EqState::Top) => return other,
        (EqState::Bottom, _) | (_, EqState::Bottom) => return EqState::Bottom,
        (EqState::Graph(ga), EqState::Graph(gb)) => (ga, gb),
    };
    let ga = reduced(ga);
    let gb = reduced(gb);

    let mut out = Graph::default();
    let mut pair_ids: BTreeMap<(u32, u32), u32> = BTreeMap::new();

    // Leaf pairs first.
    for (&c1, set1) in &ga.classes {
        for (&c2, set2) in &gb.classes {
            let common: BTreeSet<Rhs> = set1
                .iter()
                .filter(|r| matches!(r, Rhs::Leaf(_)) && set2.contains(*r))
                .cloned()
                .collect();
            if !common.is_empty() {
                let id = out.fresh_class(common.first().unwrap().clone());
                out.classes.insert(id, common);
                pair_ids.insert((c1, c2), id);
            }
        }
    }

    // Close over applications: an app joins pair (c1,c2) once all of its
    // argument pairs exist. Commutative heads admit both argument pairings.
    loop {
        let mut changed = false;
        for (&c1, set1) in &ga.classes {
            for (&c2, set2) in &gb.classes {
                for r1 in set1.iter() {
                    let (op, args1) = match r1 {
                        Rhs::App(op, args) => (*op, args),
                        _ => continue,
                    };
                    for r2 in set2.iter() {
                        let args2 = match r2 {
                            Rhs::App(op2, args2) if *op2 == op => args2,
                            _ => continue,
                        };
                        let mut pairings: Vec<Vec<(u32, u32)>> = vec![args1
                            .iter()
                            .zip(args2.iter())
                            .map(|(&x, &y)| (x, y))
                            .collect()];
                        if op.commutative() && args1.len() == 2 {
                            pairings.push(vec![(args1[0], args2[1]), (args1[1], args2[0])]);
                        }
                        for pairing in pairings {
                            let resolved: Option<Vec<u32>> = pairing
                                .iter()
                                .map(|k| pair_ids.get(k).copied())
                                .collect();
                            let Some(mut ids) = resolved else { continue };
                            Graph::sort_commutative(op, &mut ids);
                            let rhs = Rhs::App(op, ids);
                            let target = *pair_ids.entry((c1, c2)).or_insert_with(|| {
                                changed = true;
                                out.fresh_class(rhs.clone())
                            });
                            let set = out.classes.entry(target).or_default();
                            if set.insert(rhs) {
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    if out.congruence().is_err() {
        // Both factors would have to contain the clash; unreachable from
        // normalized inputs, but fall out safely.
        return EqState::Top;
    }
    out.reduce_protected(&BTreeSet::new());
    EqState::Graph(out)
}

fn reduced(mut g: Graph) -> Graph {
    let _ = g.congruence();
    g.reduce_protected(&BTreeSet::new());
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{canonical, evaluate, identify, knows, EqState};
    use crate::term::{Op, Term};

    fn var(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn lattice_units() {
        let (s, a) = evaluate(EqState::empty(), &var("x"));
        let (s, b) = evaluate(s, &var("y"));
        let (s, _) = identify(s, a, b);
        assert_eq!(
            canonical(&intersect(s.clone(), EqState::Top)),
            canonical(&s)
        );
        assert!(intersect(s, EqState::Bottom).is_bottom());
    }

    #[test]
    fn fig2_product_net() {
        // L1: {f(z-class, zf-class?)...} — the drawn example: L1 knows
        // x = f(z, a-ish)... We reproduce the structural essence: common
        // equalities survive, incomparable ones drop.
        // L1: x = f(z,y), z = f(x,y); L2: x = f(x,y), z.
        let f = |a: Term, b: Term| Term::app(Op::Sub, vec![a, b]);
        let (s1, c1) = evaluate(EqState::empty(), &f(var("z"), var("y")));
        let (s1, cx) = evaluate(s1, &var("x"));
        let (s1, _) = identify(s1, c1, cx);
        let (s1, c2) = evaluate(s1, &f(var("x"), var("y")));
        let (s1, cz) = evaluate(s1, &var("z"));
        let (s1, _) = identify(s1, c2, cz);

        let (s2, c1) = evaluate(EqState::empty(), &f(var("x"), var("y")));
        let (s2, cx) = evaluate(s2, &var("x"));
        let (s2, _) = identify(s2, c1, cx);

        let meet = intersect(s1.clone(), s2.clone());
        // x = f(x,y) requires x=f(z,y) ∧ z=f(x,y) on the left to pair with
        // the explicit cycle on the right: x ~ f(x... holds in both.
        assert!(knows(&meet, &var("x"), &f(f(var("x"), var("y")), var("y"))));
        // z facts exist only on the left.
        assert!(!knows(&meet, &var("z"), &f(var("x"), var("y"))));
    }

    #[test]
    fn commutative_heads_pair_across_argument_orders() {
        let plus = |a: Term, b: Term| Term::app(Op::Add, vec![a, b]);
        let (s1, c) = evaluate(EqState::empty(), &plus(var("x"), var("y")));
        let (s1, cw) = evaluate(s1, &var("w"));
        let (s1, _) = identify(s1, c, cw);
        let (s2, c) = evaluate(EqState::empty(), &plus(var("y"), var("x")));
        let (s2, cw) = evaluate(s2, &var("w"));
        let (s2, _) = identify(s2, c, cw);
        let meet = intersect(s1, s2);
        assert!(knows(&meet, &var("w"), &plus(var("x"), var("y"))));
    }
}
