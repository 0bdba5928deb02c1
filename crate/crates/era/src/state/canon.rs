//! Canonical forms: a deterministic, rename-invariant serialization used as
//! the stabilization test of the fixpoint engine and as the dump format.

use super::{EqState, Rhs};
use crate::term::Symbol;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn into_string(self) -> String {
        self.0
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Relabels classes by iterated partition refinement over rule structure and
/// serializes. Two reduced graphs get equal forms iff they are isomorphic up
/// to class renaming (omega ids are renumbered by order of introduction).
pub fn canonical(s: &EqState) -> CanonicalForm {
    let g = match s {
        EqState::Top => return CanonicalForm("⊤".to_string()),
        EqState::Bottom => return CanonicalForm("⊥".to_string()),
        EqState::Graph(g) => g,
    };
    let mut g = g.clone();
    if g.congruence().is_err() {
        return CanonicalForm("⊤".to_string());
    }
    g.reduce_protected(&BTreeSet::new());
    if g.classes.is_empty() {
        return CanonicalForm(String::new());
    }

    // Initial signature: the leaf content with omegas collapsed to a token
    // (their ids must not affect the partition).
    let leaf_sig = |sym: &Symbol| -> String {
        match sym {
            Symbol::Omega(_) => "ω".to_string(),
            other => format!("{other}"),
        }
    };
    let ids: Vec<u32> = g.classes.keys().copied().collect();
    let mut sig: BTreeMap<u32, String> = ids
        .iter()
        .map(|&id| {
            let mut leaves: Vec<String> = g.classes[&id]
                .iter()
                .filter_map(|r| r.as_leaf().map(&leaf_sig))
                .collect();
            leaves.sort();
            (id, leaves.join(","))
        })
        .collect();

    let mut blocks = partition_count(&sig);
    loop {
        let next: BTreeMap<u32, String> = ids
            .iter()
            .map(|&id| {
                let mut parts: Vec<String> = g.classes[&id]
                    .iter()
                    .map(|r| match r {
                        Rhs::Leaf(sym) => leaf_sig(sym),
                        Rhs::App(op, args) => {
                            let a: Vec<&str> =
                                args.iter().map(|x| sig[x].as_str()).collect();
                            format!("{}({})", op.name(), a.join(";"))
                        }
                    })
                    .collect();
                parts.sort();
                (id, format!("[{}|{}]", sig[&id], parts.join(",")))
            })
            .collect();
        let next_blocks = partition_count(&next);
        sig = next;
        if next_blocks == blocks {
            break;
        }
        blocks = next_blocks;
    }

    // Order classes by refined signature; same-signature classes (possible
    // only through distinct omegas) tie-break on their smallest omega id,
    // which follows introduction order.
    let mut ordered: Vec<u32> = ids.clone();
    let omega_rank = |id: u32| -> u32 {
        g.classes[&id]
            .iter()
            .filter_map(|r| match r {
                Rhs::Leaf(Symbol::Omega(i)) => Some(*i),
                _ => None,
            })
            .min()
            .unwrap_or(u32::MAX)
    };
    ordered.sort_by(|a, b| {
        sig[a]
            .cmp(&sig[b])
            .then_with(|| omega_rank(*a).cmp(&omega_rank(*b)))
            .then_with(|| a.cmp(b))
    });
    let rename: BTreeMap<u32, usize> = ordered
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i + 1))
        .collect();

    // Omegas renumbered by first appearance in the canonical order.
    let mut omega_names: BTreeMap<u32, usize> = BTreeMap::new();
    for &id in &ordered {
        for r in &g.classes[&id] {
            if let Rhs::Leaf(Symbol::Omega(i)) = r {
                let n = omega_names.len() + 1;
                omega_names.entry(*i).or_insert(n);
            }
        }
    }

    let mut lines = Vec::with_capacity(ordered.len());
    for &id in &ordered {
        let mut entries: Vec<String> = g.classes[&id]
            .iter()
            .map(|r| match r {
                Rhs::Leaf(Symbol::Omega(i)) => format!("ω{}", omega_names[i]),
                Rhs::Leaf(sym) => format!("{sym}"),
                Rhs::App(op, args) => {
                    let a: Vec<String> =
                        args.iter().map(|x| format!("C{}", rename[x])).collect();
                    format!("{}({})", op.name(), a.join(","))
                }
            })
            .collect();
        entries.sort();
        lines.push(format!("C{}: {}", rename[&id], entries.join(", ")));
    }
    CanonicalForm(lines.join("\n"))
}

fn partition_count(sig: &BTreeMap<u32, String>) -> usize {
    let mut set: Vec<&String> = sig.values().collect();
    set.sort();
    set.dedup();
    set.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{evaluate, identify, EqState};
    use crate::term::Term;

    #[test]
    fn rename_invariance() {
        // Build {x = y} twice with evaluation orders swapped.
        let (s1, a) = evaluate(EqState::empty(), &Term::var("x"));
        let (s1, b) = evaluate(s1, &Term::var("y"));
        let (s1, _) = identify(s1, a, b);

        let (s2, a) = evaluate(EqState::empty(), &Term::var("y"));
        let (s2, b) = evaluate(s2, &Term::var("x"));
        let (s2, _) = identify(s2, b, a);

        assert_eq!(canonical(&s1), canonical(&s2));
    }

    #[test]
    fn top_and_bottom_differ() {
        assert_ne!(canonical(&EqState::Top), canonical(&EqState::Bottom));
    }
}
