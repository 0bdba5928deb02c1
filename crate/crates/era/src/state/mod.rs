//! The abstract domain: computation states as grammars of term-equality
//! languages.
//!
//! A `Graph` state maps class ids (nonterminals) to sets of right-hand
//! sides; each class is one group of terms known to be equal. `Bottom` is
//! the empty language (nothing computed yet), `Top` the language of all
//! equalities (an inaccessible state). Merging control paths intersects
//! languages, so `Top` is the neutral element for joins and `Bottom` is
//! absorbing.

mod canon;
mod enumerate;
mod intersect;

pub use canon::{canonical, CanonicalForm};
pub use enumerate::enumerate_known_equalities;
pub use intersect::intersect;

use crate::term::{Op, Symbol, Term};
use crate::value::Value;
use std::collections::{BTreeMap, BTreeSet};

pub type ClassId = u32;

/// One grammar rule right-hand side: either a 0-ary symbol or an
/// application of a functional symbol to argument classes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Rhs {
    Leaf(Symbol),
    App(Op, Vec<ClassId>),
}

impl Rhs {
    pub fn as_leaf(&self) -> Option<&Symbol> {
        match self {
            Rhs::Leaf(s) => Some(s),
            _ => None,
        }
    }

    fn args(&self) -> &[ClassId] {
        match self {
            Rhs::Leaf(_) => &[],
            Rhs::App(_, args) => args,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    pub classes: BTreeMap<ClassId, BTreeSet<Rhs>>,
    next: ClassId,
    omega_next: u32,
}

#[derive(Clone, Debug)]
pub enum EqState {
    Bottom,
    Top,
    Graph(Graph),
}

impl EqState {
    pub fn empty() -> EqState {
        EqState::Graph(Graph::default())
    }

    pub fn is_top(&self) -> bool {
        matches!(self, EqState::Top)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, EqState::Bottom)
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            EqState::Graph(g) => Some(g),
            _ => None,
        }
    }

    /// Bottom is treated as the empty grammar by operations that extend
    /// states; this hands out the graph either way.
    pub fn into_graph(self) -> Result<Graph, EqState> {
        match self {
            EqState::Graph(g) => Ok(g),
            EqState::Bottom => Ok(Graph::default()),
            top => Err(top),
        }
    }
}

/// Number of grammar rules, the |G| of the widening guard.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum GrammarSize {
    Finite(usize),
    Infinite,
}

pub fn grammar_size(s: &EqState) -> GrammarSize {
    match s {
        EqState::Bottom => GrammarSize::Finite(0),
        EqState::Top => GrammarSize::Infinite,
        EqState::Graph(g) => GrammarSize::Finite(g.rule_count()),
    }
}

impl Graph {
    pub fn rule_count(&self) -> usize {
        self.classes.values().map(|set| set.len()).sum()
    }

    pub fn fresh_class(&mut self, rhs: Rhs) -> ClassId {
        let id = self.next;
        self.next += 1;
        self.classes.insert(id, BTreeSet::from([rhs]));
        id
    }

    pub fn fresh_omega(&mut self) -> Symbol {
        let id = self.omega_next;
        self.omega_next += 1;
        Symbol::Omega(id)
    }

    /// Class containing the given 0-ary symbol, if any.
    pub fn class_of_leaf(&self, sym: &Symbol) -> Option<ClassId> {
        self.classes
            .iter()
            .find(|(_, rhs)| rhs.contains(&Rhs::Leaf(sym.clone())))
            .map(|(id, _)| *id)
    }

    /// Class containing the given application, if any. Argument ids must
    /// already be in commutative-normal order.
    pub fn class_of_app(&self, op: Op, args: &[ClassId]) -> Option<ClassId> {
        let rhs = Rhs::App(op, args.to_vec());
        self.classes
            .iter()
            .find(|(_, set)| set.contains(&rhs))
            .map(|(id, _)| *id)
    }

    /// Class containing exactly this rule, if any.
    pub fn find_rhs(&self, rhs: &Rhs) -> Option<ClassId> {
        self.classes
            .iter()
            .find(|(_, set)| set.contains(rhs))
            .map(|(id, _)| *id)
    }

    /// Inserts a rule into an existing class. The caller ensures no other
    /// class holds the same rule.
    pub fn insert_rhs(&mut self, class: ClassId, rhs: Rhs) {
        debug_assert!(self.find_rhs(&rhs).is_none());
        self.classes.entry(class).or_default().insert(rhs);
    }

    /// First constant member of a class, if any.
    pub fn const_of(&self, class: ClassId) -> Option<&Value> {
        self.classes.get(&class)?.iter().find_map(|r| match r {
            Rhs::Leaf(Symbol::Const(v)) => Some(v),
            _ => None,
        })
    }

    pub fn class_has_omega(&self, class: ClassId) -> bool {
        self.classes
            .get(&class)
            .map(|set| set.iter().any(|r| matches!(r, Rhs::Leaf(Symbol::Omega(_)))))
            .unwrap_or(false)
    }

    pub fn sort_commutative(op: Op, args: &mut [ClassId]) {
        if op.commutative() {
            args.sort_unstable();
        }
    }

    /// Replaces class `from` by `to` in every rule and merges the rule sets.
    fn merge_classes(&mut self, to: ClassId, from: ClassId) {
        if to == from {
            return;
        }
        let moved = self.classes.remove(&from).unwrap_or_default();
        self.classes.entry(to).or_default().extend(moved);
        let ids: Vec<ClassId> = self.classes.keys().copied().collect();
        for id in ids {
            let set = self.classes.get_mut(&id).unwrap();
            let needs_rewrite = set
                .iter()
                .any(|r| r.args().contains(&from) || matches!(r, Rhs::App(op, a) if op.commutative() && a.contains(&to)));
            if !needs_rewrite {
                continue;
            }
            let rewritten: BTreeSet<Rhs> = set
                .iter()
                .map(|r| match r {
                    Rhs::Leaf(_) => r.clone(),
                    Rhs::App(op, args) => {
                        let mut args: Vec<ClassId> = args
                            .iter()
                            .map(|a| if *a == from { to } else { *a })
                            .collect();
                        Self::sort_commutative(*op, &mut args);
                        Rhs::App(*op, args)
                    }
                })
                .collect();
            *set = rewritten;
        }
    }

    /// Merges classes holding identical right-hand sides until none remain
    /// (congruence closure), then checks consistency: a class containing two
    /// distinct constants denotes an impossible computation state.
    fn congruence(&mut self) -> Result<(), Inconsistency> {
        loop {
            let mut seen: BTreeMap<Rhs, ClassId> = BTreeMap::new();
            let mut merge: Option<(ClassId, ClassId)> = None;
            'scan: for (&id, set) in &self.classes {
                for rhs in set {
                    if let Some(&other) = seen.get(rhs) {
                        merge = Some((other.min(id), other.max(id)));
                        break 'scan;
                    }
                    seen.insert(rhs.clone(), id);
                }
            }
            match merge {
                Some((to, from)) => self.merge_classes(to, from),
                None => break,
            }
        }
        for (&id, set) in &self.classes {
            let mut consts = set.iter().filter_map(|r| match r {
                Rhs::Leaf(Symbol::Const(v)) => Some(v),
                _ => None,
            });
            if let Some(first) = consts.next() {
                if consts.any(|v| v != first) {
                    return Err(Inconsistency { class: id });
                }
            }
        }
        Ok(())
    }

    /// Classes that can derive at least one finite term.
    fn productive(&self) -> BTreeSet<ClassId> {
        let mut prod = BTreeSet::new();
        loop {
            let mut changed = false;
            for (&id, set) in &self.classes {
                if prod.contains(&id) {
                    continue;
                }
                let ok = set.iter().any(|r| match r {
                    Rhs::Leaf(_) => true,
                    Rhs::App(_, args) => args.iter().all(|a| prod.contains(a)),
                });
                if ok {
                    prod.insert(id);
                    changed = true;
                }
            }
            if !changed {
                return prod;
            }
        }
    }

    /// Classes deriving at least two distinct terms. A single rule still
    /// derives several terms when an argument class does.
    fn multi_term(&self) -> BTreeSet<ClassId> {
        let mut multi: BTreeSet<ClassId> = self
            .classes
            .iter()
            .filter(|(_, set)| set.len() >= 2)
            .map(|(id, _)| *id)
            .collect();
        loop {
            let mut changed = false;
            for (&id, set) in &self.classes {
                if multi.contains(&id) {
                    continue;
                }
                let hit = set
                    .iter()
                    .any(|r| r.args().iter().any(|a| multi.contains(a)));
                if hit {
                    multi.insert(id);
                    changed = true;
                }
            }
            if !changed {
                return multi;
            }
        }
    }

    /// State reduction: drops non-productive classes, cascades rules whose
    /// argument classes disappeared, and drops useless classes (deriving a
    /// single term nobody references, i.e. knowing only the trivial t = t).
    /// Classes in `protect` survive even when useless.
    fn reduce_protected(&mut self, protect: &BTreeSet<ClassId>) {
        let prod = self.productive();
        self.classes.retain(|id, _| prod.contains(id));
        loop {
            let live: BTreeSet<ClassId> = self.classes.keys().copied().collect();
            for set in self.classes.values_mut() {
                set.retain(|r| r.args().iter().all(|a| live.contains(a)));
            }
            let mut refs: BTreeMap<ClassId, usize> = BTreeMap::new();
            for set in self.classes.values() {
                for rhs in set {
                    for &a in rhs.args() {
                        *refs.entry(a).or_default() += 1;
                    }
                }
            }
            let multi = self.multi_term();
            let mut drop: Vec<ClassId> = Vec::new();
            for (&id, set) in &self.classes {
                if protect.contains(&id) {
                    continue;
                }
                let unreferenced = refs.get(&id).copied().unwrap_or(0) == 0;
                if set.is_empty() || (unreferenced && !multi.contains(&id)) {
                    drop.push(id);
                }
            }
            if drop.is_empty() {
                return;
            }
            for id in drop {
                self.classes.remove(&id);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Inconsistency {
    pub class: ClassId,
}

/// reduce: remove useless and unreachable classes and rules.
pub fn reduce(s: EqState) -> EqState {
    match s {
        EqState::Graph(mut g) => {
            g.reduce_protected(&BTreeSet::new());
            EqState::Graph(g)
        }
        other => other,
    }
}

/// Term evaluation: returns a state knowing `t` plus the class deriving it.
/// Reuses existing classes bottom-up; commutative arguments are stored under
/// a fixed order. Bottom acts as the empty grammar; callers never evaluate
/// in Top.
pub fn evaluate(s: EqState, t: &Term) -> (EqState, ClassId) {
    let mut g = match s.into_graph() {
        Ok(g) => g,
        Err(top) => return (top, 0),
    };
    let id = eval_in(&mut g, t);
    (EqState::Graph(g), id)
}

pub(crate) fn eval_in(g: &mut Graph, t: &Term) -> ClassId {
    match t {
        Term::Leaf(sym) => g
            .class_of_leaf(sym)
            .unwrap_or_else(|| g.fresh_class(Rhs::Leaf(sym.clone()))),
        Term::App(op, args) => {
            let mut ids: Vec<ClassId> = args.iter().map(|a| eval_in(g, a)).collect();
            Graph::sort_commutative(*op, &mut ids);
            g.class_of_app(*op, &ids)
                .unwrap_or_else(|| g.fresh_class(Rhs::App(*op, ids)))
        }
    }
}

/// Read-only structural resolution of a term to its class.
pub fn resolve(g: &Graph, t: &Term) -> Option<ClassId> {
    match t {
        Term::Leaf(sym) => g.class_of_leaf(sym),
        Term::App(op, args) => {
            let mut ids = Vec::with_capacity(args.len());
            for a in args {
                ids.push(resolve(g, a)?);
            }
            Graph::sort_commutative(*op, &mut ids);
            g.class_of_app(*op, &ids)
        }
    }
}

/// knows: true iff the state derives t1 = t2. Top knows everything, Bottom
/// nothing.
pub fn knows(s: &EqState, t1: &Term, t2: &Term) -> bool {
    match s {
        EqState::Top => true,
        EqState::Bottom => false,
        EqState::Graph(g) => match (resolve(g, t1), resolve(g, t2)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        },
    }
}

/// Identification of the values of two classes: merge, close under
/// congruence, and reduce. An inconsistent result (two distinct constants
/// equal) yields Top plus a note.
pub fn identify(s: EqState, c1: ClassId, c2: ClassId) -> (EqState, Option<Inconsistency>) {
    let mut g = match s {
        EqState::Graph(g) => g,
        other => return (other, None),
    };
    if c1 != c2 {
        let (to, from) = (c1.min(c2), c1.max(c2));
        g.merge_classes(to, from);
    }
    match g.congruence() {
        Ok(()) => {
            g.reduce_protected(&BTreeSet::new());
            (EqState::Graph(g), None)
        }
        Err(note) => (EqState::Top, Some(note)),
    }
}

/// What an assignment or read kills: plain 0-ary roots, array elements
/// (optionally only those whose index class holds the given constant), and
/// record fields by name.
#[derive(Clone, Debug, Default)]
pub struct KillSpec {
    pub leaves: BTreeSet<Symbol>,
    /// (array variable, Some(index constant) for a targeted kill, None for
    /// every element rule rooted at the array).
    pub elements: Vec<(Symbol, Option<Value>)>,
    /// (record variable, Some(field name) or None for all fields).
    pub fields: Vec<(Symbol, Option<String>)>,
    /// Classes whose composite-constant members must be dropped (a partial
    /// write invalidates the whole-value constant).
    pub composites_of: BTreeSet<Symbol>,
}

impl KillSpec {
    pub fn leaf(sym: Symbol) -> KillSpec {
        KillSpec {
            leaves: BTreeSet::from([sym]),
            ..KillSpec::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
            && self.elements.is_empty()
            && self.fields.is_empty()
            && self.composites_of.is_empty()
    }
}

/// Removing term equalities ([L]↓T): deletes the rules rooted at the kill
/// set, cascades rules whose argument classes became empty, then reduces.
/// The class `protect`, when given, survives cascade and reduction (the
/// assignment transformer must not lose the evaluated right-hand side).
pub fn remove_protected(s: EqState, kill: &KillSpec, protect: Option<ClassId>) -> EqState {
    let mut g = match s {
        EqState::Graph(g) => g,
        other => return other,
    };
    // Resolve kill targets against the current classes before deleting.
    let elem_targets: Vec<(ClassId, Option<Value>)> = kill
        .elements
        .iter()
        .filter_map(|(root, idx)| g.class_of_leaf(root).map(|c| (c, idx.clone())))
        .collect();
    let field_targets: Vec<(ClassId, Option<String>)> = kill
        .fields
        .iter()
        .filter_map(|(root, f)| g.class_of_leaf(root).map(|c| (c, f.clone())))
        .collect();
    let composite_classes: Vec<ClassId> = kill
        .composites_of
        .iter()
        .filter_map(|root| g.class_of_leaf(root))
        .collect();

    let mut new_classes: BTreeMap<ClassId, BTreeSet<Rhs>> = BTreeMap::new();
    for (&id, set) in &g.classes {
        let kept: BTreeSet<Rhs> = set
            .iter()
            .filter(|rhs| {
                let killed = match rhs {
                    Rhs::Leaf(sym) => {
                        kill.leaves.contains(sym)
                            || (matches!(
                                sym,
                                Symbol::Const(Value::Array(..) | Value::Record(..))
                            ) && composite_classes.contains(&id))
                    }
                    Rhs::App(Op::Elm, args) => elem_targets.iter().any(|(root, idx)| {
                        args[0] == *root
                            && match idx {
                                None => true,
                                Some(v) => g.const_of(args[1]) == Some(v),
                            }
                    }),
                    Rhs::App(Op::Fld, args) => field_targets.iter().any(|(root, fname)| {
                        args[0] == *root
                            && match fname {
                                None => true,
                                Some(n) => matches!(
                                    g.const_of(args[1]),
                                    Some(Value::Field(f)) if f == n
                                ),
                            }
                    }),
                    _ => false,
                };
                !killed
            })
            .cloned()
            .collect();
        new_classes.insert(id, kept);
    }
    g.classes = new_classes;

    // Cascade: a rule dies when an argument class has no rules left.
    loop {
        let empty: BTreeSet<ClassId> = g
            .classes
            .iter()
            .filter(|(id, set)| set.is_empty() && Some(**id) != protect)
            .map(|(id, _)| *id)
            .collect();
        if empty.is_empty() {
            break;
        }
        for id in &empty {
            g.classes.remove(id);
        }
        for set in g.classes.values_mut() {
            set.retain(|r| r.args().iter().all(|a| !empty.contains(a)));
        }
    }

    let protect_set: BTreeSet<ClassId> = protect.into_iter().collect();
    g.reduce_protected(&protect_set);
    EqState::Graph(g)
}

pub fn remove(s: EqState, kill: &KillSpec) -> EqState {
    remove_protected(s, kill, None)
}

/// includes(s1, s2): s1 knows every equality s2 knows, decided through
/// intersection and canonical equality.
pub fn includes(s1: &EqState, s2: &EqState) -> bool {
    match (s1, s2) {
        (EqState::Top, _) => true,
        (_, EqState::Bottom) => true,
        (EqState::Bottom, s2) => canonical(s2) == canonical(&EqState::Bottom),
        (_, EqState::Top) => canonical(s1) == canonical(&EqState::Top),
        (a, b) => {
            let meet = intersect(a.clone(), b.clone());
            canonical(&meet) == canonical(b)
        }
    }
}

/// Textual dump, one class per line: `C3: x, f(C1,C2)`. Canonical: the same
/// reduced state always prints the same bytes, regardless of internal ids.
pub fn dump(s: &EqState) -> String {
    canonical(s).into_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Op;

    fn var(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn reduce_drops_lone_variable() {
        // Graph{A:{x}}: knows only x = x, nothing references it.
        let mut g = Graph::default();
        g.fresh_class(Rhs::Leaf(Symbol::Var("x".into())));
        let red = reduce(EqState::Graph(g));
        assert_eq!(red.as_graph().unwrap().classes.len(), 0);
    }

    #[test]
    fn reduce_keeps_nontrivial_equality() {
        let mut g = Graph::default();
        let mut set = BTreeSet::new();
        set.insert(Rhs::Leaf(Symbol::Var("x".into())));
        set.insert(Rhs::Leaf(Symbol::Var("y".into())));
        g.classes.insert(0, set);
        g.next = 1;
        let red = reduce(EqState::Graph(g));
        assert_eq!(red.as_graph().unwrap().rule_count(), 2);
    }

    #[test]
    fn reduce_bottom_is_bottom() {
        assert!(reduce(EqState::Bottom).is_bottom());
    }

    #[test]
    fn evaluate_fresh_leaf() {
        let (s, c) = evaluate(EqState::empty(), &var("x"));
        let g = s.as_graph().unwrap();
        assert_eq!(g.classes.len(), 1);
        assert!(g.classes[&c].contains(&Rhs::Leaf(Symbol::Var("x".into()))));
    }

    #[test]
    fn evaluate_known_term_is_identity() {
        let (s, c1) = evaluate(EqState::empty(), &var("x"));
        let before = dump(&s);
        let (s, c2) = evaluate(s, &var("x"));
        assert_eq!(c1, c2);
        assert_eq!(dump(&s), before);
    }

    #[test]
    fn evaluate_reuses_subterm_classes() {
        // Fig. 3: over L = {y = a, x = h(y)}, evaluating
        // f(g(a,x), f(h(y), b)) adds classes only for b, g, inner f, outer f.
        let (s, cx) = evaluate(EqState::empty(), &var("x"));
        let (s, ch) = evaluate(s, &Term::app(Op::Odd, vec![var("y")]));
        let (s, _note) = identify(s, cx, ch);
        let (s, ca) = evaluate(s, &var("a"));
        let cy = resolve(s.as_graph().unwrap(), &var("y")).unwrap();
        let (st, _note) = identify(s, ca, cy);
        let base_classes = st.as_graph().unwrap().classes.len();
        // f := Add, g := Mul, h := Odd to stay within the fixed signature.
        let t = Term::app(
            Op::Add,
            vec![
                Term::app(Op::Mul, vec![var("a"), var("x")]),
                Term::app(Op::Add, vec![Term::app(Op::Odd, vec![var("y")]), var("b")]),
            ],
        );
        let (s, _c) = evaluate(st, &t);
        let g = s.as_graph().unwrap();
        assert_eq!(g.classes.len(), base_classes + 4);
    }

    #[test]
    fn identify_same_class_is_identity() {
        let (s, c) = evaluate(EqState::empty(), &var("x"));
        let before = dump(&s);
        let (s, note) = identify(s, c, c);
        assert!(note.is_none());
        assert_eq!(dump(&s), before);
    }

    #[test]
    fn identify_distinct_constants_is_top() {
        let (s, c1) = evaluate(EqState::empty(), &Term::int(1));
        let (s, c2) = evaluate(s, &Term::int(2));
        let (s, note) = identify(s, c1, c2);
        assert!(s.is_top());
        assert!(note.is_some());
    }

    #[test]
    fn identify_merges_duplicate_rhs_chains() {
        // Fig. 4: classes {g(A,B),a}, {f(A)}, {g(A,B'),f(B')}, {x}, {b};
        // identifying x with b collapses the duplicate g/f chains.
        let (s, cx) = evaluate(EqState::empty(), &var("x"));
        let (s, cb) = evaluate(s, &var("b"));
        let t_gxb = Term::app(Op::Sub, vec![var("x"), var("a")]);
        let t_gbb = Term::app(Op::Sub, vec![var("b"), var("a")]);
        let (s, c_gx) = evaluate(s, &t_gxb);
        let (s, c_gb) = evaluate(s, &t_gbb);
        assert_ne!(c_gx, c_gb);
        let (s, note) = identify(s, cx, cb);
        assert!(note.is_none());
        // After x ≡ b the two g-rules become identical and their classes merge.
        assert!(knows(&s, &t_gxb, &t_gbb));
        assert!(knows(&s, &var("x"), &var("b")));
    }

    #[test]
    fn knows_trivia() {
        let (s, _) = evaluate(EqState::empty(), &var("x"));
        let (s, cx) = evaluate(s, &var("x"));
        let (s, cy) = evaluate(s, &var("y"));
        let (s, _) = identify(s, cx, cy);
        assert!(knows(&s, &var("x"), &var("y")));
        assert!(!knows(&EqState::Bottom, &var("x"), &var("x")));
        assert!(knows(&EqState::Top, &var("x"), &var("y")));
    }

    #[test]
    fn grammar_size_counts_rules() {
        let (s, cx) = evaluate(EqState::empty(), &var("x"));
        let (s, cy) = evaluate(s, &var("y"));
        let (s, _) = identify(s, cx, cy);
        assert_eq!(grammar_size(&s), GrammarSize::Finite(2));
        assert_eq!(grammar_size(&EqState::Bottom), GrammarSize::Finite(0));
        assert_eq!(grammar_size(&EqState::Top), GrammarSize::Infinite);
    }

    #[test]
    fn fig1_grammar_size_is_five() {
        // x = f(a, y), a = h(y): rules x, f(A2,A3), a, h(A3), y.
        let (s, cx) = evaluate(
            EqState::empty(),
            &Term::app(Op::Sub, vec![var("a"), var("y")]),
        );
        let (s, cv) = evaluate(s, &var("x"));
        let (s, _) = identify(s, cx, cv);
        let (s, ca) = evaluate(s, &Term::app(Op::Odd, vec![var("y")]));
        let (s, cva) = evaluate(s, &var("a"));
        let (s, _) = identify(s, ca, cva);
        assert_eq!(grammar_size(&s), GrammarSize::Finite(5));
        // Fig. 1: the language knows f(a,y) = f(h(y),y).
        assert!(knows(
            &s,
            &Term::app(Op::Sub, vec![var("a"), var("y")]),
            &Term::app(Op::Sub, vec![Term::app(Op::Odd, vec![var("y")]), var("y")]),
        ));
    }

    #[test]
    fn remove_cascades() {
        // {x=y, y=f(x)} minus x: y's class loses both the leaf x and, by
        // cascade of the emptied class, nothing else survives reduction.
        let (s, cx) = evaluate(EqState::empty(), &var("x"));
        let (s, cy) = evaluate(s, &var("y"));
        let (s, _) = identify(s, cx, cy);
        let (s, cf) = evaluate(s, &Term::app(Op::Odd, vec![var("x")]));
        let cxy = resolve(s.as_graph().unwrap(), &var("y")).unwrap();
        let (s, _) = identify(s, cf, cxy);
        let s = remove(s, &KillSpec::leaf(Symbol::Var("x".into())));
        let g = s.as_graph().unwrap();
        // y alone remains in its class; odd(y-class) survives as y = odd(y).
        // Knowledge about x is gone entirely.
        assert!(resolve(g, &var("x")).is_none());
    }

    #[test]
    fn remove_empty_set_is_reduce() {
        let (s, _) = evaluate(EqState::empty(), &var("x"));
        let removed = remove(s.clone(), &KillSpec::default());
        assert_eq!(dump(&removed), dump(&reduce(s)));
    }

    #[test]
    fn remove_array_root_kills_elements() {
        let a = Symbol::Var("a".into());
        let t_elem = Term::app(Op::Elm, vec![var("a"), var("i")]);
        let (s, ce) = evaluate(EqState::empty(), &t_elem);
        let (s, cx) = evaluate(s, &var("x"));
        let (s, _) = identify(s, ce, cx);
        assert!(knows(&s, &t_elem, &var("x")));
        let s = remove(s, &KillSpec::leaf(a));
        assert!(!knows(&s, &t_elem, &var("x")));
    }

    #[test]
    fn includes_reflexive_and_top() {
        let (s, cx) = evaluate(EqState::empty(), &var("x"));
        let (s, cy) = evaluate(s, &var("y"));
        let (s, _) = identify(s, cx, cy);
        assert!(includes(&s, &s));
        assert!(includes(&EqState::Top, &s));
        assert!(includes(&s, &EqState::Bottom));
    }

    #[test]
    fn includes_strictly_smaller() {
        // {x=y} does not include {x=y, y=z}.
        let (s1, cx) = evaluate(EqState::empty(), &var("x"));
        let (s1, cy) = evaluate(s1, &var("y"));
        let (s1, _) = identify(s1, cx, cy);

        let (s2, cx) = evaluate(EqState::empty(), &var("x"));
        let (s2, cy) = evaluate(s2, &var("y"));
        let (s2, _) = identify(s2, cx, cy);
        let (s2, cz) = evaluate(s2, &var("z"));
        let cy2 = resolve(s2.as_graph().unwrap(), &var("y")).unwrap();
        let (s2, _) = identify(s2, cy2, cz);

        assert!(!includes(&s1, &s2));
        assert!(includes(&s2, &s1));
    }
}
