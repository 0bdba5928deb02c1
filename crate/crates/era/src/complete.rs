//! Semantic completion: interpret primitive operations over a state to add
//! consistent equalities, detecting arithmetic errors and inconsistencies
//! along the way. Strength is tuned by the interpretability level.

use crate::state::{evaluate, identify, ClassId, EqState, Graph, Rhs};
use crate::term::{Op, Symbol, Term};
use crate::value::Value;
use std::collections::{BTreeMap, BTreeSet};

/// 0: pure scheme theory (no interpretation). 1: constant folding,
/// equal-argument identities, commutative canonicalization. 2: level 1 plus
/// boolean and equality back-propagation and constant-offset normalization.
pub type InterpLevel = u8;

#[derive(Clone, Copy, Debug)]
pub struct CompleteCfg {
    pub level: InterpLevel,
    /// When set, an error-capable interpreted operation (division, array
    /// indexing) whose operand may be indefinite turns the state into Top.
    pub strict_indefinite: bool,
}

impl Default for CompleteCfg {
    fn default() -> Self {
        CompleteCfg {
            level: 2,
            strict_indefinite: true,
        }
    }
}

/// Static type facts completion consults: array index ranges and scalar
/// subranges, keyed by variable name.
#[derive(Clone, Debug, Default)]
pub struct TypeEnv {
    pub arrays: BTreeMap<String, (i64, i64)>,
    pub subranges: BTreeMap<String, (i64, i64)>,
}

/// Arrays small enough for whole-value reconstruction from their elements.
const REBUILD_MAX_LEN: i64 = 16;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum NoteKind {
    DivisionByZero,
    RangeViolation,
    Inconsistency,
    IndefiniteOperand,
}

#[derive(Clone, Debug)]
pub struct Note {
    pub kind: NoteKind,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub state: EqState,
    pub notes: Vec<Note>,
}

impl Outcome {
    pub fn clean(state: EqState) -> Outcome {
        Outcome {
            state,
            notes: Vec::new(),
        }
    }

    pub fn has_error(&self) -> bool {
        self.notes.iter().any(|n| {
            matches!(
                n.kind,
                NoteKind::DivisionByZero | NoteKind::RangeViolation | NoteKind::IndefiniteOperand
            )
        })
    }
}

enum Step {
    Identify(ClassId, ClassId),
    IdentifyWithConst(ClassId, Value),
    /// Make `class` also derive op(arg, const) and merge.
    IdentifyApp(ClassId, Op, ClassId, Value),
    Error(NoteKind, String),
}

/// Iterates the rule set enabled by the level to a fixed point. Idempotent;
/// definite arithmetic errors and inconsistencies yield Top plus a note.
pub fn complete(s: EqState, cfg: &CompleteCfg, env: &TypeEnv) -> Outcome {
    if cfg.level == 0 {
        return Outcome::clean(s);
    }
    let mut state = s;
    let mut notes: Vec<Note> = Vec::new();
    for _round in 0..512 {
        let g = match &state {
            EqState::Graph(g) => g,
            _ => break,
        };
        let Some(step) = find_step(g, cfg, env) else {
            break;
        };
        match step {
            Step::Identify(a, b) => {
                let (next, incons) = identify(state, a, b);
                state = next;
                if incons.is_some() {
                    notes.push(Note {
                        kind: NoteKind::Inconsistency,
                        detail: "equality of two different constants".into(),
                    });
                }
            }
            Step::IdentifyWithConst(class, v) => {
                let (st, cid) = evaluate(state, &Term::Leaf(Symbol::Const(v)));
                let (next, incons) = identify(st, class, cid);
                state = next;
                if incons.is_some() {
                    notes.push(Note {
                        kind: NoteKind::Inconsistency,
                        detail: "equality of two different constants".into(),
                    });
                }
            }
            Step::IdentifyApp(class, op, arg, extra) => {
                let mut g = match state {
                    EqState::Graph(g) => g,
                    other => {
                        state = other;
                        break;
                    }
                };
                let cc = g
                    .class_of_leaf(&Symbol::Const(extra.clone()))
                    .unwrap_or_else(|| g.fresh_class(Rhs::Leaf(Symbol::Const(extra))));
                let mut ids = vec![cc, arg];
                Graph::sort_commutative(op, &mut ids);
                let rhs = Rhs::App(op, ids);
                state = match g.find_rhs(&rhs) {
                    Some(found) if found != class => {
                        let (next, incons) = identify(EqState::Graph(g), class, found);
                        if incons.is_some() {
                            notes.push(Note {
                                kind: NoteKind::Inconsistency,
                                detail: "equality of two different constants".into(),
                            });
                        }
                        next
                    }
                    Some(_) => EqState::Graph(g),
                    None => {
                        g.insert_rhs(class, rhs);
                        EqState::Graph(g)
                    }
                };
            }
            Step::Error(kind, detail) => {
                notes.push(Note { kind, detail });
                state = EqState::Top;
            }
        }
    }
    Outcome { state, notes }
}

/// Finds one applicable completion step, scanning deterministically.
fn find_step(g: &Graph, cfg: &CompleteCfg, env: &TypeEnv) -> Option<Step> {
    let indef = indefinite_classes(g);
    for (&id, set) in &g.classes {
        let class_const = g.const_of(id).cloned();

        // Subrange violation: a subrange-typed variable equal to a constant
        // outside its declared range.
        if let Some(Value::Int(n)) = &class_const {
            for rhs in set {
                if let Rhs::Leaf(Symbol::Var(v)) = rhs {
                    if let Some((lo, hi)) = env.subranges.get(v) {
                        if n < lo || n > hi {
                            return Some(Step::Error(
                                NoteKind::RangeViolation,
                                format!("{v} = {n} outside [{lo}..{hi}]"),
                            ));
                        }
                    }
                }
            }
        }

        for rhs in set {
            let Rhs::App(op, args) = rhs else { continue };
            let consts: Vec<Option<Value>> =
                args.iter().map(|a| g.const_of(*a).cloned()).collect();

            // (a) constant folding plus the error checks on division and
            // element access.
            if let Some(step) = fold_step(g, id, *op, args, &consts, class_const.as_ref(), cfg, &indef, env)
            {
                return Some(step);
            }

            // (b) equal arguments.
            if args.len() == 2 && args[0] == args[1] {
                let c = args[0];
                match op {
                    Op::Sub if as_int(&class_const) != Some(0) => {
                        return Some(Step::IdentifyWithConst(id, Value::Int(0)));
                    }
                    Op::Div if nonzero_witness(g, c) && as_int(&class_const) != Some(1) => {
                        return Some(Step::IdentifyWithConst(id, Value::Int(1)));
                    }
                    Op::Eq if class_const != Some(Value::Bool(true)) => {
                        return Some(Step::IdentifyWithConst(id, Value::Bool(true)));
                    }
                    Op::Ne if class_const != Some(Value::Bool(false)) => {
                        return Some(Step::IdentifyWithConst(id, Value::Bool(false)));
                    }
                    Op::Add => {
                        // t + t ≡ 2·t keeps doubled values recognizable.
                        if let Some(step) = ensure_app(g, id, Op::Mul, c, Value::Int(2)) {
                            return Some(step);
                        }
                    }
                    _ => {}
                }
            }

            if cfg.level >= 2 {
                if class_const == Some(Value::Bool(true)) {
                    match op {
                        // (c) boolean back-propagation.
                        Op::And => {
                            for &a in args {
                                if g.const_of(a) != Some(&Value::Bool(true)) {
                                    return Some(Step::IdentifyWithConst(a, Value::Bool(true)));
                                }
                            }
                        }
                        Op::Not => {
                            if g.const_of(args[0]) != Some(&Value::Bool(false)) {
                                return Some(Step::IdentifyWithConst(args[0], Value::Bool(false)));
                            }
                        }
                        // (d) equality back-propagation.
                        Op::Eq if args[0] != args[1] => {
                            return Some(Step::Identify(args[0], args[1]));
                        }
                        Op::Ne if args[0] == args[1] => {
                            return Some(Step::Error(
                                NoteKind::Inconsistency,
                                "t # t known true".into(),
                            ));
                        }
                        _ => {}
                    }
                }
                if class_const == Some(Value::Bool(false)) {
                    match op {
                        Op::Or => {
                            for &a in args {
                                if g.const_of(a) != Some(&Value::Bool(false)) {
                                    return Some(Step::IdentifyWithConst(a, Value::Bool(false)));
                                }
                            }
                        }
                        Op::Not => {
                            if g.const_of(args[0]) != Some(&Value::Bool(true)) {
                                return Some(Step::IdentifyWithConst(args[0], Value::Bool(true)));
                            }
                        }
                        Op::Eq => {
                            if args[0] == args[1] {
                                return Some(Step::Error(
                                    NoteKind::Inconsistency,
                                    "t = t known false".into(),
                                ));
                            }
                            if let (Some(a), Some(b)) = (&consts[0], &consts[1]) {
                                if a == b {
                                    return Some(Step::Error(
                                        NoteKind::Inconsistency,
                                        "equal constants known unequal".into(),
                                    ));
                                }
                            }
                        }
                        Op::Ne if args[0] != args[1] => {
                            return Some(Step::Identify(args[0], args[1]));
                        }
                        _ => {}
                    }
                }

                // (e) constant-offset normalization.
                if *op == Op::Add {
                    if let Some(step) = offset_step(g, id, args, &consts) {
                        return Some(step);
                    }
                }
            }
        }

        // (a) composite reconstruction: a small declared array whose element
        // constants are all known regains its whole-value constant.
        if class_const.is_none() {
            if let Some(step) = rebuild_step(g, id, set, env) {
                return Some(step);
            }
        }
    }
    None
}

fn as_int(v: &Option<Value>) -> Option<i64> {
    match v {
        Some(Value::Int(n)) => Some(*n),
        _ => None,
    }
}

fn nonzero_witness(g: &Graph, class: ClassId) -> bool {
    matches!(g.const_of(class), Some(Value::Int(n)) if *n != 0)
}

/// Classes that may hold an indefinite value: contain an omega, or an
/// application over a possibly-indefinite argument, and no constant
/// (a known constant certifies the value is real).
fn indefinite_classes(g: &Graph) -> BTreeSet<ClassId> {
    let mut indef: BTreeSet<ClassId> = BTreeSet::new();
    loop {
        let mut changed = false;
        for (&id, set) in &g.classes {
            if indef.contains(&id) || g.const_of(id).is_some() {
                continue;
            }
            let hit = set.iter().any(|r| match r {
                Rhs::Leaf(Symbol::Omega(_)) => true,
                Rhs::App(_, args) => args.iter().any(|a| indef.contains(a)),
                _ => false,
            });
            if hit {
                indef.insert(id);
                changed = true;
            }
        }
        if !changed {
            return indef;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn fold_step(
    g: &Graph,
    id: ClassId,
    op: Op,
    args: &[ClassId],
    consts: &[Option<Value>],
    class_const: Option<&Value>,
    cfg: &CompleteCfg,
    indef: &BTreeSet<ClassId>,
    env: &TypeEnv,
) -> Option<Step> {
    if matches!(op, Op::Div | Op::Mod) {
        if consts[1].as_ref().and_then(Value::as_int) == Some(0) {
            return Some(Step::Error(
                NoteKind::DivisionByZero,
                "division by zero".into(),
            ));
        }
        if cfg.strict_indefinite && indef.contains(&args[1]) {
            return Some(Step::Error(
                NoteKind::IndefiniteOperand,
                "division by an indefinite value".into(),
            ));
        }
    }
    if op == Op::Elm {
        if let Some(Value::Int(i)) = &consts[1] {
            if let Some((lo, hi)) = array_range_of(g, args[0], env) {
                if *i < lo || *i > hi {
                    return Some(Step::Error(
                        NoteKind::RangeViolation,
                        format!("index {i} outside [{lo}..{hi}]"),
                    ));
                }
            }
        } else if cfg.strict_indefinite && indef.contains(&args[1]) {
            return Some(Step::Error(
                NoteKind::IndefiniteOperand,
                "indexing by an indefinite value".into(),
            ));
        }
    }

    if !consts.iter().all(Option::is_some) {
        return None;
    }
    let vals: Vec<&Value> = consts.iter().map(|c| c.as_ref().unwrap()).collect();
    match eval_op(op, &vals)? {
        Folded::Value(v) => {
            if class_const == Some(&v) {
                None
            } else {
                Some(Step::IdentifyWithConst(id, v))
            }
        }
        Folded::Overflow => Some(Step::Error(
            NoteKind::RangeViolation,
            "result out of the integer range".into(),
        )),
        Folded::OutOfRange(msg) => Some(Step::Error(NoteKind::RangeViolation, msg)),
    }
}

fn array_range_of(g: &Graph, class: ClassId, env: &TypeEnv) -> Option<(i64, i64)> {
    let set = g.classes.get(&class)?;
    for rhs in set {
        match rhs {
            Rhs::Leaf(Symbol::Var(name)) => {
                if let Some(r) = env.arrays.get(name) {
                    return Some(*r);
                }
            }
            Rhs::Leaf(Symbol::Const(Value::Array(lo, elems))) => {
                return Some((*lo, lo + elems.len() as i64 - 1));
            }
            _ => {}
        }
    }
    None
}

enum Folded {
    Value(Value),
    Overflow,
    OutOfRange(String),
}

impl Folded {
    fn from_int(n: Option<i64>) -> Folded {
        match n {
            Some(n) => Folded::Value(Value::Int(n)),
            None => Folded::Overflow,
        }
    }
}

fn eval_op(op: Op, vals: &[&Value]) -> Option<Folded> {
    use Value::*;
    let int = |v: &Value| v.as_int();
    let f = match op {
        Op::Add => Folded::from_int(int(vals[0])?.checked_add(int(vals[1])?)),
        Op::Sub => Folded::from_int(int(vals[0])?.checked_sub(int(vals[1])?)),
        Op::Mul => Folded::from_int(int(vals[0])?.checked_mul(int(vals[1])?)),
        Op::Div => Folded::from_int(int(vals[0])?.checked_div(int(vals[1])?)),
        Op::Mod => Folded::from_int(int(vals[0])?.checked_rem(int(vals[1])?)),
        Op::Neg => Folded::from_int(int(vals[0])?.checked_neg()),
        Op::Odd => Folded::Value(Bool(int(vals[0])? % 2 != 0)),
        Op::Not => Folded::Value(Bool(!vals[0].as_bool()?)),
        Op::And => Folded::Value(Bool(vals[0].as_bool()? && vals[1].as_bool()?)),
        Op::Or => Folded::Value(Bool(vals[0].as_bool()? || vals[1].as_bool()?)),
        Op::Eq => Folded::Value(Bool(vals[0] == vals[1])),
        Op::Ne => Folded::Value(Bool(vals[0] != vals[1])),
        Op::Lt | Op::Le | Op::Gt | Op::Ge => {
            let ord = match (vals[0], vals[1]) {
                (Int(a), Int(b)) => a.cmp(b),
                (Char(a), Char(b)) => a.cmp(b),
                _ => return None,
            };
            let b = match op {
                Op::Lt => ord.is_lt(),
                Op::Le => ord.is_le(),
                Op::Gt => ord.is_gt(),
                _ => ord.is_ge(),
            };
            Folded::Value(Bool(b))
        }
        Op::Elm => match (vals[0], vals[1]) {
            (Array(lo, elems), Int(i)) => {
                let k = i - lo;
                if k < 0 || k >= elems.len() as i64 {
                    Folded::OutOfRange(format!("constant index {i} outside the array"))
                } else {
                    Folded::Value(elems[k as usize].clone())
                }
            }
            _ => return None,
        },
        Op::Fld => match (vals[0], vals[1]) {
            (Record(fields), Field(name)) => {
                let v = fields.iter().find(|(n, _)| n == name)?;
                Folded::Value(v.1.clone())
            }
            _ => return None,
        },
        Op::Val => return None,
    };
    Some(f)
}

/// Step that makes the class also derive op(const, arg), if it does not yet.
fn ensure_app(g: &Graph, id: ClassId, op: Op, arg: ClassId, extra: Value) -> Option<Step> {
    if let Some(cc) = g.class_of_leaf(&Symbol::Const(extra.clone())) {
        let mut ids = vec![cc, arg];
        Graph::sort_commutative(op, &mut ids);
        if let Some(found) = g.class_of_app(op, &ids) {
            if found == id {
                return None;
            }
            return Some(Step::Identify(id, found));
        }
    }
    Some(Step::IdentifyApp(id, op, arg, extra))
}

/// (e): (t + c1) + c2 ≡ t + (c1 + c2) and t + 0 ≡ t.
fn offset_step(g: &Graph, id: ClassId, args: &[ClassId], consts: &[Option<Value>]) -> Option<Step> {
    for (k, c) in consts.iter().enumerate() {
        let Some(Value::Int(c2)) = c else { continue };
        let other = args[1 - k];
        if *c2 == 0 {
            if other != id {
                return Some(Step::Identify(id, other));
            }
            continue;
        }
        // Avoid ping-ponging when the other side is itself constant; plain
        // folding handles that case.
        if consts[1 - k].is_some() {
            continue;
        }
        let inner_set = g.classes.get(&other)?;
        for inner in inner_set {
            let Rhs::App(Op::Add, inner_args) = inner else {
                continue;
            };
            for (j, ia) in inner_args.iter().enumerate() {
                let Some(Value::Int(c1)) = g.const_of(*ia) else {
                    continue;
                };
                let base = inner_args[1 - j];
                if g.const_of(base).is_some() {
                    continue;
                }
                let Some(sum) = c1.checked_add(*c2) else {
                    continue;
                };
                // Already known?
                if let Some(cc) = g.class_of_leaf(&Symbol::Const(Value::Int(sum))) {
                    let mut ids = vec![cc, base];
                    Graph::sort_commutative(Op::Add, &mut ids);
                    if let Some(found) = g.class_of_app(Op::Add, &ids) {
                        if found == id {
                            continue;
                        }
                        return Some(Step::Identify(id, found));
                    }
                }
                return Some(Step::IdentifyApp(id, Op::Add, base, Value::Int(sum)));
            }
        }
    }
    None
}

/// Whole-array reconstruction for a class holding a small declared array
/// variable whose every element has a known constant.
fn rebuild_step(g: &Graph, id: ClassId, set: &BTreeSet<Rhs>, env: &TypeEnv) -> Option<Step> {
    let (lo, hi) = set.iter().find_map(|r| match r {
        Rhs::Leaf(Symbol::Var(name)) => env.arrays.get(name).copied(),
        _ => None,
    })?;
    if hi - lo + 1 > REBUILD_MAX_LEN {
        return None;
    }
    let mut elems = Vec::with_capacity((hi - lo + 1) as usize);
    for k in lo..=hi {
        let mut found: Option<Value> = None;
        'outer: for (&holder, hset) in &g.classes {
            for rhs in hset {
                if let Rhs::App(Op::Elm, eargs) = rhs {
                    if eargs[0] == id && g.const_of(eargs[1]) == Some(&Value::Int(k)) {
                        if let Some(v) = g.const_of(holder) {
                            found = Some(v.clone());
                            break 'outer;
                        }
                    }
                }
            }
        }
        elems.push(found?);
    }
    Some(Step::IdentifyWithConst(id, Value::Array(lo, elems)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{dump, knows, EqState};
    use crate::term::Term;

    fn lvl(level: u8) -> CompleteCfg {
        CompleteCfg {
            level,
            strict_indefinite: true,
        }
    }

    #[test]
    fn level0_is_identity() {
        let t = Term::app(Op::Add, vec![Term::var("x"), Term::int(0)]);
        let (s, _) = evaluate(EqState::empty(), &t);
        let before = dump(&s);
        let out = complete(s, &lvl(0), &TypeEnv::default());
        assert_eq!(dump(&out.state), before);
        assert!(out.notes.is_empty());
    }

    #[test]
    fn division_by_zero_is_top() {
        let t = Term::app(Op::Div, vec![Term::int(1), Term::int(0)]);
        let (s, _) = evaluate(EqState::empty(), &t);
        let out = complete(s, &lvl(1), &TypeEnv::default());
        assert!(out.state.is_top());
        assert!(out.notes.iter().any(|n| n.kind == NoteKind::DivisionByZero));
    }

    #[test]
    fn folds_constants() {
        let t = Term::app(Op::Sub, vec![Term::int(3), Term::int(1)]);
        let (s, _) = evaluate(EqState::empty(), &t);
        let out = complete(s, &lvl(1), &TypeEnv::default());
        assert!(knows(&out.state, &t, &Term::int(2)));
    }

    #[test]
    fn offset_normalization() {
        // (t + 1) + 2 becomes equal to t + 3; t + 0 equal to t.
        let t_plus_1 = Term::app(Op::Add, vec![Term::var("t"), Term::int(1)]);
        let outer = Term::app(Op::Add, vec![t_plus_1, Term::int(2)]);
        let (s, _) = evaluate(EqState::empty(), &outer);
        let out = complete(s, &lvl(2), &TypeEnv::default());
        assert!(knows(
            &out.state,
            &outer,
            &Term::app(Op::Add, vec![Term::var("t"), Term::int(3)])
        ));

        let z = Term::app(Op::Add, vec![Term::var("u"), Term::int(0)]);
        let (s, _) = evaluate(EqState::empty(), &z);
        let out = complete(s, &lvl(2), &TypeEnv::default());
        assert!(knows(&out.state, &z, &Term::var("u")));
    }

    #[test]
    fn doubled_argument() {
        let t = Term::app(Op::Add, vec![Term::var("y"), Term::var("y")]);
        let (s, _) = evaluate(EqState::empty(), &t);
        let out = complete(s, &lvl(1), &TypeEnv::default());
        assert!(knows(
            &out.state,
            &t,
            &Term::app(Op::Mul, vec![Term::int(2), Term::var("y")])
        ));
    }
}
